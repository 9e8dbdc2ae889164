"""Bracketed root finding for the coordinate functions along geodesics.

The q0 and q3 coordinates of a geodesic are combinations of two
oscillations (or an oscillation against a hyperbolic growth), and their
first positive zeros drive every optimality computation in the package.
Each zero lives in an interval that can be pinned down analytically, so
the solvers here scan with a step smaller than half the fastest
oscillation period, then polish the bracket with a bisection/secant
hybrid.  No root is ever reported without a sign change around it.
"""

from __future__ import annotations

import math
from typing import Callable

from .errors import (
    DegenerateFunction,
    DegenerateIdenticallyZero,
    NoRootFound,
    NotTimeLike,
    UndefinedAtEquator,
)
from .metric_space import CausalType, Covector, Metric

ROOT_TOLERANCE = 1e-12
# below this vertical size a space-like covector is treated as equatorial
EQUATOR_TOLERANCE = 1e-14


def _refine(f: Callable[[float], float], a: float, b: float, fa: float, fb: float, tol: float) -> float:
    """Shrink a sign-change bracket to width <= tol, secant-accelerated."""
    use_secant = True
    for _ in range(200):
        width = b - a
        if width <= tol:
            break
        cand = None
        if use_secant and fb != fa:
            cand = b - fb * (b - a) / (fb - fa)
            # accept the secant point only while it stays safely interior
            if not (a + 0.1 * tol < cand < b - 0.1 * tol):
                cand = None
        if cand is None:
            cand = 0.5 * (a + b)
        fc = f(cand)
        if fc == 0.0:
            return cand
        if (fa < 0.0) != (fc < 0.0):
            b, fb = cand, fc
        else:
            a, fa = cand, fc
        # secant must earn its keep, else fall back to bisection next round
        use_secant = (b - a) < 0.7 * width
    return 0.5 * (a + b)


def find_first_positive_root(
    f: Callable[[float], float],
    scan_step: float,
    tol: float = ROOT_TOLERANCE,
    scan_limit: float = 4.0 * math.pi,
) -> float:
    """First zero of f on (0, scan_limit], located by scan plus refinement.

    The scan starts at scan_step (a zero at the origin itself is ignored)
    and walks in uniform steps, so scan_step must undersample every
    oscillation of f.  Raises NoRootFound when the scan exhausts the limit
    with no sign change, DegenerateFunction when f is indistinguishable
    from zero over the whole scan.
    """
    if scan_step <= 0.0 or scan_limit <= 0.0:
        raise ValueError("scan_step and scan_limit must be positive")
    x_prev = scan_step
    f_prev = f(x_prev)
    max_abs = abs(f_prev)
    # an exact zero at a probe cannot be told apart from a degenerate
    # function on the spot; keep it as a candidate and scan on until the
    # magnitude of f proves the function is alive
    exact = x_prev if f_prev == 0.0 else None
    x = x_prev
    while x < scan_limit:
        x = min(x + scan_step, scan_limit)
        fx = f(x)
        max_abs = max(max_abs, abs(fx))
        if exact is not None:
            if max_abs >= 1e-12:
                return exact
        elif fx == 0.0:
            exact = x
        elif (f_prev < 0.0) != (fx < 0.0) and max_abs >= 1e-12:
            return _refine(f, x_prev, x, f_prev, fx, tol)
        x_prev, f_prev = x, fx
    if max_abs < 1e-12:
        raise DegenerateFunction("function vanishes identically over the scan range")
    if exact is not None:
        return exact
    raise NoRootFound(f"no sign change on (0, {scan_limit:.6g}]")


# ---- coordinate zeros along geodesics ----------------------------------
#
# All zeros are computed in the rescaled time tau (or, on the light cone,
# in tau_p = t p3 / (2 I1)) and converted to t at the end.  The brackets:
#
#   time-like, a = -eta|pbar3| > 1:
#     q0: first zero < pi/(a-1), and <= pi once a >= 3/2
#     q3: first zero < 3pi/(2(a-1)), and <= 2pi/a once a >= 2
#     poles |pbar3| = 1 collapse to -pi/(2(1+eta)) and -pi/(1+eta)
#   light-like, in u = -eta tau_p:
#     q0: u in (pi/2, pi);  q3: u in (pi, 3pi/2)
#   space-like, in u = -eta|pbar3| tau:
#     q0: u in (pi/2, pi);  q3: u in (pi, 3pi/2)

def _timelike_scan(m: Metric, pbar3_abs: float, f: Callable[[float], float], which: str) -> float:
    eta = m.eta
    a = -eta * pbar3_abs
    if which == "q0":
        limit = math.pi if a >= 1.5 else math.pi / (a - 1.0)
    else:
        limit = 2.0 * math.pi / a if a >= 2.0 else 1.5 * math.pi / (a - 1.0)
    limit *= 1.0 + 1e-9
    step = min(0.01, limit / 16.0, math.pi / (4.0 * (a + 1.0)))
    return find_first_positive_root(f, step, ROOT_TOLERANCE, limit)


def _root_tau(m: Metric, p: Covector, which: str) -> float:
    """First positive zero of q0 or q3 in rescaled time units."""
    eta = m.eta

    if p.ctype is CausalType.TIME_LIKE:
        b = abs(p.pbar3)
        if b == 1.0:
            # pole geodesics: q0 = cos((1+eta) tau), q3 = +-sin((1+eta) tau)
            if which == "q0":
                return -math.pi / (2.0 * (1.0 + eta))
            return -math.pi / (1.0 + eta)
        if which == "q0":
            f = lambda tau: math.cos(tau) * math.cos(tau * eta * b) - b * math.sin(
                tau
            ) * math.sin(tau * eta * b)
        else:
            f = lambda tau: math.cos(tau) * math.sin(tau * eta * b) + b * math.sin(
                tau
            ) * math.cos(tau * eta * b)
        return _timelike_scan(m, b, f, which)

    if p.ctype is CausalType.LIGHT_LIKE:
        # tau_p units; q0 = cos(eta tau) - tau sin(eta tau), q3 likewise
        if which == "q0":
            f = lambda tau: math.cos(eta * tau) - tau * math.sin(eta * tau)
            limit = -math.pi / eta
        else:
            f = lambda tau: math.sin(eta * tau) + tau * math.cos(eta * tau)
            limit = -1.5 * math.pi / eta
        limit *= 1.0 + 1e-9
        step = min(0.01, limit / 24.0)
        return find_first_positive_root(f, step, ROOT_TOLERANCE, limit)

    # space-like; divide by cosh to keep the function bounded
    b = abs(p.pbar3)
    if b < EQUATOR_TOLERANCE:
        if which == "q0":
            raise UndefinedAtEquator(
                "q0 = cosh(tau) never vanishes on equatorial space-like geodesics"
            )
        raise DegenerateIdenticallyZero(
            "q3 vanishes identically on equatorial space-like geodesics"
        )
    if which == "q0":
        f = lambda tau: math.cos(tau * eta * b) - b * math.tanh(tau) * math.sin(
            tau * eta * b
        )
        limit = -math.pi / (eta * b)
    else:
        f = lambda tau: math.sin(tau * eta * b) + b * math.tanh(tau) * math.cos(
            tau * eta * b
        )
        limit = -1.5 * math.pi / (eta * b)
    limit *= 1.0 + 1e-9
    step = limit / 32.0
    return find_first_positive_root(f, step, ROOT_TOLERANCE, limit)


def _tau_to_t(m: Metric, p: Covector, tau: float) -> float:
    if p.ctype is CausalType.LIGHT_LIKE:
        return 2.0 * m.i1 * tau / abs(p.p3)
    return 2.0 * m.i1 * tau / p.norm


def maxwell_root_q0(m: Metric, p: Covector) -> float:
    """Time of the first vanishing of q0 along the geodesic of p.

    Raises UndefinedAtEquator for space-like covectors with pbar3 = 0,
    whose q0 coordinate stays >= 1 forever.
    """
    return _tau_to_t(m, p, _root_tau(m, p, "q0"))


def maxwell_root_q3(m: Metric, p: Covector) -> float:
    """Time of the first positive-time vanishing of q3 along the geodesic.

    The zero at t = 0 is ignored.  Raises DegenerateIdenticallyZero for
    space-like covectors with pbar3 = 0, where q3 vanishes identically.
    """
    return _tau_to_t(m, p, _root_tau(m, p, "q3"))


def conjugate_roots(m: Metric, pbar3: float, k_max: int) -> list[float]:
    """Conjugate-point times, in rescaled tau units, for a time-like pbar3.

    The series merges the horizontal family {pi k} with the roots tau_k of
    tan(tau) = sigma tau, sigma = -eta (1 - pbar3^2) / (1 + eta pbar3^2),
    which sit in (pi k, pi k + pi/2) since sigma lies in [0, 1).  Returns
    the first 2 k_max entries sorted ascending; the pole |pbar3| = 1
    degenerates to {pi k} with multiplicity two.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    b = abs(pbar3)
    if b < 1.0:
        raise NotTimeLike(f"conjugate roots need |pbar3| >= 1, got {pbar3!r}")
    eta = m.eta
    if b == 1.0:
        out = []
        for k in range(1, k_max + 1):
            out.extend([math.pi * k, math.pi * k])
        return out
    sigma = -eta * (1.0 - b * b) / (1.0 + eta * b * b)
    out = []
    for k in range(1, k_max + 1):
        lo = math.pi * k
        hi = math.pi * k + 0.5 * math.pi
        if sigma == 0.0:
            out.extend([lo, lo])
            continue
        g = lambda tau: math.sin(tau) - sigma * tau * math.cos(tau)
        # g(pi k) and g(pi k + pi/2) have opposite signs for sigma in (0,1)
        a_, b_ = lo + 1e-12, hi - 1e-12
        fa, fb = g(a_), g(b_)
        if (fa < 0.0) == (fb < 0.0):
            raise NoRootFound(f"conjugate bracket failed on branch k={k}")
        tau_k = _refine(g, a_, b_, fa, fb, ROOT_TOLERANCE)
        out.extend([lo, tau_k])
    return sorted(out)
