"""Sub-Riemannian limit of the metric family.

As eta -> -1 (I3 -> infinity) with I1 pinned to 1, geodesics converge to
the sub-Riemannian geodesics of the horizontal distribution span{e1, e2}.
The limiting flow has its own closed form,

    g(t) = exp(t (A_p + A_k)) * exp(-t A_k),

with horizontal momentum A_p = cos(phi0) e1 + sin(phi0) e2 and vertical
parameter A_k = beta e3.  The dictionary between the two parametrizations
is |p|^2 = beta^2 - 1 and pbar3 = beta / sqrt(|beta^2 - 1|): |beta| > 1
corresponds to time-like covectors, |beta| < 1 to space-like ones, and
the light cone is the |beta| = 1 horizon.

Everything here pins I1 = 1; a general I1 only rescales time by sqrt(I1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import SplitQuaternion, sq_exp, sq_mul
from .errors import DomainError, NegativeTime, NoRootFound
from .metric_space import CausalType, covector_from_pbar3, metric_from_eta
from .optimality import GroupTag, cut_time
from .root_solver import ROOT_TOLERANCE, find_first_positive_root

SR_CUT_BETA_SPLIT = 3.0 / math.sqrt(5.0)  # above: conjugate cap; below: q0-type root


@dataclass(frozen=True)
class SrMomentum:
    """Initial condition of a sub-Riemannian geodesic: vertical parameter
    beta and horizontal phase phi0."""

    beta: float
    phi0: float


def sr_exp_map(sp: SrMomentum, t: float) -> SplitQuaternion:
    """Endpoint of the unit-speed sub-Riemannian geodesic at time t."""
    if t < 0.0:
        raise NegativeTime(f"geodesic time must be >= 0, got {t!r}")
    first = sq_exp(t * math.cos(sp.phi0), t * math.sin(sp.phi0), t * sp.beta)
    return sq_mul(first, sq_exp(0.0, 0.0, -t * sp.beta))


def beta_from_pbar3(pbar3: float, ctype: CausalType) -> float:
    """Vertical parameter of the sub-Riemannian geodesic matching a
    Riemannian covector in the eta -> -1 limit.

    Inverts pbar3 = beta/sqrt(|beta^2 - 1|): time-like pbar3 (|pbar3| > 1)
    maps to |beta| > 1, space-like to |beta| < 1, both sign-preserving.
    The dictionary degenerates on the light cone and at |pbar3| = 1.
    """
    if ctype is CausalType.LIGHT_LIKE:
        raise DomainError("light-like covectors sit at the |beta| = 1 horizon")
    if ctype is CausalType.TIME_LIKE:
        if abs(pbar3) <= 1.0:
            raise DomainError(f"time-like dictionary needs |pbar3| > 1, got {pbar3!r}")
        return pbar3 / math.sqrt(pbar3 * pbar3 - 1.0)
    if not math.isfinite(pbar3):
        raise DomainError("space-like pbar3 must be finite")
    return pbar3 / math.sqrt(pbar3 * pbar3 + 1.0)


def sr_cut_time(beta: float) -> float:
    """Cut time of the sub-Riemannian geodesic with vertical parameter beta.

    Four regimes in |beta|: above 3/sqrt(5) the conjugate cap
    2 pi / sqrt(beta^2 - 1); in (1, 3/sqrt(5)] the first root of the
    two-frequency q0-type oscillation; exactly 1, the parabolic equation
    cos(t/2) + (t/2) sin(t/2) = 0 on (pi, 2 pi); below 1 the hyperbolic
    variant with its root in (pi/|beta|, 2 pi/|beta|); +inf at beta = 0.
    All branches are even in beta and glue continuously.
    """
    b = abs(beta)
    if b == 0.0:
        return math.inf
    if b > SR_CUT_BETA_SPLIT:
        return 2.0 * math.pi / math.sqrt(b * b - 1.0)
    if b > 1.0:
        w = math.sqrt(b * b - 1.0)
        pbar3 = b / w

        def f(t: float) -> float:
            return math.cos(0.5 * w * t) * math.cos(0.5 * b * t) + pbar3 * math.sin(
                0.5 * w * t
            ) * math.sin(0.5 * b * t)

        cap = 2.0 * math.pi / w
        step = min(cap / 32.0, math.pi / (2.0 * (w + b)))
        try:
            return find_first_positive_root(f, step, ROOT_TOLERANCE, cap * (1.0 + 1e-9))
        except NoRootFound:
            # at the branch boundary the first zero degenerates to a triple
            # zero sitting exactly on the conjugate cap; the sign change is
            # below floating noise there, but the value is the cap itself
            return cap
    if b == 1.0:

        def f(t: float) -> float:
            return math.cos(0.5 * t) + 0.5 * t * math.sin(0.5 * t)

        limit = 2.0 * math.pi * (1.0 + 1e-9)
        return find_first_positive_root(f, math.pi / 16.0, ROOT_TOLERANCE, limit)
    w = math.sqrt(1.0 - b * b)
    pbar3 = b / w

    # divided by cosh to stay bounded; same zeros
    def f(t: float) -> float:
        return math.cos(0.5 * b * t) + pbar3 * math.tanh(0.5 * w * t) * math.sin(
            0.5 * b * t
        )

    limit = (2.0 * math.pi / b) * (1.0 + 1e-9)
    return find_first_positive_root(f, limit / 32.0, ROOT_TOLERANCE, limit)


def limit_comparison(
    pbar3: float, ctype: CausalType, eta_list: list[float]
) -> list[tuple[float, float, float, float]]:
    """Riemannian versus sub-Riemannian cut time along eta -> -1.

    For each eta in eta_list (all < -1, strictly increasing) builds the
    I1 = 1 metric, takes the covector with the given pbar3 at phase 0, and
    tabulates (eta, riemannian cut, sub-Riemannian cut, absolute gap).
    The gaps shrink to zero as eta approaches -1.
    """
    if not eta_list:
        raise ValueError("eta_list must be non-empty")
    if any(e >= -1.0 for e in eta_list):
        raise DomainError("every eta must be < -1")
    if any(b <= a for a, b in zip(eta_list, eta_list[1:])):
        raise ValueError("eta_list must be strictly increasing")
    sr = sr_cut_time(beta_from_pbar3(pbar3, ctype))
    rows = []
    for eta in eta_list:
        m = metric_from_eta(eta, 1.0)
        p = covector_from_pbar3(m, pbar3, 0.0, ctype)
        riem = cut_time(m, p, GroupTag.PSL2)
        rows.append((eta, riem, sr, abs(riem - sr)))
    return rows
