"""Shared test utilities: independent reference implementations.

Everything here is written from the defining formulas, not by calling the
package, so tests that compare against these functions exercise two
separate code paths.
"""

import math
import random

from hypgeo import CausalType, covector_from_pbar3, light_covector


def mul4(a, b):
    """Split-quaternion product on plain 4-tuples, from the unit table
    i^2 = j^2 = 1, k^2 = -1, ij = -k, jk = i, ki = j."""
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 + a1 * b1 + a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 + a2 * b0 + a3 * b1 - a1 * b3,
        a0 * b3 + a3 * b0 - a1 * b2 + a2 * b1,
    )


def series_exp(v1, v2, v3, terms=60):
    """exp((v1 i + v2 j + v3 k)/2) summed as a power series."""
    x = (0.0, 0.5 * v1, 0.5 * v2, 0.5 * v3)
    acc = (1.0, 0.0, 0.0, 0.0)
    term = (1.0, 0.0, 0.0, 0.0)
    for n in range(1, terms):
        term = tuple(c / n for c in mul4(term, x))
        acc = tuple(s + c for s, c in zip(acc, term))
    return acc


def gap(a, b):
    """Componentwise distance between two 4-component elements."""
    return max(abs(x - y) for x, y in zip(a.components(), b.components()))


def projective_gap(a, b):
    """Distance between two elements up to overall sign."""
    ca, cb = a.components(), b.components()
    direct = max(abs(x - y) for x, y in zip(ca, cb))
    flipped = max(abs(x + y) for x, y in zip(ca, cb))
    return min(direct, flipped)


def bisect(f, lo, hi, iters=200):
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if f(mid) * flo <= 0.0:
            hi = mid
        else:
            lo, flo = mid, f(mid)
    return 0.5 * (lo + hi)


def rk4_reference(m, p, t, steps):
    """Fixed-step RK4 for the geodesic system, coded independently.

    State is (q, momentum); the group equation is dq = q * w(momentum)
    with w = (0, p1/(2 I1), p2/(2 I1), -p3/(2 I3)), and the momentum
    precesses about e3 at rate p3 (1/I1 + 1/I3).
    """
    i1, i3 = m.i1, m.i3

    def rhs(state):
        q, (p1, p2, p3) = state
        w = (0.0, p1 / (2.0 * i1), p2 / (2.0 * i1), -p3 / (2.0 * i3))
        dq = mul4(q, w)
        rate = p3 * (1.0 / i1 + 1.0 / i3)
        return dq, (-rate * p2, rate * p1, 0.0)

    def step(state, h):
        k1 = rhs(state)
        k2 = rhs(_shift(state, k1, 0.5 * h))
        k3 = rhs(_shift(state, k2, 0.5 * h))
        k4 = rhs(_shift(state, k3, h))
        q, mom = state
        dq = tuple(
            (a + 2.0 * b + 2.0 * c + d) / 6.0
            for a, b, c, d in zip(k1[0], k2[0], k3[0], k4[0])
        )
        dp = tuple(
            (a + 2.0 * b + 2.0 * c + d) / 6.0
            for a, b, c, d in zip(k1[1], k2[1], k3[1], k4[1])
        )
        return (
            tuple(x + h * v for x, v in zip(q, dq)),
            tuple(x + h * v for x, v in zip(mom, dp)),
        )

    state = ((1.0, 0.0, 0.0, 0.0), (p.p1, p.p2, p.p3))
    h = t / steps
    for _ in range(steps):
        state = step(state, h)
    return state[0]


def _shift(state, deriv, h):
    q, mom = state
    dq, dp = deriv
    return (
        tuple(x + h * v for x, v in zip(q, dq)),
        tuple(x + h * v for x, v in zip(mom, dp)),
    )


def random_covector(rnd: random.Random, m, ctype=None):
    """Covector on C with a random causal type (or the requested one)."""
    if ctype is None:
        ctype = rnd.choice(
            [CausalType.TIME_LIKE, CausalType.SPACE_LIKE, CausalType.LIGHT_LIKE]
        )
    phase = rnd.uniform(-math.pi, math.pi)
    if ctype is CausalType.LIGHT_LIKE:
        return light_covector(m, phase, 1 if rnd.random() < 0.5 else -1)
    if ctype is CausalType.TIME_LIKE:
        mag = 1.0 + 10.0 ** rnd.uniform(-3.0, 1.5)
    else:
        mag = 10.0 ** rnd.uniform(-3.0, 1.5)
    pbar3 = math.copysign(mag, rnd.uniform(-1.0, 1.0))
    return covector_from_pbar3(m, pbar3, phase, ctype)
