"""Geodesic flow of the metrics: closed forms, an ODE oracle, Jacobians
and the discrete symmetries of the exponential map.

A geodesic through the identity with initial covector p on C is the
product of two one-parameter subgroups,

    Q(t) = exp(t p / I1) * exp(t eta p3 e3 / I1),

which expands per causal type into trigonometric / affine / hyperbolic
closed forms in the rescaled time tau = t|p|/(2 I1).  The second factor is
the vertical flow: the momentum itself precesses about e3 with angular
rate -eta p3 / I1 while p3 and the horizontal radius stay fixed.

`exp_map` evaluates the closed forms; `exp_map_ode_oracle` integrates the
underlying Hamiltonian system with a fixed-step RK4 scheme and is kept
deliberately independent of the closed forms so each can check the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import SplitQuaternion
from .errors import LightLikeInput, NegativeTime, StepCountTooSmall
from .metric_space import CausalType, Covector, Metric, covector_from_components, tau_of_t

MIN_ORACLE_STEPS = 100


@dataclass(frozen=True)
class GeodesicSample:
    """One sampled point of a geodesic."""

    t: float
    point: SplitQuaternion


def _rotate(x: float, y: float, angle: float) -> tuple[float, float]:
    c, s = math.cos(angle), math.sin(angle)
    return (x * c - y * s, x * s + y * c)


def exp_map(m: Metric, p: Covector, t: float) -> SplitQuaternion:
    """Endpoint of the unit-speed geodesic with initial covector p at time t.

    Branches on the causal type of p.  Time-like covectors give

        q0 = cos(tau) ce - pbar3 sin(tau) se
        (q1, q2) = sin(tau) * R(-tau eta pbar3) (pbar1, pbar2)
        q3 = cos(tau) se + pbar3 sin(tau) ce

    with ce = cos(tau eta pbar3), se = sin(tau eta pbar3); space-like ones
    replace cos/sin of tau by cosh/sinh; the light-like cone uses the
    affine-in-t form with rotation angle t eta p3 / (2 I1).
    """
    if t < 0.0:
        raise NegativeTime(f"geodesic time must be >= 0, got {t!r}")
    eta = m.eta
    if p.ctype is CausalType.LIGHT_LIKE:
        a = t * eta * p.p3 / (2.0 * m.i1)
        b = t / (2.0 * m.i1)
        ca, sa = math.cos(a), math.sin(a)
        x, y = _rotate(p.p1, p.p2, -a)
        return SplitQuaternion(
            ca - b * p.p3 * sa,
            b * x,
            b * y,
            sa + b * p.p3 * ca,
        )
    tau = tau_of_t(m, p, t)
    pbar3 = p.pbar3
    pbar1 = p.p1 / p.norm
    pbar2 = p.p2 / p.norm
    theta = tau * eta * pbar3
    ce, se = math.cos(theta), math.sin(theta)
    if p.ctype is CausalType.TIME_LIKE:
        ct, st = math.cos(tau), math.sin(tau)
    else:
        ct, st = math.cosh(tau), math.sinh(tau)
    x, y = _rotate(pbar1, pbar2, -theta)
    return SplitQuaternion(
        ct * ce - pbar3 * st * se,
        st * x,
        st * y,
        ct * se + pbar3 * st * ce,
    )


def vertical_flow(m: Metric, p: Covector, t: float) -> Covector:
    """Momentum at time t: precession of (p1, p2) by angle -t eta p3 / I1.

    Leaves p3, the causal character and the energy constraint invariant,
    so the result is again a covector on C.
    """
    angle = -t * m.eta * p.p3 / m.i1
    x, y = _rotate(p.p1, p.p2, angle)
    return covector_from_components(m, x, y, p.p3)


def sample_geodesic(m: Metric, p: Covector, t_end: float, n: int) -> list[GeodesicSample]:
    """n evenly spaced samples of the geodesic on [0, t_end]."""
    if n < 2:
        raise ValueError("need at least two samples")
    out = []
    for i in range(n):
        t = t_end * i / (n - 1)
        out.append(GeodesicSample(t, exp_map(m, p, t)))
    return out


# ---- ODE oracle --------------------------------------------------------
#
# Hamiltonian form: Qdot = Q * Omega(p), pdot = vertical precession, with
# Omega = (p1/I1) e1 + (p2/I1) e2 - (p3/I3) e3 and e_a = (i/2, j/2, k/2).
# Integrated with classical RK4 and a pseudo-norm renormalization each
# step to hold the trajectory on the group.

def _ode_rhs(q: np.ndarray, p: np.ndarray, i1: float, i3: float):
    w1 = p[:, 0] / (2.0 * i1)
    w2 = p[:, 1] / (2.0 * i1)
    w3 = -p[:, 2] / (2.0 * i3)
    q0, q1, q2, q3 = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    dq = np.stack(
        [
            q1 * w1 + q2 * w2 - q3 * w3,
            q0 * w1 + q2 * w3 - q3 * w2,
            q0 * w2 + q3 * w1 - q1 * w3,
            q0 * w3 - q1 * w2 + q2 * w1,
        ],
        axis=1,
    )
    rate = p[:, 2] * (1.0 / i1 + 1.0 / i3)
    dp = np.stack([-rate * p[:, 1], rate * p[:, 0], np.zeros_like(rate)], axis=1)
    return dq, dp


def exp_map_ode_oracle_batch(
    m: Metric,
    covectors: Sequence[Covector],
    times: Sequence[float],
    steps: int = 10_000,
) -> list[SplitQuaternion]:
    """RK4-integrated endpoints for many (covector, time) pairs at once.

    Each trajectory uses its own step size t/steps; the whole batch is
    advanced together so the cost is steps * O(batch) numpy work.
    """
    if steps < MIN_ORACLE_STEPS:
        raise StepCountTooSmall(f"need >= {MIN_ORACLE_STEPS} steps, got {steps}")
    ts = np.asarray([float(t) for t in times], dtype=float)
    if np.any(ts < 0.0):
        raise NegativeTime("geodesic times must be >= 0")
    if len(covectors) != ts.shape[0]:
        raise ValueError("covectors and times must have equal length")
    n = ts.shape[0]
    if n == 0:
        return []

    q = np.zeros((n, 4))
    q[:, 0] = 1.0
    p = np.asarray([c.components() for c in covectors], dtype=float)
    h = ts / steps

    for _ in range(steps):
        k1q, k1p = _ode_rhs(q, p, m.i1, m.i3)
        k2q, k2p = _ode_rhs(
            q + 0.5 * h[:, None] * k1q, p + 0.5 * h[:, None] * k1p, m.i1, m.i3
        )
        k3q, k3p = _ode_rhs(
            q + 0.5 * h[:, None] * k2q, p + 0.5 * h[:, None] * k2p, m.i1, m.i3
        )
        k4q, k4p = _ode_rhs(q + h[:, None] * k3q, p + h[:, None] * k3p, m.i1, m.i3)
        q = q + (h[:, None] / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
        p = p + (h[:, None] / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        # project back onto the unit pseudo-norm surface
        pn = q[:, 0] **2 - q[:, 1] **2 - q[:, 2] **2 + q[:, 3] **2
        q = q / np.sqrt(pn)[:, None]

    return [SplitQuaternion(*row) for row in q.tolist()]


def exp_map_ode_oracle(
    m: Metric, p: Covector, t: float, steps: int = 10_000
) -> SplitQuaternion:
    """Single-trajectory front end of the batch integrator."""
    return exp_map_ode_oracle_batch(m, [p], [t], steps)[0]


# ---- Jacobian of the exponential map -----------------------------------

def jacobian(m: Metric, ctype: CausalType, pbar3: float, tau: float) -> float:
    """Jacobian determinant factor of the exponential map in (tau, pbar3).

        J = type * s^3 * (tau eta (1 - type pbar3^2) c + (1 + type eta pbar3^2) s)

    where (s, c) = (sin, cos)(tau) for time-like covectors (type = +1) and
    (sinh, cosh)(tau) for space-like ones (type = -1).  Vanishing of J
    signals a conjugate point; light-like covectors admit none and are
    rejected.
    """
    if ctype is CausalType.LIGHT_LIKE:
        raise LightLikeInput("jacobian factor is undefined on the light cone")
    eta = m.eta
    if ctype is CausalType.TIME_LIKE:
        type_sign = 1.0
        s, c = math.sin(tau), math.cos(tau)
    else:
        type_sign = -1.0
        s, c = math.sinh(tau), math.cosh(tau)
    bracket = tau * eta * (1.0 - type_sign * pbar3 * pbar3) * c + (
        1.0 + type_sign * eta * pbar3 * pbar3
    ) * s
    return type_sign * s **3 * bracket


# ---- discrete symmetries ------------------------------------------------

@dataclass(frozen=True)
class SymmetryElement:
    """An element of the symmetry group O(2) x Z2 of the exponential map.

    The O(2) factor acts on the horizontal plane: reflection across the
    e1 axis when `mirror` is set, followed by rotation by `angle`.  The Z2
    factor (`flip3`) negates the vertical component.  Reflections of either
    kind reverse the vertical flow, so an element twists the momentum by
    the flow exactly when mirror != flip3.
    """

    angle: float = 0.0
    mirror: bool = False
    flip3: bool = False

    @staticmethod
    def rotation(angle: float) -> "SymmetryElement":
        return SymmetryElement(angle=angle)

    @staticmethod
    def sigma1() -> "SymmetryElement":
        """Reflection across the plane spanned by e1 and e3."""
        return SymmetryElement(mirror=True)

    @staticmethod
    def sigma2() -> "SymmetryElement":
        """Reflection across the horizontal plane spanned by e1 and e2."""
        return SymmetryElement(flip3=True)

    @property
    def kind(self) -> str:
        if self.mirror and self.flip3:
            return "composite"
        if self.mirror:
            return "reflection-sigma1" if self.angle == 0.0 else "composite"
        if self.flip3:
            return "reflection-sigma2" if self.angle == 0.0 else "composite"
        return "rotation"

    @property
    def reverses_vertical(self) -> bool:
        return self.mirror != self.flip3

    def compose(self, other: "SymmetryElement") -> "SymmetryElement":
        """self after other (group product)."""
        sign = -1.0 if self.mirror else 1.0
        return SymmetryElement(
            angle=self.angle + sign * other.angle,
            mirror=self.mirror != other.mirror,
            flip3=self.flip3 != other.flip3,
        )

    def act_on_vector(self, x: float, y: float, z: float) -> tuple[float, float, float]:
        if self.flip3:
            z = -z
        if self.mirror:
            y = -y
        x, y = _rotate(x, y, self.angle)
        return (x, y, z)


def apply_symmetry_preimage(
    m: Metric, s: SymmetryElement, p: Covector, t: float
) -> tuple[Covector, float]:
    """Companion initial condition: the covector whose geodesic is the
    s-image of the geodesic of p, at the same time.

    Vertical-flow-preserving elements act on p directly; reversing ones
    must first push p through the vertical flow for time t.
    """
    base = vertical_flow(m, p, t) if s.reverses_vertical else p
    x, y, z = s.act_on_vector(base.p1, base.p2, base.p3)
    return covector_from_components(m, x, y, z), t


def apply_symmetry_image(s: SymmetryElement, q: SplitQuaternion) -> SplitQuaternion:
    """Action of s on the group: O(2) on (q1, q2), Z2 on q3, q0 fixed."""
    x, y = q.q1, q.q2
    if s.mirror:
        y = -y
    x, y = _rotate(x, y, s.angle)
    q3 = -q.q3 if s.flip3 else q.q3
    return SplitQuaternion(q.q0, x, y, q3)
