"""Optimal synthesis on top of the geodesic flow: Maxwell, conjugate and
cut times, injectivity radius, cut-locus and wavefront sampling, and the
inverse of the exponential map on its diffeomorphism domain.

Group conventions.  PSL(2,R) identifies antipodal unit split quaternions;
its cut times come from the first vanishing of q0 (point-reflection
targets) capped by the first conjugate time.  SL(2,R) keeps the full
quaternion and swaps the roles: q3-roots capped by the conjugate time.
Both caps happen at the rescaled time tau = pi, where a whole circle of
rotated geodesics meets again and the Jacobian of the exponential map
vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .algebra import Psl2Element, SplitQuaternion, psl2_canonicalize
from .errors import IdentityTarget, NoConvergence, OnCutLocus
from .geodesic_engine import exp_map
from .metric_space import (
    ETA_INJ_SPLIT,
    ETA_POLE_SPLIT_PSL2,
    ETA_POLE_SPLIT_SL2,
    CausalType,
    Covector,
    Metric,
    covector_from_components,
    covector_from_pbar3,
)
from .root_solver import EQUATOR_TOLERANCE, maxwell_root_q0, maxwell_root_q3

# a target is declared to sit on the cut locus when its stratum equation
# (q0 = 0 for PSL2, the rotation band for axis targets) holds this tightly
ON_CUT_TOLERANCE = 1e-8


class GroupTag(Enum):
    PSL2 = "psl2"
    SL2 = "sl2"


@dataclass(frozen=True)
class CutDescriptor:
    """Cut-time summary for one covector: the three times and the stratum
    of the cut locus the geodesic ends on (None when it never stops being
    optimal)."""

    group: GroupTag
    t_max: float
    t_conj: float
    t_cut: float
    active_stratum: str | None


@dataclass(frozen=True)
class LocusSample:
    """One stratum worth of sampled cut-locus points.

    points[i] is reached exactly at its cut time along the witness
    geodesic parameters[i] = (covector, t); validation_error is the worst
    mismatch between an emitted point and its ideal stratum coordinates.
    """

    stratum: str
    points: tuple
    parameters: tuple
    validation_error: float


@dataclass(frozen=True)
class WavefrontPoint:
    covector: Covector
    point: SplitQuaternion
    optimal: bool


def first_conjugate_time(m: Metric, p: Covector) -> float:
    """2 pi I1 / |p| for time-like covectors, +inf otherwise."""
    if p.ctype is CausalType.TIME_LIKE:
        return 2.0 * math.pi * m.i1 / p.norm
    return math.inf


def maxwell_time(m: Metric, p: Covector) -> float:
    """First Maxwell time of the geodesic of p under the PSL(2,R)
    identifications.

    Time-like: the first q0-zero capped by the conjugate time (the cap is
    active exactly when |pbar3| <= -3/(2 eta)); light-like: the first
    q0-zero; space-like: the first q0-zero, +inf at pbar3 = 0 where q0
    never vanishes.  Continuous across the light cone and diverging at the
    space-like equator.
    """
    if p.ctype is CausalType.LIGHT_LIKE:
        return maxwell_root_q0(m, p)
    if p.ctype is CausalType.SPACE_LIKE:
        if abs(p.pbar3) < EQUATOR_TOLERANCE:
            return math.inf
        return maxwell_root_q0(m, p)
    if abs(p.pbar3) <= m.pbar3_threshold_psl2():
        # q0-root sits at or beyond tau = pi; the rotational cap wins
        return first_conjugate_time(m, p)
    return min(maxwell_root_q0(m, p), first_conjugate_time(m, p))


def _maxwell_time_sl2(m: Metric, p: Covector) -> float:
    """SL(2,R) analog of maxwell_time: q3-roots, threshold -2/eta."""
    if p.ctype is CausalType.LIGHT_LIKE:
        return maxwell_root_q3(m, p)
    if p.ctype is CausalType.SPACE_LIKE:
        if abs(p.pbar3) < EQUATOR_TOLERANCE:
            return math.inf
        return maxwell_root_q3(m, p)
    if abs(p.pbar3) <= m.pbar3_threshold_sl2():
        return first_conjugate_time(m, p)
    return min(maxwell_root_q3(m, p), first_conjugate_time(m, p))


def cut_time(m: Metric, p: Covector, group: GroupTag = GroupTag.PSL2) -> float:
    """Time at which the geodesic of p stops being minimizing.

    Equals the first Maxwell time of the respective group on all of C; the
    SL(2,R) value is never smaller than the PSL(2,R) one.
    """
    if group is GroupTag.PSL2:
        return maxwell_time(m, p)
    return _maxwell_time_sl2(m, p)


def describe_cut(m: Metric, p: Covector, group: GroupTag = GroupTag.PSL2) -> CutDescriptor:
    """Cut summary with the active stratum tag.

    M0: point-reflection plane (q0-root, PSL2); M3: symmetric plane
    (q3-root, SL2); M12: the rotational collapse at tau = pi shared by
    both groups; None: the geodesic is minimizing forever.
    """
    t_conj = first_conjugate_time(m, p)
    t_max = maxwell_time(m, p) if group is GroupTag.PSL2 else _maxwell_time_sl2(m, p)
    t_cut = t_max
    if math.isinf(t_cut):
        stratum = None
    elif p.ctype is CausalType.TIME_LIKE and t_conj <= t_cut * (1.0 + 1e-12):
        stratum = "M12"
    else:
        stratum = "M0" if group is GroupTag.PSL2 else "M3"
    return CutDescriptor(group, t_max, t_conj, t_cut, stratum)


def injectivity_radius(m: Metric) -> float:
    """Closed form of the injectivity radius (PSL(2,R)).

    Three regimes in eta, continuous at both junctions: the pole cut time
    for eta <= -2, an interior minimum of the cut time for
    -2 < eta <= (-3-sqrt(73))/8, and the conjugate-capped pole time above.
    """
    eta = m.eta
    root_i1 = math.sqrt(m.i1)
    if eta <= -2.0:
        return math.pi * root_i1 * math.sqrt(-1.0 / (1.0 + eta))
    if eta <= ETA_INJ_SPLIT:
        return math.pi * root_i1 * math.sqrt(-(eta + 4.0) / eta)
    return 2.0 * math.pi * root_i1 * math.sqrt(-(1.0 + eta))


# ---- cut-locus sampling --------------------------------------------------

def _chain_covector(m: Metric, x: float) -> Covector:
    """Phase-0 covector on C with vertical momentum x (the witness chain)."""
    p1 = math.sqrt(max(m.i1 * (1.0 - x * x / m.i3), 0.0))
    return covector_from_components(m, p1, 0.0, x)


def _chain_stop(m: Metric, group: GroupTag) -> float:
    """Vertical momentum where the witness chain's endpoint radius hits 0."""
    eta = m.eta
    if group is GroupTag.PSL2:
        bstar = 1.0 if eta <= ETA_POLE_SPLIT_PSL2 else m.pbar3_threshold_psl2()
    else:
        bstar = 1.0 if eta <= ETA_POLE_SPLIT_SL2 else m.pbar3_threshold_sl2()
    return bstar * math.sqrt(m.i1 / (-(1.0 + eta * bstar * bstar)))


def _chain_radius(m: Metric, group: GroupTag, x: float):
    """(radius, covector, t, endpoint) of the cut point above chain(x)."""
    try:
        p = _chain_covector(m, x)
        t = cut_time(m, p, group)
        e = exp_map(m, p, t)
        return math.hypot(e.q1, e.q2), p, t, e
    except OverflowError:
        return math.inf, None, None, None


def _chain_witness_x(m: Metric, group: GroupTag, rho: float, table) -> float:
    """Chain parameter whose cut point has horizontal radius rho."""
    bracket = None
    for (xa, ra), (xb, rb) in zip(table, table[1:]):
        if (ra - rho) * (rb - rho) <= 0.0:
            bracket = (xa, ra, xb, rb)
            break
    if bracket is None:
        raise NoConvergence(f"no chain bracket for radius {rho!r}")
    lo, flo, hi, fhi = bracket
    for _ in range(200):
        if abs(hi - lo) < 1e-16 * (1.0 + abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        fm = _chain_radius(m, group, mid)[0]
        if abs(fm - rho) < 1e-13 * (1.0 + rho):
            return mid
        if (flo - rho) * (fm - rho) <= 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _rotated(m: Metric, p: Covector, delta: float) -> Covector:
    c, s = math.cos(delta), math.sin(delta)
    return covector_from_components(
        m, p.p1 * c - p.p2 * s, p.p1 * s + p.p2 * c, p.p3
    )


def _plane_stratum(m: Metric, group: GroupTag, n: int, rho_max: float) -> LocusSample:
    """n x n sample of the planar stratum: Z = {q0 = 0} for PSL(2,R), the
    lower symmetric sheet H = {q3 = 0, q0 <= -1} for SL(2,R).

    Rows are horizontal radii rho_max*i/n, columns are phases; every point
    is produced as Exp(witness covector, cut time), never fabricated.
    """
    x_stop = _chain_stop(m, group)
    # descending radius along ascending x; extend toward x = 0 until the
    # table covers rho_max (the radius blows up exponentially there)
    xs = [x_stop * (k + 0.5) / 96.0 for k in range(96)]
    table = [(x, _chain_radius(m, group, x)[0]) for x in xs]
    guard = 0
    while table[0][1] < rho_max and guard < 60:
        table.insert(0, (table[0][0] * 0.5, _chain_radius(m, group, table[0][0] * 0.5)[0]))
        guard += 1
    table.append((x_stop, 0.0))

    points, params = [], []
    worst = 0.0
    psl2 = group is GroupTag.PSL2

    def z_normal(q: SplitQuaternion) -> SplitQuaternion:
        # on the plane q0 is pure noise, so the representative sign must
        # come from q3 (which is bounded away from 0 there)
        return -q if q.q3 < 0.0 else q

    for i in range(1, n + 1):
        rho = rho_max * i / n
        x = _chain_witness_x(m, group, rho, table)
        _, p0, t, e0 = _chain_radius(m, group, x)
        base = z_normal(e0) if psl2 else e0
        gamma0 = math.atan2(base.q2, base.q1)
        sheet = math.sqrt(1.0 + rho * rho)
        for j in range(n):
            phi = 2.0 * math.pi * j / n
            pj = _rotated(m, p0, phi - gamma0)
            ej = exp_map(m, pj, t)
            if psl2:
                comp = z_normal(ej)
                ideal = (0.0, rho * math.cos(phi), rho * math.sin(phi), sheet)
                points.append(Psl2Element(comp))
            else:
                comp = ej
                ideal = (-sheet, rho * math.cos(phi), rho * math.sin(phi), 0.0)
                points.append(ej)
            params.append((pj, t))
            worst = max(
                worst, max(abs(a - b) for a, b in zip(comp.components(), ideal))
            )
    return LocusSample("Z" if psl2 else "H", tuple(points), tuple(params), worst)


def _rotation_stratum_psl2(m: Metric, n: int) -> LocusSample:
    """Axis-rotation stratum of the PSL(2,R) cut locus, eta > -3/2 only.

    n rotation angles sweep the open-left interval (-2 pi (1+eta), pi];
    the mirror arc of negative angles is the flip3 image and is not
    duplicated.  Witnesses run at the conjugate-capped time tau = pi with
    pbar3 = -(phi + 2 pi)/(2 pi eta), vertical sign flipped.
    """
    eta = m.eta
    phi_left = -2.0 * math.pi * (1.0 + eta)
    points, params = [], []
    worst = 0.0
    for k in range(1, n + 1):
        phi = phi_left + (math.pi - phi_left) * k / n
        b = -(phi + 2.0 * math.pi) / (2.0 * math.pi * eta)
        p = covector_from_pbar3(m, -b, 0.0, CausalType.TIME_LIKE)
        t = first_conjugate_time(m, p)
        pe = psl2_canonicalize(exp_map(m, p, t))
        ideal = (math.cos(0.5 * phi), 0.0, 0.0, math.sin(0.5 * phi))
        worst = max(worst, max(abs(a - b_) for a, b_ in zip(pe.components(), ideal)))
        points.append(pe)
        params.append((p, t))
    return LocusSample("R_eta", tuple(points), tuple(params), worst)


def _conjugate_circle_psl2(m: Metric) -> LocusSample:
    """The two conjugate endpoints of the rotation stratum, angles
    +-2 pi (1+eta), reached by the pole covectors at the conjugate time."""
    phi_c = -2.0 * math.pi * (1.0 + m.eta)
    points, params = [], []
    worst = 0.0
    for sign in (1.0, -1.0):
        p = covector_from_pbar3(m, -sign, 0.0, CausalType.TIME_LIKE)
        t = first_conjugate_time(m, p)
        pe = psl2_canonicalize(exp_map(m, p, t))
        ideal = (math.cos(0.5 * phi_c), 0.0, 0.0, sign * math.sin(0.5 * phi_c))
        worst = max(worst, max(abs(a - b_) for a, b_ in zip(pe.components(), ideal)))
        points.append(pe)
        params.append((p, t))
    return LocusSample("ConjugateCircle", tuple(points), tuple(params), worst)


def _axis_stratum_sl2(m: Metric, n: int) -> LocusSample:
    """Antipodal axis-rotation stratum of the SL(2,R) cut locus, eta > -2.

    Points -(cos(pi eta s) + sin(pi eta s) k) for s in (1, -2/eta]; the
    q3-mirror arc (witnessed by negative pbar3) is not duplicated.  The
    s = 1 endpoint is conjugate and reported separately.
    """
    eta = m.eta
    s_max = m.pbar3_threshold_sl2()
    points, params = [], []
    worst = 0.0
    for k in range(1, n + 1):
        s = 1.0 + (s_max - 1.0) * k / n
        p = covector_from_pbar3(m, s, 0.0, CausalType.TIME_LIKE)
        t = first_conjugate_time(m, p)
        e = exp_map(m, p, t)
        ideal = (-math.cos(math.pi * eta * s), 0.0, 0.0, -math.sin(math.pi * eta * s))
        worst = max(worst, max(abs(a - b_) for a, b_ in zip(e.components(), ideal)))
        points.append(e)
        params.append((p, t))
    return LocusSample("T_eta", tuple(points), tuple(params), worst)


def _conjugate_circle_sl2(m: Metric) -> LocusSample:
    """Conjugate endpoints of the SL(2,R) axis stratum (s = 1, both pole
    signs)."""
    eta = m.eta
    points, params = [], []
    worst = 0.0
    for sign in (1.0, -1.0):
        p = covector_from_pbar3(m, sign, 0.0, CausalType.TIME_LIKE)
        t = first_conjugate_time(m, p)
        e = exp_map(m, p, t)
        ideal = (-math.cos(math.pi * eta), 0.0, 0.0, -sign * math.sin(math.pi * eta))
        worst = max(worst, max(abs(a - b_) for a, b_ in zip(e.components(), ideal)))
        points.append(e)
        params.append((p, t))
    return LocusSample("ConjugateCircle", tuple(points), tuple(params), worst)


def cut_locus_sample(
    m: Metric, group: GroupTag, n: int, rho_max: float = 3.0
) -> list[LocusSample]:
    """Sampled cut locus of the group, one LocusSample per stratum.

    PSL(2,R): the point-reflection plane Z always, plus the axis-rotation
    interval and its conjugate endpoints when eta > -3/2.  SL(2,R): the
    lower symmetric sheet H always, plus the antipodal rotations T_eta and
    their conjugate endpoints when eta > -2.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    out = [_plane_stratum(m, group, n, rho_max)]
    if group is GroupTag.PSL2:
        if m.eta > ETA_POLE_SPLIT_PSL2:
            out.append(_rotation_stratum_psl2(m, n))
            out.append(_conjugate_circle_psl2(m))
    else:
        if m.eta > ETA_POLE_SPLIT_SL2:
            out.append(_axis_stratum_sl2(m, n))
            out.append(_conjugate_circle_sl2(m))
    return out


def wavefront_row(
    m: Metric, t: float, n: int, i: int, group: GroupTag = GroupTag.PSL2
) -> list[WavefrontPoint]:
    """Row i of the wavefront grid: fixed u = -1 + 2i/(n-1), all n phases.

    The cut time is phase-invariant, so the row's optimality flag is
    computed once.  Rows are independent of each other, which makes them
    the natural unit of parallel fan-out.
    """
    u = -1.0 + 2.0 * i / (n - 1)
    radial = math.sqrt(max(m.i1 * (1.0 - u * u), 0.0))
    p3 = u * math.sqrt(m.i3)
    p_row = covector_from_components(m, radial, 0.0, p3)
    optimal = t < cut_time(m, p_row, group)
    out = []
    for j in range(n):
        phase = 2.0 * math.pi * j / n
        p = covector_from_components(
            m, radial * math.cos(phase), radial * math.sin(phase), p3
        )
        out.append(WavefrontPoint(p, exp_map(m, p, t), optimal))
    return out


def wavefront_sample(
    m: Metric, t: float, n: int, group: GroupTag = GroupTag.PSL2
) -> list[WavefrontPoint]:
    """The geodesic wavefront at time t on an n x n (vertical, phase) grid.

    Rows sweep u = p3/sqrt(I3) over [-1, 1] (poles included), columns the
    horizontal phase; each sample records whether its geodesic is still
    minimizing at t (t < cut time).
    """
    if t <= 0.0:
        raise ValueError("wavefront time must be positive")
    if n < 8:
        raise ValueError("need n >= 8")
    out = []
    for i in range(n):
        out.extend(wavefront_row(m, t, n, i, group))
    return out


# ---- inverse of the exponential map -------------------------------------

def _axis_log(m: Metric, q: SplitQuaternion, tol: float) -> tuple[Covector, float]:
    """Logarithm of an axis rotation (q1 = q2 = 0): the pole geodesics."""
    eta = m.eta
    phi = 2.0 * math.atan2(q.q3, q.q0)
    if eta > ETA_POLE_SPLIT_PSL2:
        band = -2.0 * math.pi * (1.0 + eta)
        if abs(phi) >= band * (1.0 - 1e-12):
            raise OnCutLocus(
                "axis rotation angle lies in the cut interval of the rotation stratum"
            )
    pbar3 = -1.0 if phi > 0.0 else 1.0
    tau = abs(phi) / (-2.0 * (1.0 + eta))
    p = covector_from_pbar3(m, pbar3, 0.0, CausalType.TIME_LIKE)
    return p, 2.0 * m.i1 * tau / p.norm


def riemannian_log(
    m: Metric, target: Psl2Element | SplitQuaternion, tol: float = 1e-10
) -> tuple[Covector, float]:
    """Inverse of the exponential map on its diffeomorphism domain.

    Returns the unique (covector, t) with t below the cut time and
    Exp(covector, t) = target within tol; t is the Riemannian distance
    from the identity.  Rotational symmetry reduces the search to the
    (q0, q3) slice: a seeded, damped two-dimensional Newton iteration over
    (vertical momentum, time), with the horizontal phase restored exactly
    afterwards.  Axis targets are inverted in closed form along the pole
    geodesics.

    Raises IdentityTarget at the identity, OnCutLocus when the target sits
    on a cut stratum (|q0| below 1e-8, or an axis rotation inside the cut
    interval), and NoConvergence (carrying the best residual) if every
    seed fails.
    """
    raw = target.rep if isinstance(target, Psl2Element) else target
    q = psl2_canonicalize(raw).rep
    rho = math.hypot(q.q1, q.q2)
    if abs(q.q0 - 1.0) < 1e-12 and rho < 1e-12 and abs(q.q3) < 1e-12:
        raise IdentityTarget("the identity has zero distance and no direction")
    if abs(q.q0) < ON_CUT_TOLERANCE:
        raise OnCutLocus("target lies on the point-reflection plane q0 = 0")
    if rho < 1e-10:
        return _axis_log(m, q, tol)

    x_max = math.sqrt(m.i3)
    x_cap = x_max * (1.0 - 1e-12)
    inner_tol = min(1e-12, tol)

    def chain(x: float) -> Covector:
        x = min(max(x, -x_cap), x_cap)
        p1 = math.sqrt(max(m.i1 * (1.0 - x * x / m.i3), 0.0))
        return covector_from_components(m, p1, 0.0, x)

    def resid(x: float, t: float) -> tuple[float, float]:
        e = exp_map(m, chain(x), t)
        return e.q0 - q.q0, e.q3 - q.q3

    # distance-scale cap so near-equatorial seeds don't sweep huge times
    psi = math.atan2(q.q3, q.q0)
    t_scale = (
        2.0 * math.sqrt(m.i1) * math.asinh(rho)
        + 2.0 * math.sqrt(m.i1 + m.i3) * (abs(psi) + 1.0)
    )
    t_cap_global = 3.0 * t_scale + 2.0 * math.sqrt(m.i1 + m.i3)

    seeds = []
    nx, nt = 48, 24
    for i in range(nx):
        x = x_cap * (-1.0 + 2.0 * (i + 0.5) / nx)
        p = chain(x)
        tc = cut_time(m, p, GroupTag.PSL2)
        t_hi = t_cap_global if math.isinf(tc) else min(tc * (1.0 - 1e-9), t_cap_global)
        for j in range(nt):
            t = t_hi * (j + 0.5) / nt
            r0, r3 = resid(x, t)
            seeds.append((r0 * r0 + r3 * r3, x, t))
    seeds.sort(key=lambda s: s[0])

    best_residual = math.inf

    def newton(x: float, t: float):
        nonlocal best_residual
        for _ in range(80):
            r0, r3 = resid(x, t)
            err = max(abs(r0), abs(r3))
            best_residual = min(best_residual, err)
            if err < inner_tol:
                return x, t
            hx = 1e-7 * x_max
            if x + hx > x_cap:
                hx = -hx
            ht = 1e-7 * max(abs(t), 1.0)
            a0, a3 = resid(x + hx, t)
            b0, b3 = resid(x, t + ht)
            j00, j30 = (a0 - r0) / hx, (a3 - r3) / hx
            j03, j33 = (b0 - r0) / ht, (b3 - r3) / ht
            det = j00 * j33 - j03 * j30
            if det == 0.0 or not math.isfinite(det):
                return None
            dx = -(r0 * j33 - r3 * j03) / det
            dt = -(j00 * r3 - j30 * r0) / det
            lam, moved = 1.0, False
            while lam > 1e-4:
                xn = min(max(x + lam * dx, -x_cap), x_cap)
                tn = max(t + lam * dt, 1e-12)
                n0, n3 = resid(xn, tn)
                if max(abs(n0), abs(n3)) < err:
                    x, t, moved = xn, tn, True
                    break
                lam *= 0.5
            if not moved:
                return None
        return None

    for _, x0, t0 in seeds[:8]:
        sol = newton(x0, t0)
        if sol is None:
            continue
        x, t = sol
        p0 = chain(x)
        e = exp_map(m, p0, t)
        delta = math.atan2(q.q2, q.q1) - math.atan2(e.q2, e.q1)
        p = _rotated(m, p0, delta)
        final = psl2_canonicalize(exp_map(m, p, t)).rep
        err = max(abs(a - b) for a, b in zip(final.components(), q.components()))
        if err > max(tol, 1e-9):
            continue
        if t > cut_time(m, p, GroupTag.PSL2) * (1.0 - 1e-12):
            # landed on a non-minimizing preimage; try the next seed
            continue
        return p, t
    raise NoConvergence(
        "no seed converged to a minimizing preimage", best_residual=best_residual
    )
