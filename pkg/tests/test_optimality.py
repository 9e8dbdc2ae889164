"""Maxwell/conjugate/cut times, strata, injectivity radius, logarithm."""

import math
import random

import pytest

from helpers import gap, projective_gap, random_covector
from hypgeo import (
    CausalType,
    GroupTag,
    IdentityTarget,
    OnCutLocus,
    SplitQuaternion,
    SymmetryElement,
    apply_symmetry_preimage,
    covector_from_pbar3,
    cut_locus_sample,
    cut_time,
    describe_cut,
    exp_map,
    first_conjugate_time,
    injectivity_radius,
    light_covector,
    make_metric,
    maxwell_root_q0,
    maxwell_time,
    metric_from_eta,
    psl2_canonicalize,
    riemannian_log,
    wavefront_row,
    wavefront_sample,
)

M = make_metric(1.0, 4.0)


# --- characteristic times -----------------------------------------------------


def test_first_conjugate_time_formula():
    p = covector_from_pbar3(M, 2.0, 0.1, CausalType.TIME_LIKE)
    assert abs(first_conjugate_time(M, p) - 2.0 * math.pi * M.i1 / p.norm) == 0.0
    assert math.isinf(first_conjugate_time(M, light_covector(M, 0.0)))
    sl = covector_from_pbar3(M, 0.5, 0.0, CausalType.SPACE_LIKE)
    assert math.isinf(first_conjugate_time(M, sl))


def test_maxwell_time_below_threshold_is_conjugate_capped():
    # psl2 threshold at eta = -1.25 is 1.2
    p = covector_from_pbar3(M, 1.15, 0.3, CausalType.TIME_LIKE)
    assert maxwell_time(M, p) == first_conjugate_time(M, p)
    d = describe_cut(M, p, GroupTag.PSL2)
    assert d.active_stratum == "M12"
    assert d.t_cut == d.t_max == d.t_conj


def test_maxwell_time_above_threshold_is_q0_root():
    p = covector_from_pbar3(M, 7.0, 0.3, CausalType.TIME_LIKE)
    tm = maxwell_time(M, p)
    assert tm < first_conjugate_time(M, p)
    assert abs(exp_map(M, p, tm).q0) < 1e-9
    assert describe_cut(M, p, GroupTag.PSL2).active_stratum == "M0"


def test_space_like_equator_never_cuts():
    p = covector_from_pbar3(M, 0.0, 0.1, CausalType.SPACE_LIKE)
    assert math.isinf(maxwell_time(M, p))
    d = describe_cut(M, p, GroupTag.PSL2)
    assert d.active_stratum is None
    assert math.isinf(d.t_cut)


def test_light_like_cut_is_finite_for_both_groups():
    p = light_covector(M, 0.7, -1)
    t_psl2 = cut_time(M, p, GroupTag.PSL2)
    t_sl2 = cut_time(M, p, GroupTag.SL2)
    assert 0.0 < t_psl2 < t_sl2 < math.inf
    assert abs(exp_map(M, p, t_psl2).q0) < 1e-9
    assert abs(exp_map(M, p, t_sl2).q3) < 1e-9


def test_sl2_threshold_regime():
    # sl2 threshold at eta = -1.25 is 1.6
    p = covector_from_pbar3(M, 1.5, 0.0, CausalType.TIME_LIKE)
    assert cut_time(M, p, GroupTag.SL2) == first_conjugate_time(M, p)
    assert describe_cut(M, p, GroupTag.SL2).active_stratum == "M12"
    q = covector_from_pbar3(M, 2.2, 0.0, CausalType.TIME_LIKE)
    t = cut_time(M, q, GroupTag.SL2)
    assert t < first_conjugate_time(M, q)
    assert describe_cut(M, q, GroupTag.SL2).active_stratum == "M3"


@pytest.mark.parametrize("seed", range(60))
def test_cut_time_laws(seed):
    rnd = random.Random(52_000 + seed)
    m = metric_from_eta(rnd.uniform(-2.8, -1.05), rnd.uniform(0.5, 2.0))
    p = random_covector(rnd, m)
    t_psl2 = cut_time(m, p, GroupTag.PSL2)
    t_sl2 = cut_time(m, p, GroupTag.SL2)
    t_conj = first_conjugate_time(m, p)
    assert t_psl2 <= t_sl2 * (1.0 + 1e-12)
    assert t_psl2 <= t_conj * (1.0 + 1e-12)
    assert t_sl2 <= t_conj * (1.0 + 1e-12)
    d = describe_cut(m, p, GroupTag.PSL2)
    assert d.t_cut == d.t_max == t_psl2 and d.t_conj == t_conj
    assert d.active_stratum in ("M0", "M12", None)
    assert describe_cut(m, p, GroupTag.SL2).active_stratum in ("M3", "M12", None)


# --- Maxwell coincidence: two symmetric momenta meet at t_max ------------------


def _antipodal_partner(m, p, t):
    s = SymmetryElement(angle=math.pi, flip3=True)
    return apply_symmetry_preimage(m, s, p, t)[0]


def _mirror_partner(m, p, t):
    return apply_symmetry_preimage(m, SymmetryElement.sigma2(), p, t)[0]


@pytest.mark.parametrize("seed", range(25))
def test_psl2_maxwell_coincidence(seed):
    rnd = random.Random(402 + seed)
    m = metric_from_eta(rnd.uniform(-2.5, -1.1))
    kind = rnd.choice([CausalType.TIME_LIKE, CausalType.SPACE_LIKE])
    if kind is CausalType.TIME_LIKE:
        p = covector_from_pbar3(m, rnd.uniform(1.02, 10.0), rnd.uniform(0, 6), kind)
    else:
        p = covector_from_pbar3(m, rnd.uniform(0.1, 0.95), rnd.uniform(0, 6), kind)
    t = cut_time(m, p, GroupTag.PSL2)
    q = exp_map(m, p, t)
    stratum = describe_cut(m, p, GroupTag.PSL2).active_stratum
    if stratum == "M0":
        partner = _antipodal_partner(m, p, t)
        assert abs(q.q0) < 1e-8
        assert abs(partner.p3 + p.p3) < 1e-12
        assert projective_gap(exp_map(m, partner, t), q) < 1e-9
    else:
        # rotational collapse: the whole rotated circle of momenta arrives
        assert stratum == "M12"
        assert math.hypot(q.q1, q.q2) < 1e-8
        rot = SymmetryElement.rotation(rnd.uniform(0.5, 5.0))
        partner, _ = apply_symmetry_preimage(m, rot, p, t)
        assert gap(exp_map(m, partner, t), q) < 1e-9


@pytest.mark.parametrize("seed", range(15))
def test_sl2_maxwell_coincidence(seed):
    rnd = random.Random(73 + seed)
    m = metric_from_eta(rnd.uniform(-2.5, -1.1))
    p = covector_from_pbar3(m, rnd.uniform(1.02, 10.0), rnd.uniform(0, 6),
                            CausalType.TIME_LIKE)
    t = cut_time(m, p, GroupTag.SL2)
    q = exp_map(m, p, t)
    if describe_cut(m, p, GroupTag.SL2).active_stratum == "M3":
        partner = _mirror_partner(m, p, t)
        assert abs(q.q3) < 1e-8
        assert gap(exp_map(m, partner, t), q) < 1e-9


# --- injectivity radius ---------------------------------------------------------


INJRAD_FROZEN = [
    (-2.5, 2.565099660323728),
    (-2.0, 3.141592653589793),
    (-1.8, 3.4731613586981043),
    (-1.6, 3.847649490485592),
    (-1.443, 4.1819778811861665),
    (-1.2, 2.80992589241629),
]


@pytest.mark.parametrize("eta,want", INJRAD_FROZEN)
def test_injectivity_radius_frozen_values(eta, want):
    assert abs(injectivity_radius(metric_from_eta(eta)) - want) < 1e-12


def test_injectivity_radius_scales_with_sqrt_i1():
    r1 = injectivity_radius(metric_from_eta(-1.7, 1.0))
    r9 = injectivity_radius(metric_from_eta(-1.7, 9.0))
    assert abs(r9 - 3.0 * r1) < 1e-12


def test_injectivity_radius_continuity_at_junctions():
    from hypgeo import ETA_INJ_SPLIT

    for junction in (-2.0, ETA_INJ_SPLIT):
        lo = injectivity_radius(metric_from_eta(junction - 1e-11))
        hi = injectivity_radius(metric_from_eta(junction + 1e-11))
        assert abs(lo - hi) < 1e-9


def test_injectivity_radius_is_a_lower_bound_for_cut_times():
    rnd = random.Random(2718)
    for eta in (-2.5, -1.8, -1.443, -1.2):
        m = metric_from_eta(eta)
        radius = injectivity_radius(m)
        for _ in range(40):
            p = random_covector(rnd, m)
            assert cut_time(m, p, GroupTag.PSL2) >= radius * (1.0 - 1e-9)


# --- cut locus sampling ---------------------------------------------------------


def test_locus_strata_by_regime():
    def names(eta, group):
        return [s.stratum for s in cut_locus_sample(metric_from_eta(eta), group, 4)]

    assert names(-1.25, GroupTag.PSL2) == ["Z", "R_eta", "ConjugateCircle"]
    assert names(-1.25, GroupTag.SL2) == ["H", "T_eta", "ConjugateCircle"]
    assert names(-1.6, GroupTag.PSL2) == ["Z"]
    assert names(-1.6, GroupTag.SL2) == ["H", "T_eta", "ConjugateCircle"]
    assert names(-2.4, GroupTag.PSL2) == ["Z"]
    assert names(-2.4, GroupTag.SL2) == ["H"]


def test_locus_rejects_tiny_grid():
    with pytest.raises(ValueError):
        cut_locus_sample(M, GroupTag.PSL2, 1)


@pytest.mark.parametrize("group", list(GroupTag))
def test_plane_stratum_extent_and_witnesses(group):
    n = 5
    strata = cut_locus_sample(M, group, n, rho_max=2.0)
    plane = strata[0]
    assert len(plane.points) == n * n
    assert plane.validation_error < 1e-8
    # every emitted point is genuinely reached at its witness's cut time
    for pt, (p, t) in list(zip(plane.points, plane.parameters))[:: n + 1]:
        assert abs(t - cut_time(M, p, group)) < 1e-9 * t
        got = exp_map(M, p, t)
        if group is GroupTag.PSL2:
            assert projective_gap(got, pt.rep) < 1e-9
            assert abs(pt.rep.q0) < 1e-8
        else:
            assert gap(got, pt) < 1e-9
            assert abs(pt.q3) < 1e-8
            assert pt.q0 <= -1.0 + 1e-12


def test_rotation_stratum_angles_fill_the_band():
    strata = cut_locus_sample(M, GroupTag.PSL2, 8)
    reta = strata[1]
    assert reta.stratum == "R_eta"
    phi_left = -2.0 * math.pi * (1.0 + M.eta)
    for pt in reta.points:
        q = pt.rep
        assert math.hypot(q.q1, q.q2) < 1e-10
        phi = 2.0 * math.atan2(q.q3, q.q0)
        assert phi_left < phi <= math.pi + 1e-12
    assert reta.validation_error < 1e-9


def test_axis_stratum_parameters():
    strata = cut_locus_sample(M, GroupTag.SL2, 8)
    teta = strata[1]
    assert teta.stratum == "T_eta"
    for q, (p, t) in zip(teta.points, teta.parameters):
        assert math.hypot(q.q1, q.q2) < 1e-10
        # witnesses are pole-side momenta cut exactly at tau = pi
        assert abs(t - first_conjugate_time(M, p)) < 1e-12 * t
        assert 1.0 < p.pbar3 <= M.pbar3_threshold_sl2() + 1e-12


def test_conjugate_circles_have_two_points():
    for group in GroupTag:
        circle = cut_locus_sample(M, group, 4)[2]
        assert circle.stratum == "ConjugateCircle"
        assert len(circle.points) == 2
        assert circle.validation_error < 1e-9


# --- wavefront -------------------------------------------------------------------


def test_wavefront_grid_shape_and_flags():
    # injectivity radius here is pi, so 3.5 splits the front in two
    t = 3.5
    n = 10
    front = wavefront_sample(M, t, n, GroupTag.PSL2)
    assert len(front) == n * n
    for w in front:
        want = t < cut_time(M, w.covector, GroupTag.PSL2)
        assert w.optimal == want
        assert gap(w.point, exp_map(M, w.covector, t)) == 0.0
    # both optimal and non-optimal points appear at this time
    flags = {w.optimal for w in front}
    assert flags == {True, False}


def test_wavefront_rows_concatenate():
    t, n = 1.5, 9
    whole = wavefront_sample(M, t, n, GroupTag.SL2)
    rows = [wavefront_row(M, t, n, i, GroupTag.SL2) for i in range(n)]
    flat = [w for row in rows for w in row]
    assert len(whole) == len(flat)
    for a, b in zip(whole, flat):
        assert a.covector.components() == b.covector.components()
        assert a.point.components() == b.point.components()
        assert a.optimal == b.optimal


def test_wavefront_validates_arguments():
    with pytest.raises(ValueError):
        wavefront_sample(M, 0.0, 16)
    with pytest.raises(ValueError):
        wavefront_sample(M, 1.0, 4)


# --- riemannian logarithm ----------------------------------------------------------


@pytest.mark.parametrize("seed", range(40))
def test_log_inverts_exp_inside_cut_domain(seed):
    rnd = random.Random(640_000 + seed)
    m = metric_from_eta(rnd.uniform(-2.6, -1.1))
    p = random_covector(rnd, m)
    # near the space-like equator the cut time grows without bound while
    # the endpoint leaves the representable range; cap the metric ball
    # (light-like endpoints only grow linearly, no cap needed there)
    cap = cut_time(m, p, GroupTag.PSL2)
    if p.ctype is not CausalType.LIGHT_LIKE:
        cap = min(cap, 16.0 * m.i1 / p.norm)
    t = rnd.uniform(0.05, 0.93) * cap
    got_p, got_t = riemannian_log(m, exp_map(m, p, t))
    assert abs(got_t - t) < 1e-9 * max(1.0, t)
    assert max(abs(a - b) for a, b in zip(got_p.components(), p.components())) < 1e-8


def test_log_of_identity_raises():
    with pytest.raises(IdentityTarget):
        riemannian_log(M, SplitQuaternion(1.0, 0.0, 0.0, 0.0))


def test_log_on_reflection_plane_raises():
    p = covector_from_pbar3(M, 7.0, 0.4, CausalType.TIME_LIKE)
    t = cut_time(M, p, GroupTag.PSL2)
    target = exp_map(M, p, t)
    assert abs(target.q0) < 1e-9
    with pytest.raises(OnCutLocus):
        riemannian_log(M, target)


def test_log_of_axis_rotations():
    # below the cut band the pole geodesic is recovered in closed form
    band = -2.0 * math.pi * (1.0 + M.eta)
    phi = 0.45 * band
    target = SplitQuaternion(math.cos(phi / 2), 0.0, 0.0, math.sin(phi / 2))
    p, t = riemannian_log(M, target)
    assert gap(exp_map(M, p, t), target) < 1e-10
    # inside the band the rotation is a cut point
    phi_cut = 1.01 * band
    on_cut = SplitQuaternion(math.cos(phi_cut / 2), 0.0, 0.0, math.sin(phi_cut / 2))
    with pytest.raises(OnCutLocus):
        riemannian_log(M, on_cut)


def test_log_returns_minimizer_for_past_cut_targets():
    # a target generated past the cut time must come back with a shorter arc
    p = covector_from_pbar3(M, 7.0, 0.4, CausalType.TIME_LIKE)
    t_cut = cut_time(M, p, GroupTag.PSL2)
    t_past = 1.06 * t_cut
    target = exp_map(M, p, t_past)
    got_p, got_t = riemannian_log(M, target)
    assert got_t < t_past
    assert projective_gap(exp_map(M, got_p, got_t), target) < 1e-8
    assert got_t <= cut_time(M, got_p, GroupTag.PSL2) * (1.0 + 1e-9)


def test_log_accepts_canonicalized_elements():
    p = covector_from_pbar3(M, 2.0, 1.0, CausalType.TIME_LIKE)
    q = exp_map(M, p, 0.9)
    for target in (q, -q, psl2_canonicalize(q)):
        got_p, got_t = riemannian_log(M, target)
        assert abs(got_t - 0.9) < 1e-9
