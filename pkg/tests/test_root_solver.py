"""First-root machinery: scans, brackets, poles, degeneracies."""

import math
import random

import pytest

from helpers import bisect
from hypgeo import (
    CausalType,
    DegenerateFunction,
    DegenerateIdenticallyZero,
    NoRootFound,
    NotTimeLike,
    UndefinedAtEquator,
    conjugate_roots,
    covector_from_pbar3,
    exp_map,
    find_first_positive_root,
    light_covector,
    make_metric,
    maxwell_root_q0,
    maxwell_root_q3,
    metric_from_eta,
)

M = make_metric(1.0, 4.0)


# --- generic scanner ---------------------------------------------------------


def test_finds_first_root_of_shifted_cosine():
    root = find_first_positive_root(math.cos, 0.05, 1e-12, 10.0)
    assert abs(root - math.pi / 2) < 1e-10


def test_does_not_skip_early_roots():
    # two roots close together near 1.0; the first must win
    f = lambda x: (x - 1.0) * (x - 1.05) * (x - 9.0)
    root = find_first_positive_root(f, 0.01, 1e-12, 20.0)
    assert abs(root - 1.0) < 1e-10


def test_reports_no_root_on_positive_function():
    with pytest.raises(NoRootFound):
        find_first_positive_root(lambda x: 1.0 + x * x, 0.1, 1e-12, 5.0)


def test_reports_degenerate_function():
    with pytest.raises(DegenerateFunction):
        find_first_positive_root(lambda x: 0.0, 0.1, 1e-12, 5.0)


def test_root_touching_zero_from_one_side_is_found():
    f = lambda x: (x - 2.0) ** 2 - 1e-30
    root = find_first_positive_root(f, 0.05, 1e-13, 5.0)
    assert abs(root - 2.0) < 1e-5


# --- first zeros of q0 and q3 ------------------------------------------------


def _tau_of(m, p, t):
    return t * p.norm / (2.0 * m.i1)


@pytest.mark.parametrize("pbar3", [1.3, 1.7, 2.5, 8.0, 40.0])
def test_time_like_q0_root_kills_q0(pbar3):
    p = covector_from_pbar3(M, pbar3, 0.45, CausalType.TIME_LIKE)
    t0 = maxwell_root_q0(M, p)
    assert abs(exp_map(M, p, t0).q0) < 1e-9
    # first root: strictly positive q0 before it
    for frac in (0.15, 0.5, 0.85):
        assert exp_map(M, p, frac * t0).q0 > 0.0


@pytest.mark.parametrize("pbar3", [1.3, 1.7, 2.5, 8.0])
def test_time_like_q3_root_kills_q3(pbar3):
    p = covector_from_pbar3(M, pbar3, 0.45, CausalType.TIME_LIKE)
    t3 = maxwell_root_q3(M, p)
    assert abs(exp_map(M, p, t3).q3) < 1e-9


@pytest.mark.parametrize("seed", range(50))
def test_q0_root_precedes_q3_root(seed):
    rnd = random.Random(1234 + seed)
    m = metric_from_eta(rnd.uniform(-2.6, -1.1))
    kind = rnd.choice([CausalType.TIME_LIKE, CausalType.SPACE_LIKE, None])
    if kind is CausalType.TIME_LIKE:
        p = covector_from_pbar3(m, rnd.uniform(1.05, 20.0), rnd.uniform(0, 6), kind)
    elif kind is CausalType.SPACE_LIKE:
        p = covector_from_pbar3(m, rnd.uniform(0.05, 0.95), rnd.uniform(0, 6), kind)
    else:
        p = light_covector(m, rnd.uniform(0, 6))
    assert maxwell_root_q0(m, p) < maxwell_root_q3(m, p)


def test_pole_roots_are_closed_form():
    # pbar3 = +-1: tau0 = -pi/(2(1+eta)), tau3 = -pi/(1+eta)
    for sign in (1.0, -1.0):
        p = covector_from_pbar3(M, sign, 0.2, CausalType.TIME_LIKE)
        t0 = maxwell_root_q0(M, p)
        t3 = maxwell_root_q3(M, p)
        assert abs(_tau_of(M, p, t0) - (-math.pi / (2.0 * (1.0 + M.eta)))) < 1e-12
        assert abs(_tau_of(M, p, t3) - (-math.pi / (1.0 + M.eta))) < 1e-12


@pytest.mark.parametrize("seed", range(40))
def test_space_like_q0_bracket(seed):
    # stated window: tau0 in (-pi/(2 eta b), -pi/(eta b))
    rnd = random.Random(86 + seed)
    m = metric_from_eta(rnd.uniform(-2.6, -1.1))
    b = 10.0 ** rnd.uniform(-2.0, 1.2)
    p = covector_from_pbar3(m, b, rnd.uniform(0, 6), CausalType.SPACE_LIKE)
    tau0 = _tau_of(m, p, maxwell_root_q0(m, p))
    assert -math.pi / (2.0 * m.eta * b) < tau0 < -math.pi / (m.eta * b)


@pytest.mark.parametrize("seed", range(40))
def test_light_like_root_brackets(seed):
    # in u = -eta * tau_p units: q0 root in (pi/2, pi), q3 root in (pi, 3pi/2)
    rnd = random.Random(99 + seed)
    m = metric_from_eta(rnd.uniform(-2.6, -1.1))
    p = light_covector(m, rnd.uniform(0, 6), 1 if rnd.random() < 0.5 else -1)
    scale = abs(p.p3) / (2.0 * m.i1) * (-m.eta)
    u0 = scale * maxwell_root_q0(m, p)
    u3 = scale * maxwell_root_q3(m, p)
    assert math.pi / 2 < u0 < math.pi
    assert math.pi < u3 < 1.5 * math.pi


def test_space_like_equator_degeneracies():
    p = covector_from_pbar3(M, 0.0, 0.3, CausalType.SPACE_LIKE)
    with pytest.raises(UndefinedAtEquator):
        maxwell_root_q0(M, p)
    with pytest.raises(DegenerateIdenticallyZero):
        maxwell_root_q3(M, p)


def test_light_roots_match_independent_bisection():
    # frozen: first zero of q0 along the light geodesic at eta = -1.25
    p = light_covector(M, 0.0)
    t0 = maxwell_root_q0(M, p)
    assert abs(t0 - 4.846586135977827) < 1e-9

    # cross-check with a fresh bisection of the closed form
    p3 = p.p3

    def q0(t):
        a = t * M.eta * p3 / (2.0 * M.i1)
        return math.cos(a) - (t / (2.0 * M.i1)) * p3 * math.sin(a)

    assert abs(q0(t0)) < 1e-12
    lo, hi = 0.9 * t0, 1.1 * t0
    assert abs(bisect(q0, lo, hi) - t0) < 1e-9


# --- conjugate roots ----------------------------------------------------------


def test_conjugate_roots_reject_non_time_like():
    with pytest.raises(NotTimeLike):
        conjugate_roots(M, 0.5, 2)


def test_conjugate_roots_at_pole_collapse_to_pi_grid():
    taus = conjugate_roots(M, 1.0, 3)
    assert len(taus) == 6
    for k in (1, 2, 3):
        assert abs(taus[2 * k - 2] - k * math.pi) < 1e-12
        assert abs(taus[2 * k - 1] - k * math.pi) < 1e-12


def test_conjugate_roots_frozen_values():
    # sigma = -eta (1 - b^2)/(1 + eta b^2) = 0.9375 at b = 2, eta = -1.25
    taus = conjugate_roots(M, 2.0, 2)
    assert abs(taus[0] - math.pi) < 1e-12
    assert abs(taus[1] - 4.478574060171509) < 1e-9
    assert abs(taus[2] - 2.0 * math.pi) < 1e-12
    assert abs(taus[3] - 7.716622347102412) < 1e-9


@pytest.mark.parametrize("seed", range(40))
def test_conjugate_root_windows(seed):
    rnd = random.Random(17 + seed)
    m = metric_from_eta(rnd.uniform(-2.6, -1.1))
    b = rnd.uniform(1.001, 15.0)
    k_max = rnd.randint(1, 4)
    taus = conjugate_roots(m, b, k_max)
    assert len(taus) == 2 * k_max
    assert taus == sorted(taus)
    # the tangent-equation roots interlace the pi grid inside half windows
    sigma = -m.eta * (1.0 - b * b) / (1.0 + m.eta * b * b)
    assert 0.0 <= sigma < 1.0
    grid = [v for k in range(1, k_max + 1) for v in (k * math.pi,)]
    extras = [tau for tau in taus if min(abs(tau - g) for g in grid) > 1e-9]
    for tau in extras:
        k = int(tau / math.pi)
        assert k * math.pi < tau < k * math.pi + math.pi / 2
        assert abs(math.tan(tau) - sigma * tau) < 1e-6 * (1.0 + tau)
