import math

import numpy as np
import pytest

from qhyp.errors import DegenerateConfigurationError, InvalidSpecError
from qhyp.invariants import (
    InvariantProfile,
    ProjPoint,
    angular_invariant,
    cross_ratio,
    cross_ratio_triple,
    distance_invariant,
    profile,
    rotation_invariant,
    x_slot_indices,
)
from qhyp.isometry import random_member
from qhyp.linalg import HermitianSpace, HVector, PointType
from qhyp.quaternion import Quaternion, SimilarityClass, sp1_align
from qhyp.sampling import (
    apply_isometry,
    random_quaternion,
    sample_config,
    sample_null_lift,
)

I, J, K = Quaternion.i(), Quaternion.j(), Quaternion.k()
ONE = Quaternion.one()


def qv(*entries):
    return HVector.from_quaternions([q if isinstance(q, Quaternion) else Quaternion.real(q)
                                     for q in entries])


def pp(space, *entries):
    return ProjPoint.from_lift(space, qv(*entries))


@pytest.fixture
def sp1():
    return HermitianSpace(1)


# -- cross ratio --------------------------------------------------------------

def test_cross_ratio_standard_quadruple(sp1):
    o = pp(sp1, 0, 1)
    inf = pp(sp1, 1, 0)
    u = pp(sp1, I, 1)
    v = pp(sp1, J, 1)
    x = cross_ratio(sp1, o, inf, u, v)
    assert x.approx_eq(-K, 1e-12)


def test_cross_ratio_telescoping(sp1):
    o = pp(sp1, 0, 1)
    inf = pp(sp1, 1, 0)
    u = pp(sp1, I, 1)
    x = cross_ratio(sp1, o, inf, u, u)
    assert x.approx_eq(ONE, 1e-12)


def test_cross_ratio_class_lift_independent(sp1):
    rng = np.random.default_rng(40)
    o = pp(sp1, 0, 1)
    inf = pp(sp1, 1, 0)
    u = pp(sp1, I, 1)
    v = pp(sp1, Quaternion(0.3, 0.2, -0.5, 0.1), 1)
    base = SimilarityClass.from_quaternion(cross_ratio(sp1, o, inf, u, v))
    for _ in range(50):
        pts = [p.rescaled(random_quaternion(rng) + Quaternion.real(1.5))
               for p in (o, inf, u, v)]
        cls = SimilarityClass.from_quaternion(cross_ratio(sp1, *pts))
        assert abs(cls.modulus - base.modulus) < 1e-10 * max(1, base.modulus)
        assert abs(cls.representative.real - base.representative.real) < 1e-10


def test_cross_ratio_degenerate_pairing(sp1):
    o = pp(sp1, 0, 1)
    inf = pp(sp1, 1, 0)
    with pytest.raises(DegenerateConfigurationError):
        cross_ratio(sp1, o, inf, o, inf)


def test_cross_ratio_triple_relations():
    from qhyp.invariants import boundary_quadruple_slack

    for n, always_tight in ((2, True), (3, False)):
        sp = HermitianSpace(n)
        rng = np.random.default_rng(41)
        slacks = []
        for _ in range(50):
            pts = [ProjPoint(sample_null_lift(sp, rng), PointType.NULL) for _ in range(4)]
            x1, x2, x3 = cross_ratio_triple(sp, *pts)
            assert abs(x2.norm() - x1.norm() * x3.norm()) < 1e-8 * max(1, x2.norm())
            slack = boundary_quadruple_slack(x1, x2, x3)
            assert slack >= -1e-8
            slacks.append(slack)
        if always_tight:
            # quadruples at n <= 2 span at most two quaternionic dimensions
            assert max(slacks) < 1e-8
        else:
            assert max(slacks) > 1e-3


# -- angular invariant ----------------------------------------------------------

def test_angular_whole_line_is_right_angle(sp1):
    o = pp(sp1, 0, 1)
    inf = pp(sp1, 1, 0)
    u = pp(sp1, I, 1)
    assert angular_invariant(sp1, o, inf, u) == pytest.approx(math.pi / 2, abs=1e-12)


def test_angular_totally_real_triple():
    sp = HermitianSpace(2)
    # real coordinates only: all pairings real, invariant 0
    a = pp(sp, Quaternion.real(-0.5), 1, 1)
    b = pp(sp, Quaternion.real(-2.0), 2, 1)
    c = pp(sp, Quaternion.real(-4.5), 3, 1)
    assert angular_invariant(sp, a, b, c) < 1e-9


def test_angular_isometry_invariant():
    sp = HermitianSpace(2)
    rng = np.random.default_rng(42)
    for _ in range(20):
        pts = [ProjPoint(sample_null_lift(sp, rng), PointType.NULL) for _ in range(3)]
        a0 = angular_invariant(sp, *pts)
        C = random_member(sp, rng)
        moved = [ProjPoint(C.apply(p.lift), p.kind) for p in pts]
        assert abs(angular_invariant(sp, *moved) - a0) < 1e-9
        assert 0 <= a0 <= math.pi / 2 + 1e-12


# -- distance invariant -----------------------------------------------------------

def test_distance_invariant_cosh_identity(sp1):
    # interior points -t and -1 on the real axis: rho = log t, d = cosh^2(rho/2)
    t = 3.7
    p = ProjPoint.from_lift(sp1, qv(-1, 1))
    q = ProjPoint.from_lift(sp1, qv(-t, 1))
    d = distance_invariant(sp1, p, q)
    rho = math.log(t)
    assert d == pytest.approx(math.cosh(rho / 2) ** 2, rel=1e-12)


def test_distance_invariant_lift_independent_and_invariant():
    sp = HermitianSpace(2)
    rng = np.random.default_rng(43)
    cfg = sample_config(sp, 2, 0, rng)
    p, q = cfg.points
    d0 = distance_invariant(sp, p, q)
    assert d0 >= 1 - 1e-12
    for _ in range(20):
        lam = random_quaternion(rng) + Quaternion.real(1.5)
        assert distance_invariant(sp, p.rescaled(lam), q) == pytest.approx(d0, rel=1e-10)
        C = random_member(sp, rng)
        moved = [ProjPoint(C.apply(x.lift), x.kind) for x in (p, q)]
        assert distance_invariant(sp, *moved) == pytest.approx(d0, rel=1e-9)


def test_distance_invariant_wrong_type(sp1):
    with pytest.raises(InvalidSpecError):
        distance_invariant(sp1, pp(sp1, 0, 1), pp(sp1, -1, 1))


# -- rotation invariant -------------------------------------------------------------

def test_rotation_invariant_values():
    assert rotation_invariant(Quaternion(1, 2, 0, 0)).approx_eq(I, 1e-12)
    assert rotation_invariant(Quaternion.real(5)).is_zero()
    u = rotation_invariant(Quaternion(1, 1, 1, 1))
    assert u.approx_eq(Quaternion(0, 1, 1, 1) / math.sqrt(3), 1e-12)


# -- profile ----------------------------------------------------------------------

def test_x_slot_counts():
    assert len(x_slot_indices(4, 4)) == 2
    assert len(x_slot_indices(4, 3)) == 3
    assert len(x_slot_indices(5, 5)) == 5
    assert len(x_slot_indices(5, 0)) == 0
    assert len(x_slot_indices(6, 3)) == 9
    # the closed form agrees at i = m and at i = m - i, and disagrees otherwise
    assert InvariantProfile.closed_form_d(4, 4) == 2
    assert InvariantProfile.closed_form_d(5, 5) == 5
    assert InvariantProfile.closed_form_d(6, 3) == 9
    assert InvariantProfile.closed_form_d(4, 3) == 1  # != 3 actual slots


@pytest.mark.parametrize("m,i,n", [(4, 4, 2), (4, 3, 2), (5, 5, 3), (5, 0, 2), (6, 3, 3)])
def test_profile_structure(m, i, n):
    sp = HermitianSpace(n)
    rng = np.random.default_rng(100 + 10 * m + i)
    cfg = sample_config(sp, m, i, rng)
    prof = profile(cfg)
    assert prof.m == m and prof.i == i
    assert prof.d_count == len(x_slot_indices(m, i))
    assert prof.t_count + prof.l_count == InvariantProfile.closed_form_pairs(m, i)
    assert 0 <= prof.a23 <= math.pi / 2 + 1e-12
    for s in prof.pair_slots:
        assert s.d >= 1 - 1e-12
        assert 0 <= s.a <= math.pi / 2 + 1e-12
        assert s.u.is_zero() or abs(s.u.norm() - 1) < 1e-9
    for s in prof.x_slots:
        assert s.value.norm() > 0


def test_profile_all_real_config():
    sp = HermitianSpace(2)
    # real-coordinate negative points: all invariant quaternion slots real
    pts = [pp(sp, Quaternion.real(-1.0), 1, 1),
           pp(sp, Quaternion.real(-2.5), 2, 1),
           pp(sp, Quaternion.real(-5.0), 3, 1),
           pp(sp, Quaternion.real(-1.5), 1, 1)]
    from qhyp.gram import gram_of
    cfg = gram_of(sp, pts)
    assert cfg.i == 0
    prof = profile(cfg)
    assert prof.t_count == 0
    assert prof.u0.is_zero()


def test_profile_invariance_up_to_sp1():
    sp = HermitianSpace(2)
    rng = np.random.default_rng(44)
    cfg = sample_config(sp, 5, 3, rng)
    prof = profile(cfg)
    for _ in range(5):
        C = random_member(sp, rng)
        prof2 = profile(apply_isometry(cfg, C))
        np.testing.assert_allclose(prof2.a23, prof.a23, atol=1e-8)
        np.testing.assert_allclose(prof2.first_row, prof.first_row, atol=1e-7)
        for s1, s2 in zip(prof.pair_slots, prof2.pair_slots):
            assert s2.d == pytest.approx(s1.d, rel=1e-7)
            assert s2.a == pytest.approx(s1.a, abs=1e-7)
        mu = sp1_align(prof.quaternion_slots(), prof2.quaternion_slots(), 1e-6)
        assert mu is not None
