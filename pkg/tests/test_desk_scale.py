"""Spot checks at the upper end of the supported scale (n = 4, m = 8)."""

import numpy as np

from qhyp.decision import Verdict
from qhyp.gram import congruent, orbit_equal, reconstruct_gram, semi_normalize
from qhyp.invariants import profile_from_gram
from qhyp.isometry import Classification, Isometry, random_member
from qhyp.linalg import HermitianSpace
from qhyp.pairs import pair_conjugate
from qhyp.sampling import apply_isometry, sample_config, sample_pair


def test_congruence_n4_m8():
    sp = HermitianSpace(4)
    rng = np.random.default_rng(90)
    cfg = sample_config(sp, 8, 4, rng)
    moved = apply_isometry(cfg, random_member(sp, rng))
    dec = congruent(cfg, moved)
    assert dec.verdict is Verdict.CONGRUENT and dec.residual < 1e-7


def test_round_trip_n4_m7():
    sp = HermitianSpace(4)
    rng = np.random.default_rng(91)
    for i in (7, 0, 4):
        cfg = sample_config(sp, 7, i, rng)
        sng = semi_normalize(cfg)
        prof = profile_from_gram(sng)
        rebuilt = reconstruct_gram(prof)
        assert orbit_equal(sng, rebuilt, 1e-7) is not None


def test_pair_decider_n4():
    sp = HermitianSpace(4)
    rng = np.random.default_rng(92)
    A, B = sample_pair(sp, rng, kinds=(Classification.HYPERBOLIC,
                                       Classification.ELLIPTIC))
    C0 = random_member(sp, rng)
    A2 = Isometry(sp.project_to_group(C0 @ A.matrix @ C0.inverse()), sp)
    B2 = Isometry(sp.project_to_group(C0 @ B.matrix @ C0.inverse()), sp)
    dec = pair_conjugate(A, B, A2, B2)
    assert dec.verdict is Verdict.CONJUGATE and dec.residual < 1e-7
