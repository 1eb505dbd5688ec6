import math

import numpy as np
import pytest

from qhyp.errors import GramSchmidtError, NotSemisimpleError
from qhyp.linalg import (
    HermitianSpace,
    HMatrix,
    HVector,
    PointType,
    char_poly_real_coeffs,
    complex_embed,
    corner_form,
    gram_schmidt_indefinite,
    orthonormal_form_basis,
    right_eigen,
)
from qhyp.quaternion import Quaternion

I, J, K = Quaternion.i(), Quaternion.j(), Quaternion.k()
ONE = Quaternion.one()
Q0 = Quaternion()


def qv(*entries):
    return HVector.from_quaternions([q if isinstance(q, Quaternion) else Quaternion.real(q)
                                     for q in entries])


def random_hmatrix(rng, N, scale=1.0):
    grid = [[Quaternion.from_seq(rng.uniform(-scale, scale, 4)) for _ in range(N)]
            for _ in range(N)]
    return HMatrix.from_quaternions(grid)


def random_hvector(rng, N, scale=1.0):
    return HVector.from_quaternions(
        [Quaternion.from_seq(rng.uniform(-scale, scale, 4)) for _ in range(N)])


# -- embedding -------------------------------------------------------------

def test_embed_scalars():
    # 1x1 matrix [j] embeds to [[0, -1], [1, 0]]
    M = HMatrix.from_quaternions([[J]])
    np.testing.assert_allclose(M.emb, np.array([[0, -1], [1, 0]], dtype=complex))
    Mi = HMatrix.from_quaternions([[I]])
    np.testing.assert_allclose(Mi.emb, np.diag([1j, -1j]))


def test_embed_identity():
    n = 2
    M = HMatrix.identity(n + 1)
    np.testing.assert_allclose(complex_embed(M), np.eye(2 * (n + 1)))


def test_embed_multiplicative():
    rng = np.random.default_rng(10)
    for _ in range(20):
        A = random_hmatrix(rng, 3)
        B = random_hmatrix(rng, 3)
        lhs = complex_embed(A @ B)
        rhs = complex_embed(A) @ complex_embed(B)
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_embed_star_and_grid_roundtrip():
    rng = np.random.default_rng(11)
    A = random_hmatrix(rng, 3)
    grid = A.to_grid()
    again = HMatrix.from_quaternions(grid)
    assert np.max(np.abs(A.emb - again.emb)) < 1e-14
    # star is entrywise conjugate transpose
    S = A.star().to_grid()
    for r in range(3):
        for c in range(3):
            assert S[r][c].approx_eq(grid[c][r].conj(), 1e-14)


def test_matrix_vector_action_matches_entries():
    rng = np.random.default_rng(12)
    A = random_hmatrix(rng, 3)
    v = random_hvector(rng, 3)
    image = A.apply(v).entries()
    grid = A.to_grid()
    ve = v.entries()
    for r in range(3):
        direct = Quaternion()
        for c in range(3):
            direct = direct + grid[r][c] * ve[c]
        assert image[r].approx_eq(direct, 1e-12)


def test_right_scalar_action():
    rng = np.random.default_rng(13)
    v = random_hvector(rng, 3)
    q = Quaternion.from_seq(rng.uniform(-1, 1, 4))
    scaled = v.times(q).entries()
    for ve, se in zip(v.entries(), scaled):
        assert se.approx_eq(ve * q, 1e-12)
    assert v.times_j().entry(0).approx_eq(v.entry(0) * J, 1e-12)


# -- Hermitian form ---------------------------------------------------------

def test_corner_form_n1_values():
    sp = HermitianSpace(1)
    o = qv(0, 1)
    inf = qv(1, 0)
    assert sp.herm(o, inf).approx_eq(ONE, 1e-14)
    assert sp.herm(o, o).approx_eq(Q0, 1e-14)
    w = qv(-1 / math.sqrt(2), 1 / math.sqrt(2))
    assert sp.herm(w, w).approx_eq(Quaternion.real(-1), 1e-14)


def test_herm_symmetry_and_sesquilinearity():
    rng = np.random.default_rng(14)
    sp = HermitianSpace(2)
    for _ in range(50):
        z = random_hvector(rng, 3)
        w = random_hvector(rng, 3)
        a = Quaternion.from_seq(rng.uniform(-1, 1, 4))
        b = Quaternion.from_seq(rng.uniform(-1, 1, 4))
        assert sp.herm(z, w).approx_eq(sp.herm(w, z).conj(), 1e-12)
        lhs = sp.herm(z.times(a), w.times(b))
        rhs = b.conj() * sp.herm(z, w) * a
        assert lhs.approx_eq(rhs, 1e-11)


def test_classify_vector():
    sp = HermitianSpace(1)
    assert sp.classify_vector(qv(0, 1)) == PointType.NULL
    assert sp.classify_vector(qv(-1, 1)) == PointType.NEGATIVE
    sp2 = HermitianSpace(2)
    assert sp2.classify_vector(qv(0, 1, 0)) == PointType.POSITIVE
    with pytest.raises(ValueError):
        sp.classify_vector(qv(0, 0))


# -- membership -------------------------------------------------------------

def diag_member(entries):
    return HMatrix.diag_complex(entries)


def test_membership_examples():
    sp = HermitianSpace(1)
    assert sp.is_member(HMatrix.identity(2))
    assert sp.is_member(diag_member([2.0, 0.5]))
    assert not sp.is_member(diag_member([2.0, 1.0]))


def test_form_invariance_under_members():
    rng = np.random.default_rng(15)
    sp = HermitianSpace(2)
    A = diag_member([2.0, complex(math.cos(1.0), math.sin(1.0)), 0.5])
    assert sp.is_member(A)
    for _ in range(50):
        z = random_hvector(rng, 3)
        w = random_hvector(rng, 3)
        assert sp.herm(A.apply(z), A.apply(w)).approx_eq(sp.herm(z, w), 1e-9)


# -- characteristic polynomial ----------------------------------------------

def test_char_poly_identity():
    coeffs = char_poly_real_coeffs(HMatrix.identity(2))
    np.testing.assert_allclose(coeffs, [-4, 6, -4], atol=1e-12)


def test_char_poly_hyperbolic_diag():
    # roots {2, 2, 1/2, 1/2}: expand (x-2)^2 (x-1/2)^2
    coeffs = char_poly_real_coeffs(diag_member([2.0, 0.5]))
    np.testing.assert_allclose(coeffs, [-5.0, 8.25, -5.0], atol=1e-12)


def test_char_poly_unit_diag():
    # diag(i, i) is the unit-eigenvalue member; embedding roots {i,-i,i,-i}
    coeffs = char_poly_real_coeffs(diag_member([1j, 1j]))
    np.testing.assert_allclose(coeffs, [0.0, 2.0, 0.0], atol=1e-12)


def test_char_poly_palindromic_on_random_members():
    rng = np.random.default_rng(16)
    sp = HermitianSpace(1)
    A = diag_member([1.5, 1 / 1.5])
    # conjugating by a member keeps the coefficients real and palindromic
    C = _random_member(sp, rng)
    M = C @ A @ C.inverse()
    coeffs = char_poly_real_coeffs(M, tol=1e-8)
    np.testing.assert_allclose(coeffs, coeffs[::-1], atol=1e-8)


def _random_member(space, rng, cond_max=200.0):
    # small wrapper used before the sampling module exists
    from qhyp.linalg import gram_schmidt_indefinite
    N = space.dim
    for _ in range(50):
        vecs = [random_hvector(rng, N) for _ in range(N)]
        signs = [0] + [1] * (N - 2) + [0]
        try:
            frame = gram_schmidt_indefinite(space, vecs, signs)
        except GramSchmidtError:
            continue
        C = HMatrix.from_columns(frame)
        if C.cond() < cond_max and space.is_member(C, 1e-8):
            return C
    raise RuntimeError("could not sample a member")


# -- right eigendecomposition -----------------------------------------------

def test_right_eigen_diag_hyperbolic():
    sp = HermitianSpace(1)
    data = right_eigen(diag_member([2.0, 0.5]), sp)
    assert len(data.classes) == 2
    mods = sorted(c.modulus for c in data.classes)
    assert mods == pytest.approx([0.5, 2.0])
    for c in data.classes:
        assert c.kind == PointType.NULL
        assert c.multiplicity == 1


def test_right_eigen_eigen_equation_residual():
    rng = np.random.default_rng(17)
    sp = HermitianSpace(1)
    E = diag_member([2 * np.exp(1j * np.pi / 3), 0.5 * np.exp(1j * np.pi / 3)])
    C = _random_member(sp, rng)
    A = C @ E @ C.inverse()
    data = right_eigen(A, sp)
    mods = sorted(c.modulus for c in data.classes)
    assert mods == pytest.approx([0.5, 2.0], rel=1e-8)
    for c in data.classes:
        assert abs(c.angle - np.pi / 3) < 1e-8
        for x in c.vectors:
            resid = (A.apply(x) - x.times(complex(c.rep))).norm()
            assert resid < 1e-8 * A.norm() * x.norm()


def test_right_eigen_scalar_covariance():
    # if x is a rep-eigenvector then x*mu is a (mu^-1 rep mu)-eigenvector
    rng = np.random.default_rng(18)
    sp = HermitianSpace(1)
    A = diag_member([2 * np.exp(1j * 0.7), 0.5 * np.exp(1j * 0.7)])
    data = right_eigen(A, sp)
    x = data.classes[0].vectors[0]
    rep = data.classes[0].rep
    mu = Quaternion.from_seq(rng.normal(size=4)).unit()
    lam = Quaternion.from_complex_pair(rep, 0)
    y = x.times(mu)
    target = y.times(mu.inverse() * lam * mu)
    assert (A.apply(y) - target).norm() < 1e-9


def test_right_eigen_rejects_defective():
    sp = HermitianSpace(1)
    # Heisenberg translation: [[1, t], [0, 1]] with t pure imaginary
    t = Quaternion(0, 1.0, 0.5, 0)
    A = HMatrix.from_quaternions([[ONE, t], [Q0, ONE]])
    assert sp.is_member(A, 1e-12)
    with pytest.raises(NotSemisimpleError):
        right_eigen(A, sp)


def test_right_eigen_elliptic_types():
    sp = HermitianSpace(1)
    # frame with column Gram diag(-1, 1) transports the ball form
    C = HMatrix.from_quaternions([[Quaternion.real(-1 / math.sqrt(2)), Quaternion.real(1 / math.sqrt(2))],
                                  [Quaternion.real(1 / math.sqrt(2)), Quaternion.real(1 / math.sqrt(2))]])
    E = diag_member([np.exp(1j * 0.9), np.exp(1j * 0.3)])
    A = C @ E @ C.inverse()
    assert sp.is_member(A, 1e-10)
    data = right_eigen(A, sp)
    kinds = sorted(c.kind.value for c in data.classes)
    assert kinds == ["negative", "positive"]
    neg = [c for c in data.classes if c.kind == PointType.NEGATIVE][0]
    assert abs(neg.angle - 0.9) < 1e-9


def test_right_eigen_multiplicity_two():
    sp = HermitianSpace(2)
    # elliptic with a doubled positive class, via a frame whose column Gram
    # is diag(-1, 1, 1)
    s = 1 / math.sqrt(2)
    C = HMatrix.from_columns([qv(-s, 0, s), qv(0, 1, 0), qv(s, 0, s)])
    E = diag_member([np.exp(1j * 0.4), np.exp(1j * 1.1), np.exp(1j * 1.1)])
    A = C @ E @ C.inverse()
    assert sp.is_member(A, 1e-10)
    data = right_eigen(A, sp)
    mults = sorted((c.multiplicity, c.kind.value) for c in data.classes)
    assert mults == [(1, "negative"), (2, "positive")]
    pos = [c for c in data.classes if c.kind == PointType.POSITIVE][0]
    assert len(pos.vectors) == 2
    # basis is form-orthonormal within the eigenspace
    assert sp.herm(pos.vectors[0], pos.vectors[1]).norm() < 1e-9
    for x in pos.vectors:
        assert sp.herm(x, x).approx_eq(ONE, 1e-9)
        assert (A.apply(x) - x.times(complex(pos.rep))).norm() < 1e-8


# -- indefinite Gram-Schmidt --------------------------------------------------

def test_gs_standard_basis_passthrough():
    sp = HermitianSpace(2)
    basis = [qv(1, 0, 0), qv(0, 1, 0), qv(0, 0, 1)]
    out = gram_schmidt_indefinite(sp, [basis[1]], [1])
    assert sp.herm(out[0], out[0]).approx_eq(ONE, 1e-12)


def test_gs_null_pair_from_pm():
    sp = HermitianSpace(1)
    vecs = [qv(1, 1), qv(1, -1)]
    out = gram_schmidt_indefinite(sp, vecs, [0, 0])
    a, r = out
    assert sp.herm(a, a).norm() < 1e-10
    assert sp.herm(r, r).norm() < 1e-10
    assert sp.herm(a, r).approx_eq(ONE, 1e-10)


def test_gs_postconditions_random():
    rng = np.random.default_rng(20)
    sp = HermitianSpace(2)
    for _ in range(30):
        vecs = [random_hvector(rng, 3) for _ in range(3)]
        try:
            out = gram_schmidt_indefinite(sp, vecs, [0, 0, 1])
        except GramSchmidtError:
            continue
        a, r, x = out
        assert sp.herm(a, a).norm() < 1e-9
        assert sp.herm(r, r).norm() < 1e-9
        assert sp.herm(a, r).approx_eq(ONE, 1e-9)
        assert sp.herm(x, x).approx_eq(ONE, 1e-9)
        assert sp.herm(x, a).norm() < 1e-9
        assert sp.herm(x, r).norm() < 1e-9


def test_gs_unattainable_sign():
    sp = HermitianSpace(1)
    # the span of a single positive vector cannot produce a negative one
    with pytest.raises(GramSchmidtError):
        gram_schmidt_indefinite(sp, [qv(1, 1)], [-1])


def test_orthonormal_form_basis_signature():
    rng = np.random.default_rng(21)
    sp = HermitianSpace(2)
    vecs = [random_hvector(rng, 3) for _ in range(3)]
    basis, signs = orthonormal_form_basis(sp, vecs)
    assert sorted(signs) == [-1, 1, 1]
    for i, (u, su) in enumerate(zip(basis, signs)):
        assert sp.herm(u, u).approx_eq(Quaternion.real(su), 1e-9)
        for v, _ in list(zip(basis, signs))[:i]:
            assert sp.herm(u, v).norm() < 1e-9
