"""Group membership, classification, real trace, and single-element conjugacy.

An isometry here is a validated matrix A with A* H A = H, carrying its
eigen-decomposition, classification, and real trace as eagerly computed
caches.  Parabolic elements (defective over the quaternions) are detected
and refused by everything downstream of detection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import (
    InvalidSpecError,
    NotSemisimpleError,
    NumericalError,
    UnsupportedElementError,
)
from .linalg import (
    EigenClass,
    EigenData,
    HermitianSpace,
    HMatrix,
    HVector,
    PointType,
    char_poly_real_coeffs,
    gram_schmidt_indefinite,
    matrix_rank,
    orthonormal_form_basis,
    right_eigen,
)
from .quaternion import DEFAULT_TOL, Quaternion


class Classification(Enum):
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"


def is_member(A: HMatrix, space: HermitianSpace, tol: float = DEFAULT_TOL) -> bool:
    """Test A* H A = H up to tol * ||A||^2."""
    return space.is_member(A, tol)


class Isometry:
    """A member of the isometry group with cached spectral data.

    Immutable after construction; the eigen-decomposition, classification
    and real trace are computed eagerly.  ``eigen`` is ``None`` exactly for
    parabolic elements, which downstream operations refuse.
    """

    def __init__(self, matrix: HMatrix, space: HermitianSpace,
                 tol: float = DEFAULT_TOL):
        if matrix.dim != space.dim:
            raise InvalidSpecError("matrix size does not match the space")
        if not space.is_member(matrix, tol):
            raise InvalidSpecError(
                f"matrix is not in the isometry group "
                f"(residual {space.member_residual(matrix):.3e})")
        self.matrix = matrix
        self.space = space
        self.eigen: Optional[EigenData] = None
        try:
            self.eigen = right_eigen(matrix, space, tol)
            self.classification = _classify_from_eigen(self.eigen)
        except NotSemisimpleError:
            self.classification = Classification.PARABOLIC
        if self.classification is Classification.PARABOLIC:
            self._real_trace = None
        else:
            coeffs = char_poly_real_coeffs(matrix, max(tol, 1e-9))
            self._real_trace = coeffs[:space.n].copy()

    @property
    def n(self) -> int:
        return self.space.n

    def is_semisimple(self) -> bool:
        return self.classification is not Classification.PARABOLIC

    def real_trace(self) -> np.ndarray:
        if self._real_trace is None:
            raise UnsupportedElementError("real trace is not used for parabolic elements")
        return self._real_trace.copy()

    def classes(self) -> list[EigenClass]:
        if self.eigen is None:
            raise UnsupportedElementError("parabolic element has no class data")
        return self.eigen.classes

    def __repr__(self) -> str:
        return f"Isometry(n={self.n}, {self.classification.value})"


def _classify_from_eigen(eigen: EigenData) -> Classification:
    moduli = [c.modulus for c in eigen.classes]
    if max(moduli) > 1.0 + 1e-8:
        nulls = [c for c in eigen.classes if c.kind == PointType.NULL]
        if len(nulls) != 2:
            raise NumericalError("expanding spectrum without a null fixed pair")
        return Classification.HYPERBOLIC
    if not any(c.kind == PointType.NEGATIVE for c in eigen.classes):
        raise NumericalError("unit spectrum without a negative eigenvector")
    return Classification.ELLIPTIC


def classify(A: Isometry) -> Classification:
    return A.classification


def real_trace(A: Isometry) -> np.ndarray:
    return A.real_trace()


# ---------------------------------------------------------------------------
# Single-element conjugacy (eigenvalue-class comparison)
# ---------------------------------------------------------------------------

def _class_multisets_match(a: Sequence[EigenClass], b: Sequence[EigenClass],
                           tol: float) -> bool:
    """Greedy tolerance matching; a sorted zip would misalign near-ties."""
    if len(a) != len(b):
        return False
    used = [False] * len(b)
    for ca in a:
        hit = None
        for idx, cb in enumerate(b):
            if used[idx] or cb.multiplicity != ca.multiplicity:
                continue
            scale = max(1.0, ca.modulus, cb.modulus)
            if (abs(ca.modulus - cb.modulus) <= tol * scale
                    and abs(ca.angle - cb.angle) <= tol):
                hit = idx
                break
        if hit is None:
            return False
        used[hit] = True
    return True


def conjugate_single(A: Isometry, B: Isometry, tol: float = 1e-7) -> bool:
    """Decide conjugacy of two semisimple elements from their eigenvalue classes.

    Hyperbolic elements need equal similarity-class multisets; elliptic
    elements additionally need the same negative class.  Elements of
    different classification are never conjugate.
    """
    if not A.is_semisimple() or not B.is_semisimple():
        raise UnsupportedElementError("conjugacy test supports semisimple elements only")
    if A.classification is not B.classification:
        return False
    if not _class_multisets_match(A.classes(), B.classes(), tol):
        return False
    if A.classification is Classification.ELLIPTIC:
        neg_a = [c for c in A.classes() if c.kind == PointType.NEGATIVE]
        neg_b = [c for c in B.classes() if c.kind == PointType.NEGATIVE]
        if len(neg_a) != 1 or len(neg_b) != 1:
            raise NumericalError("elliptic element without a unique negative class")
        a, b = neg_a[0], neg_b[0]
        if abs(a.modulus - b.modulus) > tol or abs(a.angle - b.angle) > tol:
            return False
    return True


# ---------------------------------------------------------------------------
# Equality by invariants
# ---------------------------------------------------------------------------

def _stacked_with_j(vectors: Sequence[HVector]) -> np.ndarray:
    cols = []
    for v in vectors:
        tc = v.two_column()
        cols.append(tc[:, 0])
        cols.append(tc[:, 1])
    return np.stack(cols, axis=1)


def quaternionic_spans_equal(v1: Sequence[HVector], v2: Sequence[HVector],
                             tol: float = 1e-8) -> bool:
    """True when the right quaternionic spans coincide."""
    B1, B2 = _stacked_with_j(v1), _stacked_with_j(v2)
    r1 = matrix_rank(B1, tol)
    r2 = matrix_rank(B2, tol)
    return r1 == r2 == matrix_rank(np.concatenate([B1, B2], axis=1), tol)


def complex_spans_equal(v1: Sequence[HVector], v2: Sequence[HVector],
                        tol: float = 1e-8) -> bool:
    """True when the complex spans of the stacked vectors coincide."""
    B1 = np.stack([v.s for v in v1], axis=1)
    B2 = np.stack([v.s for v in v2], axis=1)
    r1 = matrix_rank(B1, tol)
    r2 = matrix_rank(B2, tol)
    return r1 == r2 == matrix_rank(np.concatenate([B1, B2], axis=1), tol)


def equal_by_invariants(A: Isometry, B: Isometry, tol: float = 1e-7) -> bool:
    """Decide A == B from real trace, projective fixed sets, and eigensets.

    For each nonreal class the pinned eigenset (a point on the class
    Grassmannian) must agree as a complex subspace, which also pins the
    projective fixed set; real classes are compared by quaternionic span.
    """
    if not A.is_semisimple() or not B.is_semisimple():
        raise UnsupportedElementError("equality test supports semisimple elements only")
    ta, tb = A.real_trace(), B.real_trace()
    if not np.allclose(ta, tb, atol=tol * max(1.0, float(np.max(np.abs(ta))))):
        return False
    if len(A.classes()) != len(B.classes()):
        return False
    used = [False] * len(B.classes())
    for ca in A.classes():
        match = None
        for idx, cb in enumerate(B.classes()):
            if used[idx] or cb.multiplicity != ca.multiplicity:
                continue
            scale = max(1.0, ca.modulus)
            if (abs(ca.modulus - cb.modulus) <= tol * scale
                    and abs(ca.angle - cb.angle) <= tol):
                match = idx
                break
        if match is None:
            return False
        used[match] = True
        cb = B.classes()[match]
        if ca.is_real():
            if not quaternionic_spans_equal(ca.vectors, cb.vectors, tol):
                return False
        else:
            if not complex_spans_equal(ca.vectors, cb.vectors, tol):
                return False
    return True


# ---------------------------------------------------------------------------
# Seeded generation of semisimple elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HyperbolicSpec:
    """Normal-form data: boosting modulus r > 1 with angle theta, plus the
    unit-circle angles of the positive classes (multiplicity by repetition)."""

    r: float
    theta: float
    unit_angles: tuple[float, ...] = ()

    def validate(self, n: int) -> None:
        if not self.r > 1.0:
            raise InvalidSpecError("hyperbolic spec needs r > 1")
        if not 0.0 <= self.theta <= math.pi:
            raise InvalidSpecError("theta must lie in [0, pi]")
        if len(self.unit_angles) != n - 1:
            raise InvalidSpecError(f"need {n - 1} unit angles for n={n}")


@dataclass(frozen=True)
class EllipticSpec:
    """Unit-circle angles; the first entry is the negative-type class."""

    angles: tuple[float, ...]

    def validate(self, n: int) -> None:
        if len(self.angles) != n + 1:
            raise InvalidSpecError(f"need {n + 1} angles for n={n}")
        for t in self.angles:
            if not 0.0 <= t <= math.pi:
                raise InvalidSpecError("angles must lie in [0, pi]")


def _random_hvector(space: HermitianSpace, rng: np.random.Generator) -> HVector:
    return HVector.from_quaternions(
        [Quaternion.from_seq(rng.uniform(-1.0, 1.0, 4)) for _ in range(space.dim)])


def random_frame(space: HermitianSpace, rng: np.random.Generator,
                 elliptic: bool = False, cond_max: float = 1e6,
                 max_tries: int = 200) -> HMatrix:
    """Seeded pseudo-random frame: column Gram is the corner form (hyperbolic
    ordering a, x_1..x_{n-1}, r) or diag(-1, 1, ..., 1) when ``elliptic``.

    Draws are rejected while the frame is near-degenerate.
    """
    from .errors import GramSchmidtError

    N = space.dim
    for _ in range(max_tries):
        vecs = [_random_hvector(space, rng) for _ in range(N)]
        try:
            basis, signs = orthonormal_form_basis(space, vecs)
        except (GramSchmidtError, NumericalError):
            continue
        if signs[0] != -1:
            continue
        neg = basis[0]
        pos = basis[1:]
        if elliptic:
            cols = [neg] + pos
        else:
            inv_sqrt2 = 1.0 / math.sqrt(2.0)
            a = (pos[-1] + neg).times(inv_sqrt2)
            r = (pos[-1] - neg).times(inv_sqrt2)
            cols = [a] + pos[:-1] + [r]
        C = HMatrix.from_columns(cols)
        if C.cond() <= cond_max:
            return C
    raise NumericalError("could not draw a well-conditioned frame")


def random_member(space: HermitianSpace, rng: np.random.Generator,
                  cond_max: float = 100.0) -> HMatrix:
    """Seeded pseudo-random element of the isometry group."""
    C = random_frame(space, rng, elliptic=False, cond_max=cond_max)
    return space.project_to_group(C)


def random_semisimple(kind: Classification, n: int,
                      eigen_spec: "HyperbolicSpec | EllipticSpec",
                      seed: int, space: Optional[HermitianSpace] = None,
                      cond_max: float = 1e6) -> Isometry:
    """Generate C E C^-1 with E the diagonal normal form and C a seeded frame.

    Membership and classification are verified before returning.
    """
    space = space or HermitianSpace(n)
    rng = np.random.default_rng(seed)
    if kind is Classification.HYPERBOLIC:
        if not isinstance(eigen_spec, HyperbolicSpec):
            raise InvalidSpecError("hyperbolic kind needs a HyperbolicSpec")
        eigen_spec.validate(n)
        entries = ([eigen_spec.r * np.exp(1j * eigen_spec.theta)]
                   + [np.exp(1j * t) for t in eigen_spec.unit_angles]
                   + [np.exp(1j * eigen_spec.theta) / eigen_spec.r])
        C = random_frame(space, rng, elliptic=False, cond_max=cond_max)
    elif kind is Classification.ELLIPTIC:
        if not isinstance(eigen_spec, EllipticSpec):
            raise InvalidSpecError("elliptic kind needs an EllipticSpec")
        eigen_spec.validate(n)
        entries = [np.exp(1j * t) for t in eigen_spec.angles]
        C = random_frame(space, rng, elliptic=True, cond_max=cond_max)
    else:
        raise InvalidSpecError("kind must be hyperbolic or elliptic")

    E = HMatrix.diag_complex(entries)
    A = C @ E @ C.inverse()
    A = space.project_to_group(A)
    out = Isometry(A, space, tol=1e-7)
    if out.classification is not kind:
        raise NumericalError(
            f"generated element classified as {out.classification.value}, "
            f"expected {kind.value}")
    return out
