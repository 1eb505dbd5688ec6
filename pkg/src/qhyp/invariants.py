"""Numerical invariants of point configurations on the closed ball.

Cross ratios, the angular invariant, distance invariants, and rotation
invariants, assembled into the full classifying profile of an ordered
configuration.  Quaternion-valued invariants are defined only up to one
simultaneous unit-quaternion conjugation; real-valued ones are absolute.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from .errors import DegenerateConfigurationError, InvalidSpecError
from .linalg import HermitianSpace, HVector, PointType
from .quaternion import DEFAULT_TOL, Quaternion, SimilarityClass

if TYPE_CHECKING:  # pragma: no cover
    from .gram import PointConfig, SemiNormalizedGram

#: below this, the imaginary part of a Gram entry counts as zero (relative)
ROTATION_ZERO_RTOL = 1e-9
#: angular invariants below this many radians count as zero
ANGLE_ZERO_TOL = 1e-9


@dataclass(frozen=True)
class ProjPoint:
    """A projective point with a chosen lift and its sign type."""

    lift: HVector
    kind: PointType

    @staticmethod
    def from_lift(space: HermitianSpace, lift: HVector,
                  tol: float = DEFAULT_TOL) -> "ProjPoint":
        return ProjPoint(lift, space.classify_vector(lift, tol))

    def rescaled(self, q: Quaternion) -> "ProjPoint":
        return ProjPoint(self.lift.times(q), self.kind)


def projectively_equal(p: ProjPoint, q: ProjPoint, tol: float = 1e-8) -> bool:
    """Rank test on the two quaternionic lines."""
    from .isometry import quaternionic_spans_equal

    return quaternionic_spans_equal([p.lift], [q.lift], tol)


# ---------------------------------------------------------------------------
# Cross ratios
# ---------------------------------------------------------------------------

def _pairing(space: HermitianSpace, a: ProjPoint, b: ProjPoint,
             tol: float) -> Quaternion:
    h = space.herm(a.lift, b.lift)
    scale = max(a.lift.norm() * b.lift.norm(), 1e-300)
    if h.norm() <= tol * scale:
        raise DegenerateConfigurationError("vanishing pairing in a cross-ratio factor")
    return h


def cross_ratio(space: HermitianSpace, z1: ProjPoint, z2: ProjPoint,
                z3: ProjPoint, z4: ProjPoint, tol: float = DEFAULT_TOL) -> Quaternion:
    """Quaternionic four-point ratio <z3,z1> <z3,z2>^-1 <z4,z2> <z4,z1>^-1.

    The value depends on the chosen lifts, but its similarity class
    (real part and modulus) does not.
    """
    a = _pairing(space, z3, z1, tol)
    b = _pairing(space, z3, z2, tol)
    c = _pairing(space, z4, z2, tol)
    d = _pairing(space, z4, z1, tol)
    return a * b.inverse() * c * d.inverse()


def cross_ratio_class(space: HermitianSpace, z1: ProjPoint, z2: ProjPoint,
                      z3: ProjPoint, z4: ProjPoint,
                      tol: float = DEFAULT_TOL) -> SimilarityClass:
    return SimilarityClass.from_quaternion(cross_ratio(space, z1, z2, z3, z4, tol))


def cross_ratio_triple(space: HermitianSpace, z1: ProjPoint, z2: ProjPoint,
                       z3: ProjPoint, z4: ProjPoint, tol: float = DEFAULT_TOL,
                       check_relations: Optional[bool] = None
                       ) -> tuple[Quaternion, Quaternion, Quaternion]:
    """The three symmetric-group orbit representatives of the cross ratio.

    For quadruples of null points the moduli satisfy |X2| = |X1| |X3|; this
    is asserted unless ``check_relations`` disables it.
    """
    x1 = cross_ratio(space, z1, z2, z3, z4, tol)
    x2 = cross_ratio(space, z1, z4, z3, z2, tol)
    x3 = cross_ratio(space, z2, z4, z3, z1, tol)
    all_null = all(p.kind == PointType.NULL for p in (z1, z2, z3, z4))
    if check_relations is None:
        check_relations = all_null
    if check_relations:
        lhs = x2.norm()
        rhs = x1.norm() * x3.norm()
        if abs(lhs - rhs) > 1e-8 * max(1.0, lhs, rhs):
            raise DegenerateConfigurationError(
                f"modulus relation |X2| = |X1||X3| violated ({lhs:.3e} vs {rhs:.3e})")
        slack = boundary_quadruple_slack(x1, x2, x3)
        if slack < -1e-8:
            raise DegenerateConfigurationError(
                f"boundary quadruple relation violated (slack {slack:.3e})")
    return x1, x2, x3


def boundary_quadruple_slack(x1: Quaternion, x2: Quaternion, x3: Quaternion) -> float:
    """2|X3|^2 Re(X1) - (|X2|^2 + |X3|^2 - 2 Re(X2) - 2 Re(X3) + 1).

    Nonnegative for every quadruple of null points, with equality exactly
    when the quadruple spans at most two quaternionic dimensions (so always
    at rank two or below; the positive slack measures the genuinely
    higher-rank part of the configuration).
    """
    return (2.0 * x3.norm_sq() * x1.re
            - (x2.norm_sq() + x3.norm_sq() - 2.0 * x2.re - 2.0 * x3.re + 1.0))


# ---------------------------------------------------------------------------
# Angular and distance invariants
# ---------------------------------------------------------------------------

def hermitian_triple(space: HermitianSpace, z1: ProjPoint, z2: ProjPoint,
                     z3: ProjPoint) -> Quaternion:
    """<z1,z2> <z2,z3> <z3,z1>."""
    a = space.herm(z1.lift, z2.lift)
    b = space.herm(z2.lift, z3.lift)
    c = space.herm(z3.lift, z1.lift)
    return a * b * c


def angular_invariant(space: HermitianSpace, z1: ProjPoint, z2: ProjPoint,
                      z3: ProjPoint, tol: float = DEFAULT_TOL) -> float:
    """arccos of Re(-T)/|T| for the Hermitian triple product T; lies in [0, pi/2]."""
    t = hermitian_triple(space, z1, z2, z3)
    tn = t.norm()
    scale = (z1.lift.norm() * z2.lift.norm() * z3.lift.norm()) ** 2
    if tn <= tol * max(scale, 1e-300):
        raise DegenerateConfigurationError("vanishing Hermitian triple product")
    val = float(np.clip(-t.re / tn, -1.0, 1.0))
    angle = math.acos(val)
    if angle > math.pi / 2 + 1e-9:
        raise DegenerateConfigurationError(
            f"angular invariant {angle:.6f} outside [0, pi/2]; "
            "input is not a configuration on the closed ball")
    return min(angle, math.pi / 2)


def distance_invariant(space: HermitianSpace, p: ProjPoint, q: ProjPoint,
                       tol: float = DEFAULT_TOL) -> float:
    """(<q,p><p,q>) / (<q,q><p,p>) for two negative points; real and >= 1.

    Equals cosh^2(rho/2) in the invariant metric, so it is 1 exactly at
    coincidence.
    """
    if p.kind != PointType.NEGATIVE or q.kind != PointType.NEGATIVE:
        raise InvalidSpecError("distance invariant needs two negative points")
    num = space.herm(q.lift, p.lift)
    den = space.herm(q.lift, q.lift).re * space.herm(p.lift, p.lift).re
    val = num.norm_sq() / den
    if val < 1.0 - 1e-9:
        raise DegenerateConfigurationError("distance invariant below 1")
    return max(val, 1.0)


def rotation_invariant(g: Quaternion, tol: float = ROTATION_ZERO_RTOL) -> Quaternion:
    """Im(g)/|Im(g)|, or the zero quaternion when g is (relatively) real."""
    v = g.imag_vec()
    vn = float(np.linalg.norm(v))
    if vn <= tol * max(1.0, g.norm()):
        return Quaternion()
    return Quaternion.from_vector(0.0, v / vn)


# ---------------------------------------------------------------------------
# The classifying profile
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class XSlot:
    """One cross-ratio slot, tagged by its family and the (row, col) indices."""

    family: str  # "X1", "X2", "X3" or "Xk"
    row: int     # 1-based point index
    col: int
    value: Quaternion


@dataclass(frozen=True)
class PairSlot:
    """Distance, angular, and rotation invariant of one negative pair."""

    i1: int
    j1: int
    d: float
    a: float
    u: Quaternion


@dataclass
class InvariantProfile:
    """The full classifying tuple of an ordered configuration.

    Cross-ratio slots carry explicit index maps; negative pairs carry
    distance/angular/rotation data; ``first_row`` holds the semi-normalized
    pairings of the leading point with each negative point, which calibrate
    the absolute scale of the negative columns.
    """

    m: int
    i: int
    a23: float
    u0: Quaternion
    x_slots: list[XSlot]
    pair_slots: list[PairSlot]
    first_row: list[float]

    @property
    def d_count(self) -> int:
        return len(self.x_slots)

    @property
    def t_count(self) -> int:
        return sum(1 for s in self.pair_slots if not s.u.is_zero())

    @property
    def l_count(self) -> int:
        # all-negative configurations pin the first row real, so those pairs
        # contribute zero rotation invariants as well
        base = sum(1 for s in self.pair_slots if s.u.is_zero())
        return base + (len(self.first_row) if self.i == 0 else 0)

    def quaternion_slots(self) -> list[Quaternion]:
        """All conjugation-covariant entries, in a fixed order."""
        out = [self.u0]
        out.extend(s.u for s in self.pair_slots)
        out.extend(s.value for s in self.x_slots)
        return out

    @staticmethod
    def closed_form_d(m: int, i: int) -> int:
        """The stated closed-form slot count i(i-3)/2 + (m-i)^2.

        Disagrees with the slot family actually required for reconstruction
        whenever 0 < i < m and i != m - i; kept for the verification suite's
        crosscheck.
        """
        return (i * (i - 3)) // 2 + (m - i) ** 2

    @staticmethod
    def closed_form_pairs(m: int, i: int) -> int:
        """((m-i)^2 - (m-i)) / 2: the number of negative-pair slots."""
        return ((m - i) ** 2 - (m - i)) // 2

    def check_structure(self) -> None:
        if self.t_count != self.closed_form_pairs(self.m, self.i) - self.l_count:
            raise InvalidSpecError("rotation-invariant bookkeeping inconsistent")
        expected_first_row = (self.m - self.i) if self.i >= 3 else (
            self.m - 1 if self.i == 0 else 0)
        if len(self.first_row) != expected_first_row:
            raise InvalidSpecError("first-row length inconsistent with (m, i)")


def x_slot_indices(m: int, i: int) -> list[tuple[str, int, int]]:
    """Index scheme of the cross-ratio slots for a configuration shape.

    Families (with 1-based indices):
      X1: X(p2, p1, p3, pj) for j = i+1 .. m
      X2: X(p1, p2, p3, pj) for j = 4 .. m
      X3: X(p1, p3, p2, pj) for j = 4 .. m
      Xk: X(p1, pk, p2, pj) for 4 <= k <= i, k < j <= m
    All-negative configurations (i = 0) carry no cross-ratio slots.
    """
    if i == 0:
        return []
    out: list[tuple[str, int, int]] = []
    out.extend(("X1", 1, j) for j in range(i + 1, m + 1))
    out.extend(("X2", 2, j) for j in range(4, m + 1))
    out.extend(("X3", 3, j) for j in range(4, m + 1))
    for k in range(4, i + 1):
        out.extend(("Xk", k, j) for j in range(k + 1, m + 1))
    return out


def _slot_points(family: str, row: int, col: int) -> tuple[int, int, int, int]:
    """0-based point indices (z1, z2, z3, z4) of one cross-ratio slot."""
    j = col - 1
    if family == "X1":
        return (1, 0, 2, j)
    if family == "X2":
        return (0, 1, 2, j)
    if family == "X3":
        return (0, 2, 1, j)
    return (0, row - 1, 1, j)


def profile(config: "PointConfig", tol: float = DEFAULT_TOL) -> InvariantProfile:
    """Compute the classifying profile of a configuration.

    The configuration is semi-normalized first; cross-ratio slots are then
    evaluated from the defining four-point products and cross-checked
    against the Gram-entry identities.
    """
    from .gram import semi_normalize

    if config.m < 4:
        raise InvalidSpecError("profiles need at least four points")
    sng = semi_normalize(config, tol)
    prof = profile_from_gram(sng)

    # Definition route: evaluate each slot as an actual four-point product
    # on the semi-normalized lifts, and require agreement with the entry
    # formulas used everywhere else.
    points = [ProjPoint.from_lift(config.space, lift, tol) for lift in sng.lifts]
    for slot in prof.x_slots:
        idx = _slot_points(slot.family, slot.row, slot.col)
        direct = cross_ratio(config.space, *(points[t] for t in idx), tol)
        if not direct.approx_eq(slot.value, 1e-7 * max(1.0, direct.norm())):
            raise DegenerateConfigurationError(
                f"cross-ratio slot {slot.family}({slot.row},{slot.col}) "
                "disagrees with its Gram identity")
    return prof


def profile_from_gram(sng: "SemiNormalizedGram") -> InvariantProfile:
    """Profile evaluated through the semi-normalized Gram entry identities."""
    m, i = sng.m, sng.i
    g = sng.entries

    def r1(j: int) -> float:  # 1-based column
        if i >= 3:
            return 1.0 if j <= i else g[0][j - 1].re
        return g[0][j - 1].re if j >= 2 else 1.0

    if i >= 3:
        g23 = g[1][2]
        a23 = math.acos(float(np.clip(-g23.re / g23.norm(), -1, 1)))
        u0 = rotation_invariant(g23)
        first_row = [g[0][j - 1].re for j in range(i + 1, m + 1)]
    else:
        g23 = g[1][2]
        a23 = math.acos(float(np.clip(-g23.re / g23.norm(), -1, 1)))
        u0 = rotation_invariant(g23)
        first_row = [g[0][j - 1].re for j in range(2, m + 1)]

    x_slots: list[XSlot] = []
    for family, row, col in x_slot_indices(m, i):
        k, j = row, col
        if family == "X1":
            val = g23 * (r1(j) / g[1][j - 1].norm_sq()) * g[1][j - 1].conj()
        elif family == "X2":
            val = g23.conj() * g[1][j - 1] * (1.0 / r1(j))
        elif family == "X3":
            val = g23.conj().inverse() * g[2][j - 1] * (1.0 / r1(j))
        else:
            val = g[1][k - 1].conj().inverse() * g[k - 1][j - 1] * (1.0 / r1(j))
        x_slots.append(XSlot(family, row, col, val))

    pair_slots: list[PairSlot] = []
    lo = i + 1 if i >= 3 else 2
    for i1 in range(lo, m + 1):
        for j1 in range(i1 + 1, m + 1):
            entry = g[i1 - 1][j1 - 1]
            d = entry.norm_sq()
            a = math.acos(float(np.clip(-entry.re / entry.norm(), -1, 1)))
            if a <= ANGLE_ZERO_TOL:
                a = 0.0
            u = rotation_invariant(entry)
            pair_slots.append(PairSlot(i1, j1, d, a, u))

    prof = InvariantProfile(m, i, a23, u0, x_slots, pair_slots, first_row)
    prof.check_structure()
    return prof
