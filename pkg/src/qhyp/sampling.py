"""Seeded random generators for points, configurations, members, and pairs.

Everything takes an explicit ``numpy.random.Generator`` (or seed) so that
sampled objects are reproducible byte-for-byte.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .errors import DegenerateConfigurationError, NumericalError
from .gram import PointConfig, gram_of
from .invariants import ProjPoint
from .isometry import (
    Classification,
    EllipticSpec,
    HyperbolicSpec,
    Isometry,
    random_frame,
    random_member,
    random_semisimple,
)
from .linalg import HermitianSpace, HMatrix, HVector, PointType
from .quaternion import Quaternion


def random_quaternion(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    return Quaternion.from_seq(rng.uniform(-scale, scale, 4))


def random_unit_quaternion(rng: np.random.Generator) -> Quaternion:
    return Quaternion.from_seq(rng.normal(size=4)).unit()


def sample_null_lift(space: HermitianSpace, rng: np.random.Generator) -> HVector:
    """Random boundary point in the unbounded-domain chart (last coordinate 1).

    The first coordinate's real part balances the middle norms so that the
    self-pairing vanishes exactly.
    """
    n = space.n
    middle = [random_quaternion(rng) for _ in range(n - 1)]
    im = random_quaternion(rng).im()
    re = -0.5 * sum(q.norm_sq() for q in middle)
    z1 = Quaternion.real(re) + im
    return HVector.from_quaternions([z1] + middle + [Quaternion.one()])


def sample_negative_lift(space: HermitianSpace, rng: np.random.Generator,
                         depth_range: tuple[float, float] = (0.2, 2.0)) -> HVector:
    n = space.n
    middle = [random_quaternion(rng) for _ in range(n - 1)]
    im = random_quaternion(rng).im()
    depth = rng.uniform(*depth_range)
    re = -0.5 * (sum(q.norm_sq() for q in middle) + depth)
    z1 = Quaternion.real(re) + im
    return HVector.from_quaternions([z1] + middle + [Quaternion.one()])


def sample_config(space: HermitianSpace, m: int, i: int,
                  rng: np.random.Generator, max_tries: int = 50,
                  scramble_lifts: bool = False) -> PointConfig:
    """Random configuration of i null points followed by m - i negative ones."""
    if not (i == 0 or 3 <= i <= m):
        raise ValueError("null count must be 0 or at least 3")
    for _ in range(max_tries):
        pts = []
        for _ in range(i):
            pts.append(ProjPoint(sample_null_lift(space, rng), PointType.NULL))
        for _ in range(m - i):
            pts.append(ProjPoint(sample_negative_lift(space, rng), PointType.NEGATIVE))
        if scramble_lifts:
            pts = [p.rescaled(random_quaternion(rng, 1.0))
                   if rng.uniform() < 0.8 else p for p in pts]
        try:
            return gram_of(space, pts)
        except DegenerateConfigurationError:
            continue
    raise NumericalError("failed to sample a nondegenerate configuration")


def apply_isometry(config: PointConfig, C: HMatrix) -> PointConfig:
    """Image configuration under an isometry (same kinds, mapped lifts)."""
    pts = [ProjPoint(C.apply(p.lift), p.kind) for p in config.points]
    return gram_of(config.space, pts)


def random_hyperbolic_spec(n: int, rng: np.random.Generator,
                           r_range: tuple[float, float] = (1.3, 2.5)) -> HyperbolicSpec:
    r = float(rng.uniform(*r_range))
    theta = float(rng.uniform(0.1, math.pi - 0.1))
    angles = tuple(sorted(float(a) for a in rng.uniform(0.1, math.pi - 0.1, n - 1)))
    return HyperbolicSpec(r, theta, angles)


def random_elliptic_spec(n: int, rng: np.random.Generator,
                         min_gap: float = 0.15) -> EllipticSpec:
    """Angles kept pairwise separated so all classes are regular."""
    while True:
        angles = np.sort(rng.uniform(0.1, math.pi - 0.1, n + 1))
        if n == 0 or np.min(np.diff(angles)) > min_gap:
            shuffled = [float(angles[0])] + [float(a) for a in angles[1:]]
            return EllipticSpec(tuple(shuffled))


def sample_semisimple(space: HermitianSpace, rng: np.random.Generator,
                      kind: Optional[Classification] = None,
                      regular: bool = True) -> Isometry:
    """Random semisimple element with a fresh seed drawn from ``rng``."""
    n = space.n
    if kind is None:
        kind = Classification.HYPERBOLIC if rng.uniform() < 0.5 else Classification.ELLIPTIC
    seed = int(rng.integers(0, 2 ** 31 - 1))
    if kind is Classification.HYPERBOLIC:
        spec = random_hyperbolic_spec(n, rng)
    else:
        spec = random_elliptic_spec(n, rng)
    return random_semisimple(kind, n, spec, seed, space=space)


def sample_pair(space: HermitianSpace, rng: np.random.Generator,
                kinds: Optional[tuple[Classification, Classification]] = None,
                max_tries: int = 20) -> tuple[Isometry, Isometry]:
    """Semisimple pair without a common fixed point."""
    from .pairs import have_common_fixed_point

    for _ in range(max_tries):
        A = sample_semisimple(space, rng, kinds[0] if kinds else None)
        B = sample_semisimple(space, rng, kinds[1] if kinds else None)
        if not have_common_fixed_point(A, B):
            return A, B
    raise NumericalError("failed to sample a pair without common fixed points")
