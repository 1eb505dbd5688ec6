"""Invariants, congruence and conjugacy deciders on quaternionic hyperbolic space.

The package decides, with explicit verified witnesses:

- congruence of ordered point configurations on the closed ball under the
  projective isometry group (``qhyp.gram.congruent``),
- conjugacy of semisimple isometries and of semisimple pairs
  (``qhyp.isometry.conjugate_single``, ``qhyp.pairs.pair_conjugate``),

and computes the classifying invariants behind those decisions: real traces,
cross ratios, angular / distance / rotation invariants, semi-normalized Gram
matrices, eigenframes, and eigenvalue-Grassmannian data.

All values are immutable and all operations pure, so everything is safe for
concurrent use.
"""

from .decision import Decision, Verdict
from .errors import (
    DegenerateConfigurationError,
    DimensionMismatchError,
    GramSchmidtError,
    InvalidSpecError,
    NotSemisimpleError,
    NumericalError,
    QhypError,
    UnsupportedElementError,
)
from .gram import (
    PointConfig,
    SemiNormalizedGram,
    congruent,
    gram_of,
    orbit_equal,
    reconstruct_gram,
    semi_normalize,
)
from .invariants import (
    InvariantProfile,
    ProjPoint,
    angular_invariant,
    cross_ratio,
    cross_ratio_triple,
    distance_invariant,
    profile,
    rotation_invariant,
)
from .isometry import (
    Classification,
    EllipticSpec,
    HyperbolicSpec,
    Isometry,
    classify,
    conjugate_single,
    equal_by_invariants,
    is_member,
    random_member,
    random_semisimple,
    real_trace,
)
from .linalg import (
    EigenClass,
    EigenData,
    HermitianSpace,
    HMatrix,
    HVector,
    PointType,
    char_poly_real_coeffs,
    complex_embed,
    gram_schmidt_indefinite,
    right_eigen,
)
from .pairs import (
    CanonicalTuple,
    EigenFrame,
    GrassmannianPoint,
    associated_points,
    canonical_tuple,
    eigenframe,
    grassmannian_equal,
    grassmannian_point,
    have_common_fixed_point,
    pair_conjugate,
    pair_frame,
)
from .quaternion import (
    DEFAULT_TOL,
    PolarForm,
    Quaternion,
    SimilarityClass,
    centralizer_contains,
    polar_decompose,
    similar,
    sp1_align,
)

__all__ = [
    "CanonicalTuple", "Classification", "Decision", "DEFAULT_TOL",
    "DegenerateConfigurationError", "DimensionMismatchError", "EigenClass",
    "EigenData", "EigenFrame", "EllipticSpec", "GramSchmidtError",
    "GrassmannianPoint", "HermitianSpace", "HMatrix", "HVector",
    "HyperbolicSpec", "InvalidSpecError", "InvariantProfile", "Isometry",
    "NotSemisimpleError", "NumericalError", "PointConfig", "PointType",
    "PolarForm", "ProjPoint", "QhypError", "Quaternion", "SemiNormalizedGram",
    "SimilarityClass", "UnsupportedElementError", "Verdict",
    "angular_invariant", "associated_points", "canonical_tuple",
    "centralizer_contains", "char_poly_real_coeffs", "classify",
    "complex_embed", "congruent", "conjugate_single", "cross_ratio",
    "cross_ratio_triple", "distance_invariant", "eigenframe",
    "equal_by_invariants", "gram_of", "gram_schmidt_indefinite",
    "grassmannian_equal", "grassmannian_point", "have_common_fixed_point",
    "is_member", "orbit_equal", "pair_conjugate", "pair_frame",
    "polar_decompose", "profile", "random_member", "random_semisimple",
    "real_trace", "reconstruct_gram", "right_eigen", "rotation_invariant",
    "semi_normalize", "similar", "sp1_align",
]

__version__ = "0.1.0"
