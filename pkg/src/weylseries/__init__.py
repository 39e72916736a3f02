"""Exact rational Poincare series of descent-defined subsets of affine Weyl groups."""

from .rootsys import (
    CartanDatum,
    CartanError,
    RootSystem,
    Vector,
    build_root_system,
    cartan_from_label,
    cartan_from_matrix,
    root_system,
)
from .weyl import (
    WeylElement,
    enumerate_group,
    identity_element,
    longest_element,
    simple_reflection,
)
from .affine import (
    AffineElement,
    AffineRoot,
    act_affine,
    affine_generators,
    affine_identity,
    ball,
    descent_test,
    descent_test_by_length,
    is_positive_affine_root,
    min_right_rep_part,
    reflection_element,
    simple_affine_roots,
    translation,
)
from .minreps import (
    ReductionCapError,
    ReflectionSet,
    canonical_generators,
    full_affine_generating_set,
    is_member,
    is_member_inequality,
    normalize,
    parse_simple_shorthand,
    reflection_set_from_json,
    seeded_reflection_sets,
    truncated_series,
)
from .genfun import (
    CountingEngineError,
    DiophantineSystem,
    LaurentPolynomial,
    RationalFunction,
    assemble_WA,
    build_system,
    count_solutions_by_degree,
    descent_polynomial,
    evaluate_descent_polynomial,
    finite_poincare_polynomial,
    m_vector,
    solve_genfun,
    translations_series,
)

__all__ = [
    "AffineElement",
    "AffineRoot",
    "CartanDatum",
    "CartanError",
    "CountingEngineError",
    "DiophantineSystem",
    "LaurentPolynomial",
    "RationalFunction",
    "ReductionCapError",
    "ReflectionSet",
    "RootSystem",
    "Vector",
    "WeylElement",
    "act_affine",
    "affine_generators",
    "affine_identity",
    "assemble_WA",
    "ball",
    "build_root_system",
    "build_system",
    "canonical_generators",
    "cartan_from_label",
    "cartan_from_matrix",
    "count_solutions_by_degree",
    "descent_polynomial",
    "descent_test",
    "descent_test_by_length",
    "enumerate_group",
    "evaluate_descent_polynomial",
    "finite_poincare_polynomial",
    "full_affine_generating_set",
    "identity_element",
    "is_member",
    "is_member_inequality",
    "is_positive_affine_root",
    "longest_element",
    "m_vector",
    "min_right_rep_part",
    "normalize",
    "parse_simple_shorthand",
    "reflection_element",
    "reflection_set_from_json",
    "root_system",
    "seeded_reflection_sets",
    "simple_affine_roots",
    "simple_reflection",
    "solve_genfun",
    "translation",
    "translations_series",
    "truncated_series",
]
