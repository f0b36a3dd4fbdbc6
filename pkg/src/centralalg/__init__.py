"""Finite universal algebra: congruences, central elements, direct decompositions
and Pierce-variety checks over explicit operation tables."""

from .errors import *  # noqa: F401,F403
from .terms import App, Var, parse_term, variables
from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    Signature,
    check_identity,
    direct_product,
    eval_term,
    find_isomorphism,
    homomorphisms,
    is_homomorphism,
    is_isomorphic,
    make_algebra,
    quotient,
    subalgebra,
    subalgebra_generated,
)
from .congruences import (
    FactorPair,
    Partition,
    all_congruences,
    cg,
    check_fhp_pair,
    codisjointness_check,
    compose,
    factor_pairs,
    is_congruence,
    is_factor_pair,
    join,
    kernel,
    meet,
    permute,
    pushout_quotient,
)
from .pierce import (
    CentralContext,
    CentralReport,
    PierceContext,
    central_elements,
    complement_general,
    complement_short,
    complementary_pairs_oracle,
    context_from_json,
    hom_preserves_central,
    hom_preserves_complementary,
    is_complementary_pair_equational,
    is_complementary_pair_oracle,
    theta_zero_e,
)
from .decomposition import (
    DecompositionCertificate,
    decompose,
    is_directly_indecomposable,
    is_subdirectly_irreducible,
    pierce_stalks,
)
from .varieties import (
    EvidenceReport,
    GeneratorSet,
    ShellTerms,
    Verdict,
    check_permutability,
    coextensivity_report,
    verify_discriminator,
    verify_pierce,
    verify_shell,
    verify_short,
    verify_zero_one,
)

__version__ = "0.1.0"
