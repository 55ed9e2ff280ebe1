"""Completeness of Laurent vector fields on the complex torus (C*)^n.

Decide, with replayable certificates, whether a field z_i' = z_i p_i(z) with
Laurent-polynomial coefficients is complete; extract the canonical form in
two variables; evaluate flows exactly where closed forms exist and
numerically elsewhere.
"""

from .field import (
    CompletenessCertificate,
    Form2,
    ReductionStep,
    Terminal,
    VectorField,
    Verdict,
    canonical2,
    decide_complete,
    divergence,
    exponent_lattice,
    from_form2,
    pushforward,
    reduce,
    verify_certificate,
)
from .flow import (
    ChainTooDeepError,
    ExactFlow,
    FlowResult,
    FlowStatus,
    IncompleteFieldError,
    build_exact_flow,
    check_group_law,
    check_invariant_monomial,
    eval_exact,
    integrate_numeric,
)
from .laurent import (
    GaussianRational,
    LaurentPoly,
    poly_to_text,
    substitute_monomials,
)
from .lattice import (
    GeneratorSet,
    LatticeBasis,
    NotInLattice,
    coordinates,
    hnf_basis,
    primitive_rank1_generator,
)
from .parsing import ParseError, parse_poly

__all__ = [
    "CompletenessCertificate",
    "ChainTooDeepError",
    "ExactFlow",
    "FlowResult",
    "FlowStatus",
    "Form2",
    "GaussianRational",
    "GeneratorSet",
    "IncompleteFieldError",
    "LatticeBasis",
    "LaurentPoly",
    "NotInLattice",
    "ParseError",
    "ReductionStep",
    "Terminal",
    "VectorField",
    "Verdict",
    "build_exact_flow",
    "canonical2",
    "check_group_law",
    "check_invariant_monomial",
    "coordinates",
    "decide_complete",
    "divergence",
    "eval_exact",
    "exponent_lattice",
    "from_form2",
    "hnf_basis",
    "integrate_numeric",
    "parse_poly",
    "poly_to_text",
    "primitive_rank1_generator",
    "pushforward",
    "reduce",
    "substitute_monomials",
    "verify_certificate",
]
