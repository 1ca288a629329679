"""Exact computations with polynomial endomorphisms of Q[x, y].

Automorphism and coordinate recognition, retracts and test polynomials,
subalgebra membership via Gröbner bases, and degree estimates for
two-generated subalgebras.
"""

from .endo import (
    IDENTITY,
    CorollaryReport,
    Endomorphism,
    apply,
    check_fixed,
    compose,
    is_injective,
    iterate,
    jacobian_det,
    pair_jacobian,
    verify_corollary_instance,
)
from .errors import (
    ConstantGenerator,
    ConstantInput,
    DegreeMismatch,
    DependentPair,
    HypothesisViolation,
    InvariantBreach,
    NonInjective,
    NotInRetract,
    OrderMismatch,
    ParseError,
    PreconditionError,
    RetractLabError,
    StepCapExceeded,
)
from .estimates import (
    DegreeEstimate,
    estimate_N,
    lemma_check,
    phi_infinity_probe,
    su_lower_bound,
    verify_lemma_instance,
)
from .groebner import (
    GroebnerBasis,
    MonomialOrder4,
    MultiPoly,
    buchberger,
    normal_form,
    spoly_reduces_to_zero,
    subalgebra_membership,
)
from .parsing import parse_polynomial, parse_univariate
from .poly import (
    NEG_INF,
    Monomial,
    MonomialOrder,
    Polynomial,
    X,
    Y,
    degree_data,
    partial_derivatives,
    ring_op,
)
from .reduction import (
    Decomposition,
    ElemOnFirst,
    ElemOnSecond,
    LinearMix,
    ReducedPair,
    elementary_reduce,
    find_mate,
    invert_automorphism,
    is_automorphism,
    is_coordinate,
    is_elementary_reduced,
)
from .retracts import (
    RetractCertificate,
    TestPolyReport,
    construct_degenerate_fixer,
    decompose_poly,
    is_retract_generator,
    is_test_polynomial,
    retract_membership,
    univariate_membership,
)
from .verdict import Verdict

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
