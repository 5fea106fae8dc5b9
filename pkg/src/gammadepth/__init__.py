"""Graded commutative algebra over GF(p): Groebner bases for submodules of
free modules, minimal free resolutions, and the gamma-regularity calculus."""

from .ring import (
    DEFAULT_PRIME,
    LinearChange,
    LinearForm,
    Polynomial,
    PolynomialSyntaxError,
    Ring,
    parse_polynomial,
)
from .modules import (
    FreeElement,
    FreeModule,
    PresentedModule,
    Submodule,
    colon_by_linear,
    colon_by_maximal,
    kernel_of_map,
    minimal_generators,
    quotient_dims,
    saturate,
    submodule_from_polys,
)

from .resolution import BettiTable, betti_table, poincare, regularity, resolve
from .gamma import (
    GammaCertificate,
    DepthWitness,
    alpha,
    beta1,
    cd_invariant,
    delta_invariant,
    gamma_depth,
    gamma_m_dims,
    is_componentwise_linear,
    is_gamma_regular,
    is_gamma_sequence,
    is_hat_gamma_regular,
    reduce_mod_linear,
    socle_dims,
    splitting_audit,
    truncate_ge,
    verify_main_theorem,
)
from .twovar import (
    CwlDecomposition,
    beta_formula_check,
    build_cwl_ideal,
    decompose_cwl_ideal,
)

__version__ = "0.1.0"
