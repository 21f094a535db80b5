"""Exact Laurent biorthogonal polynomials, their exceptional extensions,
and machine certification of the associated recurrence relations.

The package is organised bottom-up:

  exact_core    rationals, dense and Laurent polynomials, exact linear solves
  hr_classical  the classical two-parameter family plus its identity catalog
  darboux       seed data and the backward operator for the four extensions
  xhr           exceptional families, partners, norms, structured weights
  recurrence    recurrence construction and exact certification
  quadrature    high-precision numeric validation on the unit circle
  cli           command-line interface (gen / verify / certify)
"""

from .exact_core import (
    LaurentPoly,
    LinearSystem,
    Poly,
    Rational,
    format_rational,
    parse_rational,
    solve_exact,
)
from .hr_classical import (
    IdentityTag,
    ParameterPoleError,
    Params,
    build_via_ttrr,
    hr_partner,
    hr_poly,
    inner_product,
    moments,
    norm_ratio,
    pochhammer,
    ttrr_coeffs,
    verify_identity,
)
from .darboux import BackwardResult, Seed, SeedType, backward_apply, kernel_check, make_seed, psi_hat, xi
from .xhr import (
    InadmissibleIndexError,
    WeightFactor,
    XIndex,
    XPoly,
    x_norm_ratio,
    x_partner,
    x_poly,
    x_weight_factor,
    xp4_derivative_factor,
)
from .recurrence import (
    CertificationError,
    CExpansion,
    RecurrenceCertificate,
    a_coeffs_formula,
    a_coeffs_solver,
    c_expansion,
    certify,
    example_oracles,
    pi_factor,
    q_poly,
)

__version__ = "0.1.0"
