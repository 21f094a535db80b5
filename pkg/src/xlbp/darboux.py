"""Seed data and the backward operator for the four exceptional families.

A seed is a gauge factor times a polynomial of degree l0; four gauge classes
(types 1-4) are admissible.  For types 3 and 4 the seed polynomial naturally
lives in 1/z, so the stored `p_poly` is the z^l0-rescaled true polynomial
(obtained through the exact reversal identity), and the genuine Laurent object
is recovered by shifting the exponent down by l0.

The backward operator sends a transformed eigenfunction to a classical
polynomial with parameters shifted to (alpha+1, beta-1).  It is realised here
as a first-order differential expression followed by an exact Laurent
division; non-divisibility is a meaningful outcome (the input is then outside
the transformed family's span) and is reported with the remainder as witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction

from .exact_core import LaurentPoly, Poly
from .hr_classical import (
    ParameterPoleError,
    Params,
    hr_poly_robust,
    pochhammer,
)

__all__ = [
    "SeedType",
    "Seed",
    "BackwardResult",
    "make_seed",
    "seed_theta",
    "psi_hat",
    "backward_apply",
    "xi",
    "kernel_check",
]


class SeedType(IntEnum):
    """The four admissible gauge classes of seed eigenfunctions."""

    T1 = 1
    T2 = 2
    T3 = 3
    T4 = 4


_GAUGE_TAGS = {
    SeedType.T1: "1",
    SeedType.T2: "(1-z)^(-alpha-beta)",
    SeedType.T3: "(-z)^(-1-alpha)",
    SeedType.T4: "(-z)^(beta-1)*(1-z)^(-alpha-beta)",
}


@dataclass(frozen=True)
class Seed:
    """Full table entry for one (type, l0) seed at concrete parameters.

    `p_poly` is the seed polynomial itself for types 1 and 2; for types 3 and
    4 it is z^l0 times the (1/z)-polynomial, i.e. always a true degree-l0
    polynomial.  The gauge factor is recorded symbolically only.
    """

    j0: SeedType
    l0: int
    p_poly: Poly
    theta: Fraction
    P_factor: Poly
    Q_factor: Poly
    gauge_tag: str

    def p_laurent(self) -> LaurentPoly:
        """The seed polynomial part as it enters the operator calculus."""
        if self.j0 in (SeedType.T3, SeedType.T4):
            return self.p_poly.to_laurent().shifted(-self.l0)
        return self.p_poly.to_laurent()


def _reversal_prefactor(l0: int, params: Params) -> Fraction:
    den = pochhammer(params.alpha + 1, l0)
    if den == 0:
        raise ParameterPoleError(f"(alpha+1)_{l0} = 0 in seed reversal")
    return pochhammer(params.beta, l0) / den


def seed_theta(j0: SeedType, l0: int, params: Params) -> Fraction:
    """Seed eigenvalue: l0, l0-a-b, -l0-1-a-b, -l0-1 for types 1-4.

    Defined for every parameter pair, unlike the seed polynomial itself.
    """
    j0 = SeedType(j0)
    a, b = params.alpha, params.beta
    return {
        SeedType.T1: Fraction(l0),
        SeedType.T2: l0 - a - b,
        SeedType.T3: -l0 - 1 - a - b,
        SeedType.T4: Fraction(-l0 - 1),
    }[j0]


def make_seed(j0: SeedType, l0: int, params: Params) -> Seed:
    """Construct the seed table entry for (j0, l0) at the given parameters."""
    j0 = SeedType(j0)
    if l0 < 1:
        raise ValueError("l0 must be a positive integer")
    a, b = params.alpha, params.beta
    theta = seed_theta(j0, l0, params)
    if j0 is SeedType.T1:
        p = hr_poly_robust(l0, params)
    elif j0 is SeedType.T2:
        p = hr_poly_robust(l0, params.negated())
    elif j0 is SeedType.T3:
        # z^l0 P_l0(1/z; alpha, beta) rewritten as a plain polynomial
        p = _reversal_prefactor(l0, params) * hr_poly_robust(
            l0, Params(b - 1, a + 1)
        )
    else:
        p = _reversal_prefactor(l0, params.negated()) * hr_poly_robust(
            l0, Params(-a - 1, -b + 1)
        )
    p_factors = {
        SeedType.T1: Poly.zero(),
        SeedType.T2: Poly((a + b,)),
        SeedType.T3: Poly((1 + a,)),
        SeedType.T4: Poly((-1 + b, 1 + a)),
    }
    q_factors = {
        SeedType.T1: Poly.one(),
        SeedType.T2: Poly((1, -1)),
        SeedType.T3: Poly((0, -1)),
        SeedType.T4: Poly((0, 1, -1)),
    }
    return Seed(j0, l0, p, theta, p_factors[j0], q_factors[j0], _GAUGE_TAGS[j0])


def psi_hat(j0: SeedType, l0: int, n: int, params: Params) -> LaurentPoly:
    """Transformed eigenfunction for classical index n.

    For types 1 and 2 this is the exceptional polynomial itself; for types 3
    and 4 the exceptional polynomial is z^l0 times this value (which has a
    pole of order at most l0 at the origin).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    seed = make_seed(j0, l0, params)
    p = seed.p_laurent()
    p_n = hr_poly_robust(n, params).to_laurent()
    p_n_der = hr_poly_robust(n, params).derivative().to_laurent()
    core = p * p_n_der - p.derivative() * p_n
    return seed.Q_factor.to_laurent() * core - seed.P_factor.to_laurent() * p * p_n


@dataclass(frozen=True)
class BackwardResult:
    """Outcome of the backward operator: quotient, divisibility, remainder."""

    image: LaurentPoly
    divisible: bool
    remainder: LaurentPoly


def _first_order_coefficient(j0: SeedType, l0: int, params: Params) -> Poly:
    """The linear multiplier of p in the backward operator's numerator."""
    a, b = params.alpha, params.beta
    return {
        SeedType.T1: Poly((1 - b - l0, l0 - a - 2)),
        SeedType.T2: Poly((1 + a - l0, l0 - a - 1)),
        SeedType.T3: Poly((l0, -(l0 + a + b + 1))),
        SeedType.T4: Poly((l0, -l0)),
    }[j0]


def _divisor(seed: Seed) -> LaurentPoly:
    # Q_factor * p for every type; for type 3 this is -z * p, where the sign
    # matters for the image to land on xi_n * P_n(.; alpha+1, beta-1).
    return seed.Q_factor.to_laurent() * seed.p_laurent()


def backward_apply(j0: SeedType, l0: int, p, params: Params) -> BackwardResult:
    """Apply the backward operator to a (Laurent) polynomial.

    Forms z(1-z) p' + (type-specific linear) p and divides exactly by the
    type-specific left factor.  When the division leaves a remainder the input
    is not in the transformed family's span; the remainder is returned rather
    than raising.
    """
    j0 = SeedType(j0)
    if isinstance(p, Poly):
        p = p.to_laurent()
    if p.is_zero:
        raise ValueError("backward operator input must be nonzero")
    seed = make_seed(j0, l0, params)
    a1 = Poly((0, 1, -1)).to_laurent()  # z(1-z)
    numerator = a1 * p.derivative() + _first_order_coefficient(
        j0, l0, params
    ).to_laurent() * p
    quotient, remainder = divmod(numerator, _divisor(seed))
    return BackwardResult(quotient, remainder.is_zero, remainder)


def xi(j0: SeedType, l0: int, n: int, params: Params) -> Fraction:
    """Backward-image eigenvalue -(n - theta)(n + alpha + 1)."""
    return -(n - seed_theta(j0, l0, params)) * (n + params.alpha + 1)


_KERNEL_EXPONENTS = {
    # gauge (1-z)^c * z^d annihilated by the homogeneous backward relation
    SeedType.T1: lambda l0, a, b: (-1 - a - b, -1 + b + l0),
    SeedType.T2: lambda l0, a, b: (Fraction(0), -1 - a + l0),
    SeedType.T3: lambda l0, a, b: (-1 - a - b, Fraction(-l0)),
    SeedType.T4: lambda l0, a, b: (Fraction(0), Fraction(-l0)),
}


def kernel_check(j0: SeedType, l0: int, params: Params) -> bool:
    """Verify the listed kernel gauge function annihilates the operator.

    For gauge (1-z)^c z^d the logarithmic derivative is -c/(1-z) + d/z, so
    after clearing by z(1-z) the homogeneous relation reads
    -c z + d(1-z) + (linear coefficient) = 0 as a polynomial identity.
    """
    j0 = SeedType(j0)
    c, d = _KERNEL_EXPONENTS[j0](l0, params.alpha, params.beta)
    cleared = Poly((d, -c - d)) + _first_order_coefficient(j0, l0, params)
    return cleared.is_zero
