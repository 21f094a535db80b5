"""The four exceptional HR families: compact constructors, partners, norms.

Each family is labelled by (j0, l0, n) with j0 the seed type, l0 the seed
degree and n the classical index.  Degree sequences have gaps: the degree is
n + l0 - 1 for type 1 and n + l0 + 1 for type 4, so these families are not
graded bases of all polynomials, which is what makes their recurrence
relations nontrivial.

Constructors use the compact product forms; the Darboux route in `darboux`
provides an independent construction that the test suite cross-checks term by
term.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .darboux import SeedType, make_seed
from .exact_core import Poly
from .hr_classical import (
    ParameterPoleError,
    Params,
    hr_poly_robust,
    norm_ratio,
    pochhammer,
)

__all__ = [
    "InadmissibleIndexError",
    "XIndex",
    "XPoly",
    "WeightFactor",
    "x_poly",
    "x_partner",
    "x_norm_ratio",
    "xp4_derivative_factor",
    "x_weight_factor",
    "darboux_route_poly",
    "compact_darboux_sign",
]


class InadmissibleIndexError(ValueError):
    """The (j0, l0, n) label lies outside the family's index set."""


@dataclass(frozen=True)
class XIndex:
    """Label of one exceptional polynomial."""

    j0: SeedType
    l0: int
    n: int

    def __init__(self, j0, l0: int, n: int):  # noqa: D107
        object.__setattr__(self, "j0", SeedType(j0))
        object.__setattr__(self, "l0", int(l0))
        object.__setattr__(self, "n", int(n))
        if self.l0 < 1:
            raise ValueError("l0 must be a positive integer")

    @property
    def is_admissible(self) -> bool:
        """Membership in the family's index set.

        Type 1 excludes n = l0 (the member degenerates to zero); types 2 and 3
        admit all n >= 0; type 4 additionally admits the added state n = -l0-1.
        """
        if self.j0 is SeedType.T1:
            return self.n >= 0 and self.n != self.l0
        if self.j0 is SeedType.T4:
            return self.n >= 0 or self.n == -self.l0 - 1
        return self.n >= 0

    def require_admissible(self) -> "XIndex":
        if not self.is_admissible:
            raise InadmissibleIndexError(
                f"index (j0={int(self.j0)}, l0={self.l0}, n={self.n}) is not admissible"
            )
        return self

    @property
    def degree(self) -> int:
        """n + l0 - [j0=1] + [j0=4]."""
        return (
            self.n
            + self.l0
            - (1 if self.j0 is SeedType.T1 else 0)
            + (1 if self.j0 is SeedType.T4 else 0)
        )


@dataclass(frozen=True)
class XPoly:
    """An exceptional polynomial together with its label and declared degree."""

    index: XIndex
    poly: Poly
    declared_degree: int

    def __post_init__(self):
        if self.poly.degree != self.declared_degree:
            raise AssertionError(
                f"degree mismatch for {self.index}: "
                f"declared {self.declared_degree}, actual {self.poly.degree}"
            )


def _compact_form(j0: SeedType, l0: int, n: int, params: Params) -> Poly:
    """Compact product form; may legitimately evaluate to zero at n = l0, type 1."""
    a, b = params.alpha, params.beta
    p_n = hr_poly_robust(n, params)
    p_n1 = hr_poly_robust(n - 1, params.shifted(1, 0)) if n >= 1 else Poly.zero()
    if j0 is SeedType.T1:
        return n * hr_poly_robust(l0, params) * p_n1 - l0 * hr_poly_robust(
            l0 - 1, params.shifted(1, 0)
        ) * p_n
    if j0 is SeedType.T2:
        return Poly((1, -1)) * (n * hr_poly_robust(l0, params.negated()) * p_n1) + (
            l0 - a - b
        ) * hr_poly_robust(l0, Params(-b, -a - 1)) * p_n
    if j0 is SeedType.T3:
        den = pochhammer(a + 1, l0)
        if den == 0:
            raise ParameterPoleError(f"(alpha+1)_{l0} = 0")
        pref = pochhammer(b, l0) / den
        inner = Poly.x() * (n * hr_poly_robust(l0, Params(b - 1, a + 1)) * p_n1) + (
            a + 1
        ) * hr_poly_robust(l0, Params(b - 1, a + 2)) * p_n
        return pref * inner
    den = pochhammer(-b + 1, l0)
    if den == 0:
        raise ParameterPoleError(f"(1-beta)_{l0} = 0")
    pref = pochhammer(-a, l0) / den
    inner = Poly((0, -1, 1)) * (
        n * hr_poly_robust(l0, Params(-a - 1, -b + 1)) * p_n1
    ) + (a + 1) * hr_poly_robust(l0 + 1, Params(-a - 2, -b + 1)) * p_n
    return pref * inner


def x_poly(idx: XIndex, params: Params) -> XPoly:
    """Exceptional polynomial from the compact form, with degree check.

    The added state of type 4 (n = -l0-1) is admissible as an index but is a
    Laurent object, not a polynomial; it is handled only by the backward
    operator's kernel and refused here.
    """
    idx.require_admissible()
    if idx.n < 0:
        raise InadmissibleIndexError(
            "the added state n = -l0-1 is not a polynomial; "
            "only the backward-operator kernel handles it"
        )
    poly = _compact_form(idx.j0, idx.l0, idx.n, params)
    return XPoly(idx, poly, idx.degree)


def x_partner(idx: XIndex, params: Params) -> XPoly:
    """Biorthogonal partner: the same constructor at (beta-1, alpha+1)."""
    return x_poly(idx, Params(params.beta - 1, params.alpha + 1))


def compact_darboux_sign(j0: SeedType) -> int:
    """Sign relating the compact form to the raw transformed eigenfunction.

    The compact products equal the transformed eigenfunction (times z^l0 for
    types 3 and 4) up to a type-dependent sign: +1 for types 1 and 2, -1 for
    types 3 and 4.  The minus trace back to the -z factor in the type-3/4
    gauges; the type-4 derivative factorisation and the backward-image law
    each pin one side, which fixes the signs empirically.
    """
    return -1 if SeedType(j0) in (SeedType.T3, SeedType.T4) else 1


def darboux_route_poly(idx: XIndex, params: Params) -> Poly:
    """z^l0-normalised transformed eigenfunction as a true polynomial.

    Independent of the compact-form constructor; equals
    compact_darboux_sign(j0) * x_poly(idx).poly, which the tests assert.
    """
    from .darboux import psi_hat  # local import avoids a module cycle

    idx.require_admissible()
    if idx.n < 0:
        raise InadmissibleIndexError("the added state is not a polynomial")
    ph = psi_hat(idx.j0, idx.l0, idx.n, params)
    if idx.j0 in (SeedType.T3, SeedType.T4):
        ph = ph.shifted(idx.l0)
    return ph.to_poly()


def _norm_prefactor(idx: XIndex, params: Params) -> Fraction:
    n, l0 = idx.n, idx.l0
    b = params.beta
    if idx.j0 is SeedType.T1:
        return -(n + b) * (n - l0)
    if idx.j0 is SeedType.T2:
        return -(n + b) * (n - l0 + params.alpha + b)
    if idx.j0 is SeedType.T3:
        return -(n + b) * (n + l0 + 1 + params.alpha + b)
    return -(n + b) * Fraction(n + l0 + 1)


def x_norm_ratio(idx: XIndex, params: Params) -> Fraction:
    """Diagonal norm of the family in units of the classical zeroth norm.

    Equals the classical norm ratio times a quadratic prefactor in n; the
    prefactor also equals (theta_seed - n)(n + beta), which the tests assert.
    """
    idx.require_admissible()
    if idx.n < 0:
        raise InadmissibleIndexError("norms are defined for n >= 0 members")
    return _norm_prefactor(idx, params) * norm_ratio(idx.n, params)


def xp4_derivative_factor(l0: int, n: int, params: Params) -> bool:
    """Common-factor law for type-4 derivatives.

    (P^(4,l0,n))' = (n+l0+1)(n+alpha+1) * [z^l0 p_l0] * P_n(z; alpha+1, beta-1)
    where z^l0 p_l0 is the rescaled seed polynomial.  Exact coefficientwise
    comparison.
    """
    idx = XIndex(SeedType.T4, l0, n)
    lhs = x_poly(idx, params).poly.derivative()
    seed = make_seed(SeedType.T4, l0, params)
    rhs = (
        Fraction((n + l0 + 1) * 1)
        * (n + params.alpha + 1)
        * seed.p_poly
        * hr_poly_robust(n, params.shifted(1, -1))
    )
    return (lhs - rhs).is_zero


@dataclass(frozen=True)
class WeightFactor:
    """Structured form of (exceptional weight)/(classical weight).

    ratio(z) = constant_ratio * z^monomial_power * linear / base(z)^2 where
    linear is (z-1) when linear_power = +1 and 1/(1-z) when linear_power = -1.
    Stored structurally so the exact modules never evaluate a weight; only the
    quadrature module turns this into numbers.
    """

    constant_ratio: Fraction
    monomial_power: int
    linear_base: str  # "z-1" or "1-z"
    linear_power: int  # +1 or -1
    denominator_base: Poly  # the degree-l0 polynomial that gets squared
    base: str = "classical-weight"

    def ratio_at(self, z):
        """Evaluate the ratio at a point (exact for Fraction, numeric otherwise)."""
        den = self.denominator_base(z)
        lin = (z - 1) if self.linear_base == "z-1" else (1 - z)
        if self.linear_power == 1:
            return self.constant_ratio * z**self.monomial_power * lin / (den * den)
        return self.constant_ratio * z**self.monomial_power / (lin * den * den)


def x_weight_factor(j0: SeedType, l0: int, params: Params) -> WeightFactor:
    """Structured exceptional-to-classical weight ratio for (j0, l0)."""
    j0 = SeedType(j0)
    a, b = params.alpha, params.beta
    if j0 is SeedType.T1:
        den = pochhammer(a + 1, l0)
        if den == 0:
            raise ParameterPoleError(f"(alpha+1)_{l0} = 0")
        return WeightFactor(
            pochhammer(b, l0) / den, l0, "z-1", 1, hr_poly_robust(l0, params)
        )
    if j0 is SeedType.T2:
        den = pochhammer(-b + 1, l0)
        if den == 0:
            raise ParameterPoleError(f"(1-beta)_{l0} = 0")
        return WeightFactor(
            pochhammer(-a, l0) / den,
            l0 + 1,
            "1-z",
            -1,
            hr_poly_robust(l0, params.negated()),
        )
    if j0 is SeedType.T3:
        den = pochhammer(b, l0)
        if den == 0:
            raise ParameterPoleError(f"(beta)_{l0} = 0")
        return WeightFactor(
            pochhammer(a + 1, l0) / den,
            l0,
            "z-1",
            1,
            hr_poly_robust(l0, Params(b - 1, a + 1)),
        )
    den = pochhammer(-a, l0)
    if den == 0:
        raise ParameterPoleError(f"(-alpha)_{l0} = 0")
    return WeightFactor(
        pochhammer(-b + 1, l0) / den,
        l0 + 1,
        "1-z",
        -1,
        hr_poly_robust(l0, Params(-a - 1, -b + 1)),
    )
