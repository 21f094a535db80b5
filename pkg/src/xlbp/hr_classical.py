"""Classical Hendriksen-van Rossum (HR) polynomials and their identity catalog.

The family P_n(z; alpha, beta) is a monic degree-n polynomial given by a
terminating hypergeometric sum; Q_n swaps the two parameters.  This module
provides two independent construction routes (hypergeometric sum and the
three-term recurrence), exact moments of the unit-circle weight normalised so
the zeroth moment is 1, exact inner products, parameter-twist expansions, and
a catalog of verifiable polynomial identities.

All identities are checked as exact polynomial (or Laurent polynomial)
equalities after clearing denominators, so a passing check is a proof at the
given parameter values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .exact_core import LaurentPoly, Poly

__all__ = [
    "ParameterPoleError",
    "Params",
    "MomentTable",
    "pochhammer",
    "hr_poly",
    "hr_partner",
    "hr_poly_robust",
    "hr_family",
    "ttrr_coeffs",
    "ttrr_d",
    "ttrr_b",
    "build_via_ttrr",
    "moments",
    "inner_product",
    "norm_ratio",
    "dk_bk_polys",
    "dk_bk_sequence",
    "twisted_coeffs",
    "expand_in_hr_basis",
    "apply_l1",
    "apply_l2",
    "IdentityTag",
    "IdentityResult",
    "verify_identity",
    "identity_catalog",
]


class ParameterPoleError(ValueError):
    """A parameter combination makes a required denominator vanish.

    The message names the offending factor, e.g. "alpha+1+k = 0 at k=3".
    """


@dataclass(frozen=True)
class Params:
    """The rational parameter pair (alpha, beta) of the HR family."""

    alpha: Fraction
    beta: Fraction

    def __init__(self, alpha, beta):  # noqa: D107 -- coerce to Fraction
        object.__setattr__(self, "alpha", Fraction(alpha))
        object.__setattr__(self, "beta", Fraction(beta))

    def shifted(self, d_alpha: int, d_beta: int) -> "Params":
        return Params(self.alpha + d_alpha, self.beta + d_beta)

    def swapped(self) -> "Params":
        """Partner parameters (beta, alpha)."""
        return Params(self.beta, self.alpha)

    def negated(self) -> "Params":
        """(-beta, -alpha), as used by the type-2 and type-4 seed data."""
        return Params(-self.beta, -self.alpha)

    def valid_up_to(self, n: int) -> bool:
        """True when alpha+1+k is nonzero for all 0 <= k <= n."""
        a = self.alpha
        return all(a + 1 + k != 0 for k in range(n + 1))

    @property
    def is_positive(self) -> bool:
        """Positivity needed by the quadrature module only."""
        return self.alpha > -1 and self.beta > -1 and self.alpha + self.beta > -1

    def __str__(self) -> str:
        return f"(alpha={self.alpha}, beta={self.beta})"


def pochhammer(x: Union[Fraction, int], n: int) -> Fraction:
    """Rising factorial x(x+1)...(x+n-1); the empty product is 1."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    out = Fraction(1)
    x = Fraction(x)
    for k in range(n):
        out *= x + k
    return out


def _require_nonzero(value: Fraction, factor: str) -> Fraction:
    if value == 0:
        raise ParameterPoleError(f"{factor} = 0")
    return value


@lru_cache(maxsize=None)
def hr_poly(n: int, params: Params) -> Poly:
    """P_n(z; alpha, beta) from the terminating hypergeometric sum.

    Coefficient of z^k is ((beta)_n/(alpha+1)_n) * ((-n)_k (alpha+1)_k)
    / ((1-beta-n)_k k!).  The result is monic of degree n.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    a, b = params.alpha, params.beta
    pref = Fraction(1)
    for k in range(n):
        pref *= (b + k) / _require_nonzero(a + 1 + k, f"alpha+1+k at k={k}")
    coeffs = [pref]
    c = pref
    for k in range(n):
        num = (-n + k) * (a + 1 + k)
        den = _require_nonzero(1 - b - n + k, f"1-beta-n+k at k={k}") * (k + 1)
        c = c * num / den
        coeffs.append(c)
    return Poly(coeffs)


def hr_partner(n: int, params: Params) -> Poly:
    """Q_n(z; alpha, beta) = P_n(z; beta, alpha), the biorthogonal partner."""
    return hr_poly(n, params.swapped())


def ttrr_d(n: int, params: Params) -> Fraction:
    """Recurrence coefficient d_n = -(n+beta)/(n+alpha+1)."""
    return -(n + params.beta) / _require_nonzero(
        n + params.alpha + 1, f"n+alpha+1 at n={n}"
    )


def ttrr_b(n: int, params: Params) -> Fraction:
    """Recurrence coefficient b_n = -n(n+alpha+beta)/((n+alpha)(n+alpha+1)).

    b_0 = 0 by the vanishing numerator, returned without touching the
    denominator (which can itself vanish at alpha = 0).
    """
    if n == 0:
        return Fraction(0)
    a = params.alpha
    den = _require_nonzero(n + a, f"n+alpha at n={n}") * _require_nonzero(
        n + a + 1, f"n+alpha+1 at n={n}"
    )
    return -n * (n + a + params.beta) / den


def ttrr_coeffs(n: int, params: Params) -> tuple:
    """(d_n, b_n) for positive n, both exact."""
    if n < 1:
        raise ValueError("recurrence coefficients are indexed from n = 1")
    return ttrr_d(n, params), ttrr_b(n, params)


@lru_cache(maxsize=None)
def build_via_ttrr(n: int, params: Params) -> Poly:
    """P_n built from P_{k+1} = z(P_k + b_k P_{k-1}) - d_k P_k.

    Independent of the hypergeometric route; the two must agree wherever both
    are defined.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return Poly.one()
    z = Poly.x()
    prev = Poly.one()
    cur = z + Poly(
        (params.beta / _require_nonzero(params.alpha + 1, "alpha+1"),)
    )
    for k in range(1, n):
        d_k, b_k = ttrr_coeffs(k, params)
        nxt = z * (cur + b_k * prev) - d_k * cur
        prev, cur = cur, nxt
    return cur


@lru_cache(maxsize=None)
def hr_poly_robust(n: int, params: Params) -> Poly:
    """P_n via the hypergeometric sum, falling back to the recurrence route.

    Twisted parameter sets such as (alpha+j, beta-j) can hit removable poles
    of the hypergeometric coefficients (integer beta) while the recurrence
    route stays regular; identity checks use this constructor.
    """
    try:
        return hr_poly(n, params)
    except ParameterPoleError:
        return build_via_ttrr(n, params)


def hr_family(max_n: int, params: Params) -> list:
    """[P_0, ..., P_max_n] via the robust constructor."""
    return [hr_poly_robust(k, params) for k in range(max_n + 1)]


@dataclass(frozen=True)
class MomentTable:
    """Moments of the weight, normalised so the zeroth moment is 1.

    The transcendental common factor of the raw moments cancels from every
    biorthogonality statement, so storing the ratios keeps all inner products
    rational.  Consecutive values obey value(k+1)(k+1+alpha) = value(k)(k-beta).
    """

    params: Params
    k_min: int
    k_max: int
    values: tuple

    def value(self, k: int) -> Fraction:
        if not self.k_min <= k <= self.k_max:
            raise ValueError(
                f"moment index {k} outside table range [{self.k_min}, {self.k_max}]"
            )
        return self.values[k - self.k_min]


def moments(params: Params, k_min: int, k_max: int) -> MomentTable:
    """Moment table on [k_min, k_max] from the two-sided ratio recurrence."""
    if k_min > 0 or k_max < 0:
        raise ValueError("table range must contain 0")
    a, b = params.alpha, params.beta
    vals = {0: Fraction(1)}
    for k in range(0, k_max):
        den = _require_nonzero(k + 1 + a, f"k+1+alpha at k={k}")
        vals[k + 1] = vals[k] * (k - b) / den
    for k in range(0, k_min, -1):
        # forward relation solved backward: value(k-1)(k-1-beta) = value(k)(k+alpha)
        den = _require_nonzero(k - 1 - b, f"k-beta at k={k - 1}")
        vals[k - 1] = vals[k] * (k + a) / den
    return MomentTable(
        params, k_min, k_max, tuple(vals[k] for k in range(k_min, k_max + 1))
    )


def inner_product(f, g, table: MomentTable) -> Fraction:
    """<w f, g-bar> in units of the zeroth moment.

    Both arguments may be Poly or LaurentPoly.  Equals the sum over k of the
    z^k coefficient of f(z) g(1/z) times the normalised moment value(k).
    """
    fl = f.to_laurent() if isinstance(f, Poly) else f
    gl = g.to_laurent() if isinstance(g, Poly) else g
    prod = fl * gl.inverted()
    total = Fraction(0)
    for e, v in prod.items():
        total += v * table.value(e)
    return total


def norm_ratio(n: int, params: Params) -> Fraction:
    """h_n/h_0: the diagonal inner product value in units of the zeroth norm."""
    a, b = params.alpha, params.beta
    out = Fraction(1)
    for k in range(n):
        den = _require_nonzero(a + 1 + k, f"alpha+1+k at k={k}") * _require_nonzero(
            b + 1 + k, f"beta+1+k at k={k}"
        )
        out *= (k + 1) * (a + b + 1 + k) / den
    return out


def dk_bk_sequence(k: int, n: int, params: Params) -> tuple:
    """Connection polynomials (D_0..D_k, B_0..B_k) linking P_{n+j+1} to P_{n+1}, P_n.

    D_j and B_j both satisfy X_j = (z - d_{n+j}) X_{j-1} + b_{n+j} z X_{j-2}
    with starts D_0 = 1, D_{-1} = 0 and B_0 = 0, B_{-1} = 1.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    z = Poly.x()
    ds = [Poly.one()]
    bs = [Poly.zero()]
    d_prev, b_prev = Poly.zero(), Poly.one()
    for j in range(1, k + 1):
        d_c, b_c = ttrr_coeffs(n + j, params)
        zd = z - Poly((d_c,))
        ds.append(zd * ds[-1] + b_c * z * d_prev)
        bs.append(zd * bs[-1] + b_c * z * b_prev)
        d_prev, b_prev = ds[-2], bs[-2]
    return ds, bs


def dk_bk_polys(k: int, n: int, params: Params) -> tuple:
    """(D_k, B_k) such that P_{n+k+1} = D_k P_{n+1} + B_k P_n exactly."""
    ds, bs = dk_bk_sequence(k, n, params)
    return ds[k], bs[k]


def _twisted_c_table(n: int, j: int, params: Params) -> dict:
    """C coefficients: P_m(alpha+t, beta-t) = P_m + sum_l C[(m,t)][l] P_{m-l}."""
    table: dict = {}
    for m in range(n - j + 1, n + 1):
        if m < 0:
            continue
        table[(m, 0)] = {}
    for t in range(1, j + 1):
        for m in range(n - (j - t), n + 1):
            if m < 0:
                continue
            shift_b = ttrr_b(m, params.shifted(t - 1, -(t - 1)))
            prev = table.get((m, t - 1), {})
            prev_down = table.get((m - 1, t - 1), {})
            cur = {}
            for l in range(1, min(t, m) + 1):
                up = prev.get(l, Fraction(0))
                down = Fraction(1) if l == 1 else prev_down.get(l - 1, Fraction(0))
                cur[l] = up + shift_b * down
            table[(m, t)] = cur
    return table


def twisted_coeffs(n: int, j: int, params: Params, side: str = "P") -> list:
    """Expansion coefficients between plain and j-fold twisted families.

    side="P": C with P_n(z; alpha+j, beta-j) = P_n + sum C^(l) P_{n-l}.
    side="Q": E with Q_n(z) = Q_n(z; alpha+j, beta-j) + sum E^(l) Q_{n-l}(z; alpha+j, beta-j).
    Returns [coef_1, ..., coef_j].
    """
    if not 1 <= j <= n:
        raise ValueError("need 1 <= j <= n")
    if side == "P":
        table = _twisted_c_table(n, j, params)[(n, j)]
        return [table.get(l, Fraction(0)) for l in range(1, j + 1)]
    if side != "Q":
        raise ValueError("side must be 'P' or 'Q'")
    # E recurrence keeps the first index fixed: at twist level t the new term
    # of E^(l) picks up b_{n-l+1} at parameters (beta-t, alpha+t).
    cur = {0: Fraction(1)}
    for t in range(1, j + 1):
        swapped = Params(params.beta - t, params.alpha + t)
        nxt = {0: Fraction(1)}
        for l in range(1, t + 1):
            up = cur.get(l, Fraction(0))
            down = cur.get(l - 1, Fraction(0))
            nxt[l] = up + ttrr_b(n - l + 1, swapped) * down
        cur = nxt
    return [cur.get(l, Fraction(0)) for l in range(1, j + 1)]


def expand_in_hr_basis(poly: Poly, params: Params) -> list:
    """Coefficients e_j with poly = sum_j e_j P_j(z; params), exact.

    The P_j are monic, so this is back-substitution on a unit triangular
    change of basis: O(deg^2).
    """
    if poly.is_zero:
        return []
    rem = poly
    out = [Fraction(0)] * (poly.degree + 1)
    basis = hr_family(poly.degree, params)
    for j in range(poly.degree, -1, -1):
        c = rem.coeff(j)
        if c != 0:
            out[j] = c
            rem = rem - c * basis[j]
    if not rem.is_zero:
        raise AssertionError("triangular expansion failed to terminate")
    return out


def apply_l1(p: Poly, params: Params) -> Poly:
    """z(1-z) p'' + (1-beta-(2+alpha)z) p'."""
    a, b = params.alpha, params.beta
    z = Poly.x()
    return z * (1 - z) * p.derivative().derivative() + Poly((1 - b, -(2 + a))) * p.derivative()


def apply_l2(p: Poly, params: Params) -> Poly:
    """(1-z) p' - (alpha+1) p."""
    return Poly((1, -1)) * p.derivative() - (params.alpha + 1) * p


# ---------------------------------------------------------------------------
# Identity catalog
# ---------------------------------------------------------------------------


class IdentityTag(str, Enum):
    """Verifiable exact identities of the classical family."""

    REVERSAL = "reversal"
    DERIVATIVE = "derivative"
    LOG_DERIVATIVE_SWAPPED = "log-derivative-swapped"
    LOG_DERIVATIVE_NEGATED = "log-derivative-negated"
    MONOMIAL_SHIFT = "monomial-shift"
    DERIVATIVE_DOWNSHIFT = "derivative-downshift"
    SHIFTED_DOWNSHIFT = "shifted-downshift"
    ANTIDERIVATIVE = "antiderivative"
    LADDER_RAISE = "ladder-raise"
    MONOMIAL_EXPANSION = "monomial-expansion"
    TWIST_UP = "twist-up"
    TWIST_UP_TIMES_Z = "twist-up-times-z"
    TWIST_DOWN = "twist-down"
    TWIST_DOWN_ITERATED = "twist-down-iterated"
    PARTNER_TWIST = "partner-twist"
    MULTI_TWIST_P = "multi-twist-p"
    MULTI_TWIST_Q = "multi-twist-q"
    SPAN_COEFFICIENTS = "span-coefficients"
    SPAN_WINDOW = "span-window"
    MONIC_COMPLETION = "monic-completion"
    PEARSON = "pearson"
    ODE = "ode"
    L1_SHIFT = "l1-shift"
    L2_SHIFT = "l2-shift"


@dataclass(frozen=True)
class IdentityResult:
    tag: IdentityTag
    n: int
    ok: bool
    witness: object = None  # difference polynomial on failure

    def __bool__(self) -> bool:
        return self.ok


def _result(tag, n, diff) -> IdentityResult:
    if isinstance(diff, (Poly, LaurentPoly)):
        ok = diff.is_zero
    else:
        ok = not any(d for d in diff)
        diff = Poly(diff)
    return IdentityResult(tag, n, ok, None if ok else diff)


def _check_reversal(n, params):
    lhs = hr_poly(n, params).reversed(n)
    pref = pochhammer(params.beta, n) / _require_nonzero(
        pochhammer(params.alpha + 1, n), "(alpha+1)_n"
    )
    rhs = pref * hr_poly_robust(n, Params(params.beta - 1, params.alpha + 1))
    return lhs - rhs


def _check_derivative(n, params):
    lhs = hr_poly_robust(n, params).derivative()
    rhs = n * hr_poly_robust(n - 1, params.shifted(1, 0)) if n >= 1 else Poly.zero()
    return lhs - rhs


def _check_log_derivative_swapped(n, params):
    # cleared form: z(n-1+beta)P'_n(.;beta-1,alpha+1)
    #   = n[(n-1+beta)P_n(.;beta-1,alpha+1) - (1+alpha)P_{n-1}(.;beta-1,alpha+2)]
    if n < 1:
        return Poly.zero()
    fac = _require_nonzero(n - 1 + params.beta, "n-1+beta")
    p_main = hr_poly_robust(n, Params(params.beta - 1, params.alpha + 1))
    p_aux = hr_poly_robust(n - 1, Params(params.beta - 1, params.alpha + 2))
    lhs = fac * Poly.x() * p_main.derivative()
    rhs = n * (fac * p_main - (1 + params.alpha) * p_aux)
    return lhs - rhs


def _check_log_derivative_negated(n, params):
    # cleared by z^2 P_n(z;-a-1,1-b) P_n(1/z;-b,-a); all terms Laurent
    if n < 1:
        return LaurentPoly.zero()
    p_neg = hr_poly_robust(n, Params(-params.alpha - 1, -params.beta + 1))
    rev_n = hr_poly_robust(n, params.negated()).to_laurent().inverted()
    rev_n1 = (
        hr_poly_robust(n - 1, Params(-params.beta + 1, -params.alpha))
        .to_laurent()
        .inverted()
    )
    z = LaurentPoly.monomial(1)
    lhs = z * z * p_neg.derivative().to_laurent() * rev_n
    rhs = n * (z * p_neg.to_laurent() * rev_n - p_neg.to_laurent() * rev_n1)
    return lhs - rhs


def _check_monomial_shift(n, params):
    lhs = Poly.x() * hr_poly_robust(n, params) - hr_poly_robust(n + 1, params)
    coef = ttrr_d(n, params) - ttrr_b(n, params)
    rhs = coef * hr_poly_robust(n, params.shifted(-1, 1))
    return lhs - rhs


def _check_derivative_downshift(n, params):
    if n < 1:
        return Poly.zero()
    lhs = Poly((-1, 1)) * hr_poly_robust(n, params).derivative()
    ratio = (n + params.alpha + params.beta) / _require_nonzero(
        n + params.alpha, "n+alpha"
    )
    rhs = n * (hr_poly_robust(n, params) - ratio * hr_poly_robust(n - 1, params))
    return lhs - rhs


def _check_shifted_downshift(n, params):
    if n < 1:
        return Poly.zero()
    lhs = Poly((-1, 1)) * hr_poly_robust(n - 1, params.shifted(1, 0))
    ratio = (n + params.alpha + params.beta) / _require_nonzero(
        n + params.alpha, "n+alpha"
    )
    rhs = hr_poly_robust(n, params) - ratio * hr_poly_robust(n - 1, params)
    return lhs - rhs


def _check_antiderivative(n, params):
    lhs = hr_poly_robust(n + 1, params.shifted(-1, 0)).derivative()
    rhs = (n + 1) * hr_poly_robust(n, params)
    return lhs - rhs


def _check_ladder_raise(n, params):
    # (A1 d/dz + B1) applied to the beta-fixed upshifted member raises the
    # index while twisting both parameters
    a, b = params.alpha, params.beta
    p = hr_poly_robust(n, params.shifted(1, 0))
    lhs = Poly((0, 1, -1)) * p.derivative() + Poly((1 - b, -(2 + a))) * p
    rhs = (-(n + a + 2)) * hr_poly_robust(n + 1, params.shifted(1, -1))
    return lhs - rhs


def _check_monomial_expansion(n, params):
    rhs = hr_poly_robust(n + 1, params)
    for j in range(n, -1, -1):
        prod = Fraction(1)
        for l in range(n - j):
            prod *= ttrr_b(n - l, params)
        sign = 1 if (n - j) % 2 == 0 else -1
        coef = sign * prod * (ttrr_d(j, params) - ttrr_b(j, params))
        rhs = rhs + coef * hr_poly_robust(j, params)
    return Poly.x() * hr_poly_robust(n, params) - rhs


def _check_twist_up(n, params):
    lhs = hr_poly_robust(n, params.shifted(1, -1))
    rhs = hr_poly_robust(n, params)
    if n >= 1:
        rhs = rhs + ttrr_b(n, params) * hr_poly_robust(n - 1, params)
    return lhs - rhs


def _check_twist_up_times_z(n, params):
    lhs = Poly.x() * hr_poly_robust(n, params.shifted(1, -1))
    rhs = hr_poly_robust(n + 1, params) + ttrr_d(n, params) * hr_poly_robust(n, params)
    return lhs - rhs


def _check_twist_down(n, params):
    down = params.shifted(-1, 1)
    lhs = hr_poly_robust(n, params)
    rhs = hr_poly_robust(n, down)
    if n >= 1:
        rhs = rhs + ttrr_b(n, down) * hr_poly_robust(n - 1, down)
    return lhs - rhs


def _check_twist_down_iterated(n, params):
    down = params.shifted(-1, 1)
    rhs = hr_poly_robust(n, params)
    for j in range(n):
        prod = Fraction(1)
        for l in range(n - j):
            prod *= ttrr_b(n - l, down)
        sign = 1 if (n - j) % 2 == 0 else -1
        rhs = rhs + sign * prod * hr_poly_robust(j, params)
    return hr_poly_robust(n, down) - rhs


def _check_partner_twist(n, params):
    lhs = hr_partner(n, params)
    up = params.shifted(1, -1)
    rhs = hr_poly_robust(n, up.swapped())
    if n >= 1:
        b_swap = ttrr_b(n, Params(params.beta - 1, params.alpha + 1))
        rhs = rhs + b_swap * hr_poly_robust(n - 1, up.swapped())
    return lhs - rhs


def _check_multi_twist_p(n, params):
    diff = Poly.zero()
    for j in range(1, n + 1):
        coeffs = twisted_coeffs(n, j, params, side="P")
        rhs = hr_poly_robust(n, params)
        for l, c in enumerate(coeffs, start=1):
            rhs = rhs + c * hr_poly_robust(n - l, params)
        diff = diff + (hr_poly_robust(n, params.shifted(j, -j)) - rhs)
    return diff


def _check_multi_twist_q(n, params):
    diff = Poly.zero()
    for j in range(1, n + 1):
        coeffs = twisted_coeffs(n, j, params, side="Q")
        twisted = params.shifted(j, -j).swapped()
        rhs = hr_poly_robust(n, twisted)
        for l, c in enumerate(coeffs, start=1):
            rhs = rhs + c * hr_poly_robust(n - l, twisted)
        diff = diff + (hr_partner(n, params) - rhs)
    return diff


def _span_a_vector(n, l0, params):
    return [Fraction(1)] + twisted_coeffs(n, l0 + 1, params, side="P")


def _check_span_coefficients(n, params):
    diff = Poly.zero()
    for l0 in range(1, min(3, n - 1) + 1):
        a = _span_a_vector(n, l0, params)
        lhs = Poly.zero()
        for l, c in enumerate(a):
            lhs = lhs + c * hr_poly_robust(n - l, params)
        diff = diff + (lhs - hr_poly_robust(n, params.shifted(l0 + 1, -(l0 + 1))))
    return diff


def _check_span_window(n, params):
    # q of degree l0+1 with z | q, paired against the partner family through
    # the moment functional: all components below the window must vanish.
    bad = []
    for l0 in range(1, min(3, n - 1) + 1):
        q = Poly((0,) + (1,) * (l0 + 1))
        a = _span_a_vector(n, l0, params)
        lhs = Poly.zero()
        for l, c in enumerate(a):
            lhs = lhs + c * hr_poly_robust(n - l, params)
        lhs = q * lhs
        table = moments(params, -(n + l0 + 2), n + l0 + 2)
        for m in range(0, n - l0):
            bad.append(inner_product(lhs, hr_partner(m, params), table))
    return bad


def _check_monic_completion(n, params):
    # For a monic C_k there is a Q_{k+1} with
    #   Q_{k+1} P_{n+1} + b_{n+1}(d_n - b_n) C_k P_n(.; alpha-1, beta+1)
    # lying in span{P_{n+2}, ..., P_{n+k+2}}; built via the connection
    # polynomials and checked by exact basis expansion.
    diff_total = Poly.zero()
    b_next = _require_nonzero(ttrr_b(n + 1, params), "b_{n+1}")
    shift_c = ttrr_d(n, params) - ttrr_b(n, params)
    down = params.shifted(-1, 1)
    for k in range(0, 4):
        c_k = Poly((1,) * k + (1,)) if k else Poly.one()
        ds, bs = dk_bk_sequence(k + 1, n, params)
        # write C_k over the monic family B_{j+1}/(b_{n+1} z), descending degree
        cs = [Fraction(0)] * (k + 1)  # cs[i] multiplies B_{k+1-i}, i=1..k
        rem = c_k
        for i in range(0, k + 1):
            deg = k - i
            mono = Poly(bs[deg + 1].coeffs[1:]) * (1 / b_next)  # B/(b z), monic deg
            lead = rem.coeff(deg)
            if i > 0:
                cs[i] = lead
            rem = rem - lead * mono
        if not rem.is_zero:
            raise AssertionError("monic expansion over connection family failed")
        q_poly = ds[k + 1] + b_next * c_k
        for i in range(1, k + 1):
            q_poly = q_poly + cs[i] * ds[k + 1 - i]
        lhs = q_poly * hr_poly_robust(n + 1, params) + (
            b_next * shift_c
        ) * c_k * hr_poly_robust(n, down)
        expansion = expand_in_hr_basis(lhs, params)
        for j, e in enumerate(expansion):
            if j <= n + 1 and e != 0:
                diff_total = diff_total + Poly.monomial(j, e)
    return diff_total


def _check_pearson(n, params):
    # (A1 w)' = B1 w cleared by z(1-z):
    #   z(1-z)A1' + A1(-beta(1-z) - (alpha+beta)z) - z(1-z)B1 = 0
    a, b = params.alpha, params.beta
    a1 = Poly((0, 1, -1))
    b1 = Poly((1 - b, -(2 + a)))
    zz = Poly((0, 1, -1))
    log_w_cleared = Poly((-b, b - (a + b)))  # z(1-z) * w'/w
    return zz * a1.derivative() + a1 * log_w_cleared - zz * b1


def _check_ode(n, params):
    p = hr_poly_robust(n, params)
    return apply_l1(p, params) - n * apply_l2(p, params)


def _check_l1_shift(n, params):
    lhs = apply_l1(hr_poly_robust(n, params), params)
    rhs = (-n * (n + params.alpha + 1)) * hr_poly_robust(n, params.shifted(1, -1))
    return lhs - rhs


def _check_l2_shift(n, params):
    lhs = apply_l2(hr_poly_robust(n, params), params)
    rhs = (-(n + params.alpha + 1)) * hr_poly_robust(n, params.shifted(1, -1))
    return lhs - rhs


_CHECKS = {
    IdentityTag.REVERSAL: _check_reversal,
    IdentityTag.DERIVATIVE: _check_derivative,
    IdentityTag.LOG_DERIVATIVE_SWAPPED: _check_log_derivative_swapped,
    IdentityTag.LOG_DERIVATIVE_NEGATED: _check_log_derivative_negated,
    IdentityTag.MONOMIAL_SHIFT: _check_monomial_shift,
    IdentityTag.DERIVATIVE_DOWNSHIFT: _check_derivative_downshift,
    IdentityTag.SHIFTED_DOWNSHIFT: _check_shifted_downshift,
    IdentityTag.ANTIDERIVATIVE: _check_antiderivative,
    IdentityTag.LADDER_RAISE: _check_ladder_raise,
    IdentityTag.MONOMIAL_EXPANSION: _check_monomial_expansion,
    IdentityTag.TWIST_UP: _check_twist_up,
    IdentityTag.TWIST_UP_TIMES_Z: _check_twist_up_times_z,
    IdentityTag.TWIST_DOWN: _check_twist_down,
    IdentityTag.TWIST_DOWN_ITERATED: _check_twist_down_iterated,
    IdentityTag.PARTNER_TWIST: _check_partner_twist,
    IdentityTag.MULTI_TWIST_P: _check_multi_twist_p,
    IdentityTag.MULTI_TWIST_Q: _check_multi_twist_q,
    IdentityTag.SPAN_COEFFICIENTS: _check_span_coefficients,
    IdentityTag.SPAN_WINDOW: _check_span_window,
    IdentityTag.MONIC_COMPLETION: _check_monic_completion,
    IdentityTag.PEARSON: _check_pearson,
    IdentityTag.ODE: _check_ode,
    IdentityTag.L1_SHIFT: _check_l1_shift,
    IdentityTag.L2_SHIFT: _check_l2_shift,
}


def verify_identity(tag: IdentityTag, n: int, params: Params) -> IdentityResult:
    """Check one catalog identity at index n; both sides built independently.

    Returns a result with the difference polynomial as witness on failure.
    Raises ParameterPoleError when the identity touches a parameter pole.
    """
    tag = IdentityTag(tag)
    return _result(tag, n, _CHECKS[tag](n, params))


def identity_catalog() -> tuple:
    """All identity tags, in catalog order."""
    return tuple(IdentityTag)
