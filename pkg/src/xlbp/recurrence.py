"""Construction and exact certification of the exceptional recurrence relations.

For each family the product of a fixed degree-(l0+1) polynomial q with a short
linear combination of consecutive family members re-expands inside a sliding
window of 2l0+2 members, giving a relation with 3l0+4 distinct terms.  The
certification pipeline:

  1. expand the backward image of q * (transformed eigenfunction) in the
     classical basis at (alpha+1, beta-1)   -> c coefficients;
  2. solve the exact nullspace condition for the left-side a coefficients
     (authoritative route), cross-checking the closed formula route;
  3. solve the window linear system for the right-side b coefficients in
     monomial coordinates and re-verify the residual is the zero polynomial;
  4. cross-derive b from the c coefficients through the backward eigenvalues
     and require agreement.

A certificate is only produced when every step succeeds exactly; failures
raise CertificationError rather than degrade.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .darboux import SeedType, backward_apply, psi_hat, seed_theta, xi
from .exact_core import LinearSystem, Poly, SolveStatus
from .hr_classical import (
    ParameterPoleError,
    Params,
    expand_in_hr_basis,
    hr_poly_robust,
    pochhammer,
    twisted_coeffs,
)
from .xhr import InadmissibleIndexError, XIndex, x_poly

__all__ = [
    "CertificationError",
    "CExpansion",
    "RecurrenceCertificate",
    "SolverOutcome",
    "q_poly",
    "pi_factor",
    "c_expansion",
    "a_coeffs_formula",
    "a_coeffs_solver",
    "certify",
    "example_oracles",
    "example_a_oracles",
    "example3_middle_coefficient_as_published",
    "xi_reading_report",
]


class CertificationError(RuntimeError):
    """A certification step failed; carries the offending residual if any."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


def q_poly(j0: SeedType, l0: int, params: Params) -> Poly:
    """The fixed left factor: degree l0+1, divisible by z.

    Built as the antiderivative of the seed polynomial (rescaled seed for
    types 3 and 4) with the constant chosen so q(0) = 0; its derivative
    recovers the seed polynomial exactly, which the tests assert.
    """
    j0 = SeedType(j0)
    a, b = params.alpha, params.beta
    if j0 is SeedType.T1:
        base, pref = Params(a - 1, b), Fraction(1)
    elif j0 is SeedType.T2:
        base, pref = Params(-b - 1, -a), Fraction(1)
    elif j0 is SeedType.T3:
        den = pochhammer(a + 1, l0)
        if den == 0:
            raise ParameterPoleError(f"(alpha+1)_{l0} = 0")
        base, pref = Params(b - 2, a + 1), pochhammer(b, l0) / den
    else:
        den = pochhammer(-b + 1, l0)
        if den == 0:
            raise ParameterPoleError(f"(1-beta)_{l0} = 0")
        base, pref = Params(-a - 2, -b + 1), pochhammer(-a, l0) / den
    p = hr_poly_robust(l0 + 1, base)
    return (pref / (l0 + 1)) * (p - Poly((p.coeff(0),)))


def pi_factor(j0: SeedType) -> Poly:
    """The right companion factor z(1-z), z, 1-z, -1 for types 1-4."""
    return {
        SeedType.T1: Poly((0, 1, -1)),
        SeedType.T2: Poly((0, 1)),
        SeedType.T3: Poly((1, -1)),
        SeedType.T4: Poly((-1,)),
    }[SeedType(j0)]


@dataclass(frozen=True)
class CExpansion:
    """Backward image of q * psi_hat expanded over {P_j(z; alpha+1, beta-1)}."""

    index: XIndex
    coefficients: tuple  # j -> coefficient, j = 0..n+l0+1

    def coefficient(self, j: int) -> Fraction:
        if 0 <= j < len(self.coefficients):
            return self.coefficients[j]
        return Fraction(0)


@lru_cache(maxsize=None)
def _c_vector(j0: SeedType, l0: int, n: int, params: Params) -> tuple:
    product = q_poly(j0, l0, params).to_laurent() * psi_hat(j0, l0, n, params)
    result = backward_apply(j0, l0, product, params)
    if not result.divisible:
        raise CertificationError(
            "backward image of q * psi_hat is not in the family span",
            residual=result.remainder,
        )
    image = result.image.to_poly()
    coeffs = expand_in_hr_basis(image, params.shifted(1, -1))
    coeffs += [Fraction(0)] * (n + l0 + 2 - len(coeffs))
    return tuple(coeffs)


def c_expansion(idx: XIndex, params: Params) -> CExpansion:
    """Exact expansion coefficients c_{n,j}, j = 0..n+l0+1; top one nonzero."""
    idx.require_admissible()
    if idx.n < 0:
        raise InadmissibleIndexError("expansions are defined for n >= 0 members")
    coeffs = _c_vector(idx.j0, idx.l0, idx.n, params)
    if coeffs[-1] == 0:
        raise CertificationError("top expansion coefficient vanished")
    return CExpansion(idx, coeffs)


def _c_row(j0: SeedType, l0: int, m: int, params: Params) -> tuple:
    """Expansion row for member m, where the excluded type-1 member is zero.

    At the sharp lower bound n = 2*l0+1 the left side of the recurrence
    reaches down to the type-1 member at m = l0, which vanishes identically;
    its expansion row is all zeros and its coefficient slot is unconstrained.
    """
    j0 = SeedType(j0)
    if j0 is SeedType.T1 and m == l0:
        return (Fraction(0),) * (m + l0 + 2)
    return _c_vector(j0, l0, m, params)


def a_coeffs_formula(idx: XIndex, params: Params, xi_reading: str = "full") -> list:
    """Closed-form left-side coefficients, a_0 = 1.

    Types 1, 2: the (l0+1)-fold twist coefficients at (alpha, beta).
    Types 3, 4: the same coefficients at (alpha+1, beta-1), scaled by the ratio
    of backward eigenvalues.  `xi_reading` selects the eigenvalue convention:
    "full" uses -(n-theta)(n+alpha+1); "reduced" drops the (n+alpha+1) factor
    (the two differ only in the ratio; the solver route arbitrates).
    """
    j0, l0, n = idx.j0, idx.l0, idx.n
    if n < 2 * l0 + 1:
        raise ValueError("closed-form a coefficients require n >= 2*l0 + 1")
    if j0 in (SeedType.T1, SeedType.T2):
        return [Fraction(1)] + twisted_coeffs(n, l0 + 1, params, side="P")
    base = twisted_coeffs(n, l0 + 1, params.shifted(1, -1), side="P")
    out = [Fraction(1)]
    for l, c in enumerate(base, start=1):
        if xi_reading == "full":
            num, den = xi(j0, l0, n, params), xi(j0, l0, n - l, params)
        elif xi_reading == "reduced":
            num = n - seed_theta(j0, l0, params)
            den = (n - l) - seed_theta(j0, l0, params)
        else:
            raise ValueError("xi_reading must be 'full' or 'reduced'")
        if den == 0:
            raise ParameterPoleError(f"backward eigenvalue vanishes at n-l = {n - l}")
        out.append(c * num / den)
    return out


@dataclass(frozen=True)
class SolverOutcome:
    """Nullspace solve for the a coefficients: solution and space dimension."""

    a: tuple | None
    nullity: int


def a_coeffs_solver(idx: XIndex, params: Params) -> SolverOutcome:
    """Left-side coefficients from the exact window-vanishing conditions.

    Stacks the conditions sum_l a_l c_{n-l,m} = 0 for 0 <= m <= n-l0-1 and
    solves the homogeneous system over (a_0..a_{l0+1}) exactly.  A unique
    normalised solution exists when the nullspace is one-dimensional with a
    nonzero leading component.

    At n = 2*l0+1 for type 1 the last slot multiplies the identically-zero
    member; the solve runs on the remaining columns (where uniqueness is
    meaningful) and that slot is filled from the closed formula.
    """
    j0, l0, n = idx.j0, idx.l0, idx.n
    if n < 2 * l0 + 1:
        raise ValueError("solver route requires n >= 2*l0 + 1")
    columns = []
    degenerate = []
    for l in range(l0 + 2):
        if j0 is SeedType.T1 and n - l == l0:
            degenerate.append(l)
            columns.append(None)
        else:
            columns.append(_c_row(j0, l0, n - l, params))
    active = [l for l in range(l0 + 2) if columns[l] is not None]
    rows = []
    for m in range(0, n - l0):
        rows.append(
            [(columns[l][m] if m < len(columns[l]) else Fraction(0)) for l in active]
        )
    solution = LinearSystem(rows, [0] * len(rows)).solve()
    nullity = len(solution.nullspace)
    if nullity != 1 or solution.nullspace[0][0] == 0:
        return SolverOutcome(None, nullity)
    vec = solution.nullspace[0]
    lead = vec[0]
    normalised = [v / lead for v in vec]
    out = [Fraction(0)] * (l0 + 2)
    for pos, l in enumerate(active):
        out[l] = normalised[pos]
    if degenerate:
        formula = a_coeffs_formula(idx, params)
        for l in degenerate:
            out[l] = formula[l]
    return SolverOutcome(tuple(out), 1)


@dataclass(frozen=True)
class RecurrenceCertificate:
    """Machine-checkable witness of one certified recurrence instance."""

    index: XIndex
    q: Poly
    a: tuple
    b: dict  # j -> Fraction over the window, insertion-ordered ascending j
    window: tuple  # (lo, hi) inclusive
    residual_zero: bool
    b_unique: bool
    method_tags: tuple

    @property
    def term_count(self) -> int:
        """Distinct family members appearing: len(a) + len(b)."""
        return len(self.a) + len(self.b)

    def to_json_dict(self) -> dict:
        return {
            "index": {
                "j0": int(self.index.j0),
                "l0": self.index.l0,
                "n": self.index.n,
            },
            "q": [str(c) for c in self.q.coeffs],
            "a": [str(c) for c in self.a],
            "b": {str(j): str(v) for j, v in self.b.items()},
            "window": list(self.window),
            "residual_zero": self.residual_zero,
            "b_unique": self.b_unique,
            "method_tags": list(self.method_tags),
        }


def xi_reading_report(idx: XIndex, params: Params) -> dict:
    """Which closed-form eigenvalue reading matches the solver route (types 3, 4)."""
    outcome = a_coeffs_solver(idx, params)
    report = {}
    for reading in ("full", "reduced"):
        try:
            candidate = a_coeffs_formula(idx, params, xi_reading=reading)
            report[reading] = outcome.a is not None and tuple(candidate) == outcome.a
        except ParameterPoleError:
            report[reading] = False
    return report


def _solve_b(lhs: Poly, members: dict) -> tuple:
    """Expand lhs over the given family members in monomial coordinates."""
    size = max(lhs.degree, max(p.degree for p in members.values())) + 1
    matrix = [[p.coeff(row) for p in members.values()] for row in range(size)]
    rhs = [lhs.coeff(row) for row in range(size)]
    solution = LinearSystem(matrix, rhs).solve()
    if solution.status is SolveStatus.INCONSISTENT:
        raise CertificationError(
            "window expansion is inconsistent: the relation fails", residual=lhs
        )
    b = dict(zip(members.keys(), solution.solution))
    return b, solution.status is SolveStatus.UNIQUE


def certify(
    idx: XIndex,
    params: Params,
    mode: str = "thm12",
    k: int | None = None,
    a_input=None,
) -> RecurrenceCertificate:
    """Certify the recurrence at one index; every check is exact.

    mode="thm12": the sharp window n-l0..n+l0+1 with solver-route a
    (cross-checked against the closed formulas); requires n >= 2*l0+1.
    mode="thm11": arbitrary left coefficients over l = 0..k (defaults to all
    ones), right window 0..n+l0+1 skipping inadmissible indices; requires n >= k.
    """
    idx.require_admissible()
    j0, l0, n = idx.j0, idx.l0, idx.n
    tags = [mode]
    if mode == "thm12":
        if n < 2 * l0 + 1:
            raise ValueError("thm12 mode requires n >= 2*l0 + 1")
        outcome = a_coeffs_solver(idx, params)
        if outcome.a is not None:
            a = list(outcome.a)
            tags.append("a-solver")
            if j0 in (SeedType.T1, SeedType.T2):
                if a == a_coeffs_formula(idx, params):
                    tags.append("a-formula-agrees")
                else:
                    raise CertificationError(
                        "closed-form a disagrees with solver route"
                    )
            else:
                for reading, match in xi_reading_report(idx, params).items():
                    if match:
                        tags.append(f"a-formula-{reading}-xi-agrees")
        else:
            # non-generic parameters can collapse the window-vanishing rows
            # (e.g. proportional conditions), leaving the solver without a
            # unique normalisation; the closed formula then picks a canonical
            # member of the solution space and the cross-checks below still
            # verify it vanishes on the excluded window
            a = a_coeffs_formula(idx, params)
            tags.append(f"a-formula-fallback(nullspace-dim={outcome.nullity})")
        window = list(range(n - l0, n + l0 + 2))
    elif mode == "thm11":
        if k is None:
            raise ValueError("thm11 mode needs k")
        if not 1 <= k <= n:
            raise ValueError("thm11 mode requires 1 <= k <= n")
        a = [Fraction(1)] * (k + 1) if a_input is None else [Fraction(v) for v in a_input]
        if len(a) != k + 1 or a[0] != 1:
            raise ValueError("a vector must have length k+1 and a_0 = 1")
        tags.append(f"k={k}")
        window = [j for j in range(0, n + l0 + 2) if XIndex(j0, l0, j).is_admissible]
        if j0 is SeedType.T4:
            # the added state belongs to the type-4 index set; normalised by
            # z^l0 it is the constant member, and full-window expansions are
            # generically inconsistent without it
            window.insert(0, -l0 - 1)
    else:
        raise ValueError("mode must be 'thm12' or 'thm11'")

    q = q_poly(j0, l0, params)
    lhs = Poly.zero()
    for l, coef in enumerate(a):
        member = XIndex(j0, l0, n - l)
        if member.is_admissible:
            lhs = lhs + coef * x_poly(member, params).poly
        # type-1 member at n-l = l0 is identically zero and contributes nothing
    lhs = q * lhs

    from .xhr import compact_darboux_sign

    members = {}
    for j in window:
        if j < 0:
            members[j] = Poly((compact_darboux_sign(j0),))
        else:
            members[j] = x_poly(XIndex(j0, l0, j), params).poly
    b, unique = _solve_b(lhs, members)

    residual = lhs
    for j, coef in b.items():
        residual = residual - coef * members[j]
    if not residual.is_zero:
        raise CertificationError("residual recheck failed", residual=residual)

    # cross-route: b_j = (sum_l a_l c_{n-l,j}) / xi_j wherever xi_j != 0
    c_rows = [_c_row(j0, l0, n - l, params) for l in range(len(a))]
    for j in range(0, n + l0 + 2):
        c_tilde = sum(
            (
                a[l] * (c_rows[l][j] if j < len(c_rows[l]) else Fraction(0))
                for l in range(len(a))
            ),
            Fraction(0),
        )
        xi_j = xi(j0, l0, j, params)
        if xi_j == 0:
            if c_tilde != 0:
                raise CertificationError(
                    f"stacked expansion does not vanish at excluded index j={j}"
                )
            continue
        expected = b.get(j, Fraction(0))
        if mode == "thm12" and j < n - l0:
            if c_tilde != 0:
                raise CertificationError(
                    f"window-vanishing fails at j={j}", residual=None
                )
        if c_tilde / xi_j != expected:
            raise CertificationError(
                f"b cross-route mismatch at j={j}: {c_tilde / xi_j} != {expected}"
            )
    tags.append("b-cross-route-agrees")

    return RecurrenceCertificate(
        index=idx,
        q=q,
        a=tuple(a),
        b=b,
        window=(window[0], window[-1]),
        residual_zero=True,
        b_unique=unique,
        method_tags=tuple(tags),
    )


def _fr(x) -> Fraction:
    return Fraction(x)


_EXAMPLE_B = {
    1: lambda a, b: {
        7: Fraction(1, 3),
        6: -(3 + 3 * a - 5 * b) / ((1 + a) * (7 + a)),
        5: -(-10 + 89 * b + 21 * b**2 + a * (-10 + 9 * b + b**2))
        / (2 * (1 + a) * (6 + a) * (7 + a)),
        4: 5 * b * (3 + b) * (5 + a + b) / ((1 + a) * (5 + a) * (6 + a) * (7 + a)),
    },
    2: lambda a, b: {
        7: (4 + a + b) / (2 * (6 + a + b)),
        6: (3 + 6 * a + a**2 - 2 * b - b**2) / ((7 + a) * (b - 1)),
        5: (-10 + 3 * b + 6 * b**2 + b**3 - 24 * a * (4 + b) - 2 * a**2 * (9 + b))
        / (2 * (6 + a) * (7 + a) * (b - 1)),
        4: 5 * a * (3 + b) * (5 + a + b) / ((5 + a) * (6 + a) * (7 + a) * (b - 1)),
    },
    3: lambda a, b: {
        7: (6 + a) * b / (2 * (1 + a) * (8 + a)),
        6: (6 + a) * (7 + a + b) * (7 + 8 * a + a**2 - 4 * b - b**2)
        / ((1 + a) * (7 + a) * (8 + a) * (6 + a + b)),
        # sign corrected relative to the published display: with the published
        # sign the relation itself fails (nonzero residual at every valid
        # parameter pair), while this value is pinned by two independent
        # routes; see example3_middle_coefficient_as_published.
        5: -(140 + 8 * b - 9 * b**2 - b**3 + 4 * a * (40 + 7 * b) + 2 * a**2 * (10 + b))
        / (2 * (1 + a) * (7 + a) * (8 + a)),
        4: 5 * (4 + b) * (5 + a + b) * (7 + a + b)
        / ((5 + a) * (7 + a) * (8 + a) * (6 + a + b)),
    },
    4: lambda a, b: {
        7: a * (6 + a) / (2 * (8 + a) * (b - 1)),
        6: -7 * (6 + a) * (7 + 5 * a - 7 * b) / (6 * (7 + a) * (8 + a) * (b - 1)),
        5: -(-140 + 112 * b + 28 * b**2 + a * (-40 + 11 * b + b**2))
        / (2 * (7 + a) * (8 + a) * (b - 1)),
        4: 35 * (4 + b) * (5 + a + b) / (6 * (5 + a) * (7 + a) * (8 + a)),
    },
}

_EXAMPLE_A = {
    1: lambda a, b: [
        _fr(1),
        -10 * (5 + a + b) / ((5 + a) * (7 + a)),
        20 * (4 + a + b) * (5 + a + b) / ((4 + a) * (5 + a) * (6 + a) * (7 + a)),
    ],
    2: lambda a, b: [
        _fr(1),
        -10 * (5 + a + b) / ((5 + a) * (7 + a)),
        20 * (4 + a + b) * (5 + a + b) / ((4 + a) * (5 + a) * (6 + a) * (7 + a)),
    ],
    3: lambda a, b: [
        _fr(1),
        -10 * (5 + a + b) * (7 + a + b) / ((5 + a) * (8 + a) * (6 + a + b)),
        20 * (4 + a + b) * (7 + a + b) / ((4 + a) * (5 + a) * (7 + a) * (8 + a)),
    ],
    4: lambda a, b: [
        _fr(1),
        -35 * (5 + a + b) / (3 * (5 + a) * (8 + a)),
        28 * (4 + a + b) * (5 + a + b) / ((4 + a) * (5 + a) * (7 + a) * (8 + a)),
    ],
}


def example_oracles(example_id: int, params: Params) -> dict:
    """Golden right-side coefficients for the reference cases (l0=1, n=5).

    These are the published closed forms for each family type, hard-coded as
    rational functions of the parameters and evaluated exactly.  One erratum:
    the published type-3 middle coefficient (j = 5) carries a sign typo; the
    stored value is the negated form, which is forced by the relation itself
    (the tests demonstrate the refutation of the published sign).
    """
    if example_id not in _EXAMPLE_B:
        raise ValueError("example_id must be 1, 2, 3 or 4")
    a, b = params.alpha, params.beta
    values = _EXAMPLE_B[example_id](a, b)
    return {j: Fraction(v) for j, v in sorted(values.items(), reverse=True)}


def example3_middle_coefficient_as_published(params: Params) -> Fraction:
    """The type-3 reference case's j = 5 coefficient with its published sign.

    Kept so the tests can show the published value violates the certified
    relation while its negation satisfies it exactly.
    """
    return -example_oracles(3, params)[5]


def example_a_oracles(example_id: int, params: Params) -> list:
    """Golden left-side coefficients for the same reference cases."""
    if example_id not in _EXAMPLE_A:
        raise ValueError("example_id must be 1, 2, 3 or 4")
    return [Fraction(v) for v in _EXAMPLE_A[example_id](params.alpha, params.beta)]
