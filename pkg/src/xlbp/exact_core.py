"""Exact rational scalars, dense polynomials, Laurent polynomials and linear solves.

Everything in this module is exact: coefficients are `fractions.Fraction`
(aliased `Rational`), so no operation ever rounds.  Polynomials are stored
densely (coefficient list indexed by exponent), which is the right trade-off
here because every polynomial in play has degree at most a few hundred.

The zero polynomial carries the sentinel degree -1; callers that do degree
arithmetic must check `is_zero` first.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

Scalar = Union[Fraction, int, str]

__all__ = [
    "Rational",
    "Poly",
    "LaurentPoly",
    "LinearSystem",
    "LinearSolution",
    "SolveStatus",
    "solve_exact",
    "parse_rational",
    "format_rational",
]


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" (optional leading minus, ASCII or U+2212)."""
    return Fraction(text.strip().replace("−", "-"))


def format_rational(value: Fraction) -> str:
    """Canonical text form "p/q" (or "p" for integers)."""
    return str(Fraction(value))


def _coerce(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


class Poly:
    """Dense univariate polynomial over the rationals, immutable.

    Coefficients are indexed by exponent, lowest first.  Trailing zeros are
    stripped on construction so the leading coefficient is nonzero unless the
    polynomial is zero.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):  # noqa: D107
        c = [_coerce(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "_c", tuple(c))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> "Poly":
        if exponent < 0:
            raise ValueError("Poly exponents are nonnegative; use LaurentPoly")
        return cls((0,) * exponent + (_coerce(coeff),))

    # -- basic structure ---------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with -1 as the sentinel for the zero polynomial."""
        return len(self._c) - 1

    @property
    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, exponent: int) -> Fraction:
        if 0 <= exponent < len(self._c):
            return self._c[exponent]
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        if not self._c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._c[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            return self.to_laurent() + other
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return Poly(out)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if isinstance(other, LaurentPoly):
            return self.to_laurent() - other
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return Poly(tuple(-v for v in self._c))

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return self.to_laurent() * other
        if isinstance(other, Poly):
            if not self._c or not other._c:
                return Poly()
            out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
            for i, a in enumerate(self._c):
                if a == 0:
                    continue
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
            return Poly(out)
        if isinstance(other, (Fraction, int)):
            q = Fraction(other)
            return Poly(tuple(v * q for v in self._c))
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Poly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, divisor: "Poly"):
        """Exact long division: self = q*divisor + r with deg r < deg divisor."""
        if not isinstance(divisor, Poly):
            return NotImplemented
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dd = divisor.degree
        lead = divisor.leading
        if len(rem) - 1 < dd:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c / lead
            quot[i - dd] = q
            for j, v in enumerate(divisor._c):
                rem[i - dd + j] -= q * v
        return Poly(quot), Poly(rem)

    def __floordiv__(self, divisor):
        return divmod(self, divisor)[0]

    def __mod__(self, divisor):
        return divmod(self, divisor)[1]

    # -- calculus and transforms --------------------------------------------

    def derivative(self) -> "Poly":
        return Poly(tuple(self._c[k] * k for k in range(1, len(self._c))))

    def __call__(self, point):
        """Horner evaluation; works for Fraction, int, float, mpmath values."""
        acc = 0
        for c in reversed(self._c):
            acc = acc * point + c
        return acc

    def reversed(self, exponent: int | None = None) -> "Poly":
        """z^k * p(1/z) as a true polynomial; k defaults to deg p, must be >= deg p."""
        k = self.degree if exponent is None else exponent
        if self.is_zero:
            return Poly()
        if k < self.degree:
            raise ValueError("reversal exponent below degree")
        out = [Fraction(0)] * (k + 1)
        for i, v in enumerate(self._c):
            out[k - i] = v
        return Poly(out)

    def shifted(self, k: int) -> "Poly":
        """Multiply by z^k, k >= 0."""
        if k < 0:
            raise ValueError("negative shift; use to_laurent().shifted(k)")
        if self.is_zero:
            return Poly()
        return Poly((0,) * k + self._c)

    def to_laurent(self, shift: int = 0) -> "LaurentPoly":
        return LaurentPoly(shift, self._c)

    # -- plumbing ------------------------------------------------------------

    def _as_poly(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (Fraction, int)):
            return Poly((other,))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (Fraction, int)):
            return self._c == Poly((other,))._c
        if isinstance(other, LaurentPoly):
            return self.to_laurent() == other
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self._c))

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"Poly({[str(v) for v in self._c]})"

    def __str__(self):
        return _pretty_terms(enumerate(self._c))


class LaurentPoly:
    """Laurent polynomial: coefficients from `min_exp` upward, exact and immutable.

    Normalised so the coefficients at both extreme exponents are nonzero
    (zero is stored as min_exp=0 with an empty coefficient tuple).
    """

    __slots__ = ("_min", "_c")

    def __init__(self, min_exp: int = 0, coeffs: Iterable[Scalar] = ()):  # noqa: D107
        c = [_coerce(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        drop = 0
        while drop < len(c) and c[drop] == 0:
            drop += 1
        c = c[drop:]
        object.__setattr__(self, "_min", (min_exp + drop) if c else 0)
        object.__setattr__(self, "_c", tuple(c))

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(0, ())

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls(exponent, (coeff,))

    @classmethod
    def from_poly(cls, p: Poly, shift: int = 0) -> "LaurentPoly":
        return cls(shift, p.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self) -> int:
        return self._min

    @property
    def max_exp(self) -> int:
        """Largest exponent with nonzero coefficient; min_exp - 1 when zero."""
        return self._min + len(self._c) - 1

    def coeff(self, exponent: int) -> Fraction:
        i = exponent - self._min
        if 0 <= i < len(self._c):
            return self._c[i]
        return Fraction(0)

    def items(self):
        """(exponent, coefficient) pairs, ascending, nonzero entries only."""
        for i, v in enumerate(self._c):
            if v != 0:
                yield self._min + i, v

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self._min, other._min)
        hi = max(self.max_exp, other.max_exp)
        out = [Fraction(0)] * (hi - lo + 1)
        for e, v in self.items():
            out[e - lo] += v
        for e, v in other.items():
            out[e - lo] += v
        return LaurentPoly(lo, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        other = self._as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return LaurentPoly(self._min, tuple(-v for v in self._c))

    def __mul__(self, other):
        if isinstance(other, (Fraction, int)):
            q = Fraction(other)
            if q == 0:
                return LaurentPoly.zero()
            return LaurentPoly(self._min, tuple(v * q for v in self._c))
        other = self._as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return LaurentPoly.zero()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return LaurentPoly(self._min + other._min, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __divmod__(self, divisor):
        """self = q*divisor + r.  Exact in the Laurent ring.

        Writing self = z^a A and divisor = z^b B with A(0), B(0) nonzero,
        the quotient is z^(a-b) (A div B) and the remainder z^a (A mod B),
        so divisibility reduces to ordinary polynomial divisibility of A by B.
        """
        divisor = self._as_laurent(divisor)
        if divisor is NotImplemented:
            return NotImplemented
        if divisor.is_zero:
            raise ZeroDivisionError("Laurent division by zero")
        if self.is_zero:
            return LaurentPoly.zero(), LaurentPoly.zero()
        a_part = Poly(self._c)
        b_part = Poly(divisor._c)
        q, r = divmod(a_part, b_part)
        return (
            LaurentPoly(self._min - divisor._min, q.coeffs),
            LaurentPoly(self._min, r.coeffs),
        )

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly(
            self._min - 1,
            tuple(v * (self._min + i) for i, v in enumerate(self._c)),
        )

    def inverted(self) -> "LaurentPoly":
        """Substitute z -> 1/z; an involution."""
        return LaurentPoly(-self.max_exp, tuple(reversed(self._c)))

    def shifted(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self._min + k, self._c)

    def __call__(self, point):
        if self.is_zero:
            return 0
        acc = 0
        for c in reversed(self._c):
            acc = acc * point + c
        if self._min >= 0:
            return acc * point**self._min
        return acc / point ** (-self._min)

    def to_poly(self) -> Poly:
        if self._min < 0 and self._c:
            raise ValueError(f"not a polynomial: pole of order {-self._min} at 0")
        return Poly((0,) * self._min + self._c)

    # -- plumbing ------------------------------------------------------------

    def _as_laurent(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, Poly):
            return other.to_laurent()
        if isinstance(other, (Fraction, int)):
            return LaurentPoly(0, (other,))
        return NotImplemented

    def __eq__(self, other):
        other = self._as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._min == other._min and self._c == other._c

    def __hash__(self):
        return hash(("LaurentPoly", self._min, self._c))

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentPoly(min_exp={self._min}, {[str(v) for v in self._c]})"

    def __str__(self):
        return _pretty_terms(self.items())


def _pretty_terms(pairs) -> str:
    terms = []
    for e, v in sorted(pairs, key=lambda t: -t[0]):
        if v == 0:
            continue
        if e == 0:
            terms.append(str(v))
        else:
            mono = "z" if e == 1 else f"z^{e}"
            if v == 1:
                terms.append(mono)
            elif v == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{v}*{mono}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


class SolveStatus(Enum):
    UNIQUE = "unique"
    UNDERDETERMINED = "underdetermined"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class LinearSolution:
    status: SolveStatus
    solution: tuple | None
    nullspace: tuple
    rank: int


@dataclass(frozen=True)
class LinearSystem:
    """Exact rational linear system matrix * x = rhs."""

    matrix: tuple
    rhs: tuple

    def __init__(self, matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]):
        rows = tuple(tuple(_coerce(v) for v in row) for row in matrix)
        b = tuple(_coerce(v) for v in rhs)
        if len(rows) != len(b):
            raise ValueError("matrix/rhs size mismatch")
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "rhs", b)

    def solve(self) -> LinearSolution:
        return solve_exact(self.matrix, self.rhs)


def _bit_size(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


def solve_exact(matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> LinearSolution:
    """Gauss-Jordan over Fraction, returning the full exact solution set.

    Pivot choice prefers the candidate with the smallest numerator/denominator
    bit size, which keeps intermediate fractions small; correctness does not
    depend on the choice.
    """
    rows = [list(map(_coerce, row)) + [_coerce(b)] for row, b in zip(matrix, rhs)]
    n_rows = len(rows)
    n_cols = len(rows[0]) - 1 if rows else 0

    pivot_cols: list[int] = []
    r = 0
    for col in range(n_cols):
        best = None
        for i in range(r, n_rows):
            if rows[i][col] != 0:
                if best is None or _bit_size(rows[i][col]) < _bit_size(rows[best][col]):
                    best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][col]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
        if r == n_rows:
            break

    rank = len(pivot_cols)
    for i in range(rank, n_rows):
        if rows[i][n_cols] != 0:
            return LinearSolution(SolveStatus.INCONSISTENT, None, (), rank)

    solution = [Fraction(0)] * n_cols
    for i, col in enumerate(pivot_cols):
        solution[col] = rows[i][n_cols]

    free_cols = [c for c in range(n_cols) if c not in set(pivot_cols)]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for i, col in enumerate(pivot_cols):
            vec[col] = -rows[i][free]
        basis.append(tuple(vec))

    status = SolveStatus.UNIQUE if not free_cols else SolveStatus.UNDERDETERMINED
    return LinearSolution(status, tuple(solution), tuple(basis), rank)
