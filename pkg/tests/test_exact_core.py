from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xlbp.exact_core import (
    LaurentPoly,
    LinearSystem,
    Poly,
    SolveStatus,
    format_rational,
    parse_rational,
    solve_exact,
)

rationals = st.fractions(
    min_value=-20, max_value=20, max_denominator=12
)
small_polys = st.lists(rationals, min_size=0, max_size=7).map(Poly)
nonzero_polys = small_polys.filter(lambda p: not p.is_zero)


def laurent(min_exp, coeffs):
    return LaurentPoly(min_exp, coeffs)


class TestPolyBasics:
    def test_derivative_power_rule(self):
        assert Poly((0, 3, 1)).derivative() == Poly((3, 2))  # (z^2+3z)' = 2z+3

    def test_product_difference_of_squares(self):
        assert Poly((-1, 1)) * Poly((1, 1)) == Poly((-1, 0, 1))

    def test_eval_at_rational(self):
        # direct rational arithmetic: (2/3)^2 - 1 = -5/9
        assert Poly((-1, 0, 1))(Fraction(2, 3)) == Fraction(-5, 9)

    def test_zero_degree_sentinel(self):
        assert Poly().degree == -1
        assert Poly().is_zero
        assert Poly((0, 0)).is_zero

    def test_monic_and_leading(self):
        p = Poly((2, 0, 1))
        assert p.is_monic and p.leading == 1
        with pytest.raises(ValueError):
            Poly().leading

    def test_reversal(self):
        p = Poly((1, 2, 3))
        assert p.reversed() == Poly((3, 2, 1))
        assert p.reversed(4) == Poly((0, 0, 3, 2, 1))


class TestDivision:
    def test_exact_quotient(self):
        q, r = divmod(Poly((-1, 0, 1)), Poly((-1, 1)))
        assert q == Poly((1, 1)) and r.is_zero

    def test_remainder_witness(self):
        # long division by hand: z^2+1 = (z+1)(z-1) + 2
        q, r = divmod(Poly((1, 0, 1)), Poly((-1, 1)))
        assert q == Poly((1, 1))
        assert r == Poly((2,))

    def test_laurent_division(self):
        # (1/z - z) / ((1/z)(1-z)) = 1+z by hand
        num = laurent(-1, (1, 0, -1))
        den = laurent(-1, (1, -1))
        q, r = divmod(num, den)
        assert r.is_zero
        assert q == Poly((1, 1)).to_laurent()

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            divmod(Poly((1,)), Poly())

    @settings(max_examples=60)
    @given(p=small_polys, d=nonzero_polys)
    def test_divmod_roundtrip(self, p, d):
        q, r = divmod(p * d, d)
        assert r.is_zero
        assert q == p


class TestAlgebraProperties:
    @settings(max_examples=60)
    @given(p=small_polys, q=small_polys, z0=rationals)
    def test_evaluation_is_additive(self, p, q, z0):
        assert (p + q)(z0) == p(z0) + q(z0)

    @settings(max_examples=60)
    @given(p=nonzero_polys, q=nonzero_polys)
    def test_degree_of_product(self, p, q):
        assert (p * q).degree == p.degree + q.degree

    @settings(max_examples=60)
    @given(p=small_polys, q=small_polys, r=small_polys)
    def test_distributivity(self, p, q, r):
        assert p * (q + r) == p * q + p * r


class TestLaurent:
    def test_inversion_is_involution(self):
        p = laurent(-2, (1, 0, 3, -4))
        assert p.inverted().inverted() == p

    def test_inversion_swaps_support(self):
        p = laurent(-2, (1, 0, 3, -4))
        assert p.inverted().min_exp == -p.max_exp

    def test_derivative(self):
        p = laurent(-1, (2, 5, 7))  # 2/z + 5 + 7z
        assert p.derivative() == laurent(-2, (-2, 0, 7))

    def test_to_poly_raises_on_pole(self):
        with pytest.raises(ValueError):
            laurent(-1, (1,)).to_poly()

    def test_normalisation_strips_zeros(self):
        p = LaurentPoly(-3, (0, 0, 5, 0))
        assert p.min_exp == -1 and p.max_exp == -1

    @settings(max_examples=40)
    @given(
        shift=st.integers(min_value=-4, max_value=4),
        coeffs=st.lists(rationals, min_size=1, max_size=6),
    )
    def test_involution_property(self, shift, coeffs):
        p = LaurentPoly(shift, coeffs)
        assert p.inverted().inverted() == p


class TestLinearSolve:
    def test_identity_system(self):
        sol = solve_exact([[1, 0], [0, 1]], [1, 2])
        assert sol.status is SolveStatus.UNIQUE
        assert sol.solution == (1, 2)

    def test_nullspace_line(self):
        sol = solve_exact([[1, 1]], [0])
        assert sol.status is SolveStatus.UNDERDETERMINED
        assert len(sol.nullspace) == 1
        vec = sol.nullspace[0]
        # spans the same line as (1, -1)
        assert vec[0] * (-1) == vec[1] * 1 and any(v != 0 for v in vec)

    def test_inconsistent(self):
        sol = solve_exact([[1, 1], [1, 1]], [1, 2])
        assert sol.status is SolveStatus.INCONSISTENT
        assert sol.rank == 1

    def test_linear_system_wrapper_validation(self):
        with pytest.raises(ValueError):
            LinearSystem([[1, 2], [3]], [1, 2])
        with pytest.raises(ValueError):
            LinearSystem([[1, 2]], [1, 2])

    @settings(max_examples=40)
    @given(
        data=st.lists(
            st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3
        ),
        x=st.lists(rationals, min_size=3, max_size=3),
    )
    def test_solution_reproduces_rhs(self, data, x):
        rhs = [sum(row[j] * x[j] for j in range(3)) for row in data]
        sol = solve_exact(data, rhs)
        assert sol.status is not SolveStatus.INCONSISTENT
        got = sol.solution
        back = [sum(row[j] * got[j] for j in range(3)) for row in data]
        assert back == rhs


class TestRationalText:
    def test_round_trip(self):
        assert parse_rational("3/5") == Fraction(3, 5)
        assert parse_rational("-7") == Fraction(-7)
        assert parse_rational("−3/4") == Fraction(-3, 4)
        assert format_rational(Fraction(6, 4)) == "3/2"
        assert format_rational(Fraction(5)) == "5"
