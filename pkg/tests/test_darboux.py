from fractions import Fraction

import pytest

from xlbp.darboux import (
    backward_apply,
    kernel_check,
    make_seed,
    psi_hat,
    seed_theta,
    xi,
)
from xlbp.exact_core import LaurentPoly, Poly
from xlbp.hr_classical import ParameterPoleError, Params, hr_poly_robust

from conftest import PAIR_A, PAIR_B, pairs_for_type


class TestSeeds:
    def test_type1_table_entry(self):
        seed = make_seed(1, 1, PAIR_A)
        a, b = PAIR_A.alpha, PAIR_A.beta
        assert seed.p_poly == Poly((b / (a + 1), 1))
        assert seed.theta == 1
        assert seed.P_factor.is_zero and seed.Q_factor == Poly.one()

    def test_type4_theta(self):
        assert make_seed(4, 1, PAIR_A).theta == -2

    def test_theta_defined_at_seed_pole(self):
        # theta = l0 - alpha - beta is well-defined even where the type-2 seed
        # polynomial itself is singular
        assert seed_theta(2, 2, PAIR_B) == 0
        with pytest.raises(ParameterPoleError):
            make_seed(2, 2, PAIR_B)

    def test_seed_degree(self):
        for j0 in (1, 2, 3, 4):
            for l0 in (1, 2, 3):
                params = pairs_for_type(j0)[0]
                assert make_seed(j0, l0, params).p_poly.degree == l0

    def test_factor_tables(self):
        a, b = PAIR_A.alpha, PAIR_A.beta
        assert make_seed(2, 1, PAIR_A).P_factor == Poly((a + b,))
        assert make_seed(3, 1, PAIR_A).Q_factor == Poly((0, -1))
        assert make_seed(4, 1, PAIR_A).P_factor == Poly((b - 1, a + 1))
        assert make_seed(4, 1, PAIR_A).Q_factor == Poly((0, 1, -1))

    def test_seed_type_validation(self):
        with pytest.raises(ValueError):
            make_seed(5, 1, PAIR_A)
        with pytest.raises(ValueError):
            make_seed(1, 0, PAIR_A)


class TestPsiHat:
    def test_base_case_is_minus_one(self):
        assert psi_hat(1, 1, 0, PAIR_A) == LaurentPoly(0, (-1,))

    def test_excluded_member_vanishes(self):
        for l0 in (1, 2, 3):
            assert psi_hat(1, l0, l0, PAIR_A).is_zero

    def test_pole_order_for_reversed_types(self):
        for j0 in (3, 4):
            ph = psi_hat(j0, 2, 3, PAIR_A)
            assert ph.min_exp >= -2
            assert (ph.shifted(2).to_poly()).degree >= 0


class TestBackwardOperator:
    @pytest.mark.parametrize("j0", [1, 2, 3, 4])
    def test_image_law(self, j0):
        for params in pairs_for_type(j0):
            shifted = params.shifted(1, -1)
            for l0 in (1, 2, 3):
                for n in range(0, 11):
                    if j0 == 1 and n == l0:
                        continue
                    result = backward_apply(j0, l0, psi_hat(j0, l0, n, params), params)
                    assert result.divisible, (j0, l0, n, params)
                    expected = xi(j0, l0, n, params) * hr_poly_robust(n, shifted)
                    assert result.image == expected.to_laurent(), (j0, l0, n, params)

    def test_type4_added_state_maps_to_zero(self):
        for l0 in (1, 2, 3):
            result = backward_apply(4, l0, LaurentPoly.monomial(-l0), PAIR_A)
            assert result.divisible and result.image.is_zero

    def test_generic_input_not_divisible(self):
        probe = Poly((1, 2, 3, 5, 7))
        result = backward_apply(1, 1, probe, PAIR_A)
        assert not result.divisible
        assert not result.remainder.is_zero
        # quotient * divisor + remainder reproduces the first-order expression
        seed = make_seed(1, 1, PAIR_A)
        numerator = Poly((0, 1, -1)).to_laurent() * probe.derivative().to_laurent()
        a, b = PAIR_A.alpha, PAIR_A.beta
        numerator = numerator + Poly(
            (1 - b - 1, 1 - a - 2)
        ).to_laurent() * probe.to_laurent()
        back = result.image * seed.p_poly.to_laurent() + result.remainder
        assert back == numerator

    def test_zero_input_rejected(self):
        with pytest.raises(ValueError):
            backward_apply(1, 1, Poly.zero(), PAIR_A)


class TestEigenvalues:
    def test_vanishing_at_type1_seed_index(self):
        assert xi(1, 3, 3, PAIR_A) == 0

    def test_plugged_value(self):
        assert xi(4, 1, 3, Params(1, Fraction(1, 2))) == -25

    def test_type3_base(self):
        a, b = PAIR_A.alpha, PAIR_A.beta
        theta = -3 - a - b
        assert xi(3, 2, 0, PAIR_A) == theta * (a + 1)

    def test_vanishing_xi_matches_vanishing_member(self):
        # whenever xi = 0 at an admissible type-1 construction the transformed
        # eigenfunction itself vanishes
        for l0 in (1, 2):
            assert xi(1, l0, l0, PAIR_A) == 0
            assert psi_hat(1, l0, l0, PAIR_A).is_zero


class TestKernel:
    @pytest.mark.parametrize("j0", [1, 2, 3, 4])
    def test_kernel_gauges_annihilate(self, j0):
        for params in pairs_for_type(j0):
            for l0 in (1, 2, 3):
                assert kernel_check(j0, l0, params)

    def test_kernel_specific_cases(self):
        assert kernel_check(4, 7, PAIR_A)
        assert kernel_check(2, 3, PAIR_B)
        assert kernel_check(1, 2, PAIR_A)
