# tests/test_charclass.py
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Symbol

from action_tools.action import validate_action
from charclass_tools.base import SWPolynomial, w
from charclass_tools.chern import c, chern_polynomial, line_bundle_sw, sw_from_chern, whitney_product
from charclass_tools.models import (CharacteristicModel, ModelFactory, evaluate_sw, product_space_model,
                                    projective_space_model, torus_model)
from charclass_tools.squares import sq_by_splitting, sq_on_sw, total_sq, wu_formula
from charclass_tools.verify import verify_sq_on_sw, verify_wu_theorem
from charclass_tools.wu import check_round_trip, wu_from_sw
from modules.exceptions import ConfigurationError, WordFormatError

W2, W4, W6 = SWPolynomial.variable(2), SWPolynomial.variable(4), SWPolynomial.variable(6)

# 차수 6 이하의 단항식
SMALL_MONOMIALS = [W2, W4, W6, W2 * W2, W2 * W4, W2 ** 3]


class TestPolynomial:
    def test_odd_variables_vanish(self):
        assert SWPolynomial(w(3) + w(2)) == W2
        assert SWPolynomial(2 * w(2)).is_zero()

    def test_terms(self):
        poly = SWPolynomial.from_terms({"w2^2*w4": 1, "1": 1})
        assert poly == SWPolynomial.one() + W2 ** 2 * W4
        assert poly.to_terms() == {"1": 1, "w2^2*w4": 1}
        assert poly.degrees() == (0, 8)

    def test_bad_terms(self):
        with pytest.raises(WordFormatError):
            SWPolynomial.from_terms({"x2": 1})


class TestChern:
    def test_generic_bundle(self):
        assert sw_from_chern(chern_polynomial(2)) == SWPolynomial.one() + W2 + W4

    def test_coefficient_list(self):
        assert sw_from_chern([1, 3, 2]) == SWPolynomial.one() + W2

    def test_expression(self):
        assert sw_from_chern(1 + c(1) + 2 * c(1) * c(2) + c(3)) == SWPolynomial.one() + W2 + W6

    def test_constant_term_must_be_one(self):
        with pytest.raises(ConfigurationError):
            sw_from_chern(2 + c(1))

    def test_foreign_variable(self):
        with pytest.raises(ConfigurationError):
            sw_from_chern(1 + Symbol("x"))

    def test_whitney_product(self):
        line = line_bundle_sw()
        assert whitney_product(line, line) == SWPolynomial.one() + W2 ** 2
        with pytest.raises(ConfigurationError):
            whitney_product(W2, line)


class TestSquares:
    def test_examples(self):
        assert sq_on_sw(2, W2) == W2 ** 2
        assert sq_on_sw(2, W4) == W2 * W4 + W6
        assert sq_on_sw(4, W4) == W4 ** 2
        assert sq_on_sw(4, W6) == W4 * W6 + W2 * SWPolynomial.variable(8) + SWPolynomial.variable(10)

    def test_trivial_cases(self):
        poly = W2 * W4 + W6
        assert sq_on_sw(0, poly) == poly
        assert sq_on_sw(1, poly).is_zero()
        assert sq_on_sw(3, W4).is_zero()
        assert sq_on_sw(4, W2).is_zero()

    def test_cartan_example(self):
        assert sq_on_sw(2, W2 * W4) == W2 * W6
        assert sq_on_sw(2, W2 ** 2).is_zero()

    @pytest.mark.parametrize("index, i", [(2, 1), (4, 1), (4, 2), (6, 1), (6, 2), (8, 1)])
    def test_generators_match_wu_formula(self, index, i):
        assert sq_on_sw(2 * i, SWPolynomial.variable(index)) == wu_formula(i, index)

    @settings(max_examples=10, deadline=None)
    @given(st.lists(st.sampled_from(SMALL_MONOMIALS), min_size=1, max_size=3, unique_by=repr),
           st.sampled_from([2, 4]))
    def test_splitting_agrees_with_cartan(self, monomials, i):
        poly = sum(monomials, SWPolynomial.zero())
        assert sq_by_splitting(i, poly) == sq_on_sw(i, poly)

    def test_total_square(self):
        assert total_sq(W2, 4) == W2 + W2 ** 2

    def test_table_report(self):
        report = verify_sq_on_sw(8)
        assert report.passed, report.violations


class TestWuFromSW:
    def test_low_degrees(self):
        v = wu_from_sw(6)
        assert v[0] == SWPolynomial.one()
        assert v[2] == W2
        assert v[4] == W4 + W2 ** 2
        assert v[6] == W2 * W4
        assert all(v[j].is_zero() for j in (1, 3, 5))

    def test_round_trip(self):
        assert check_round_trip(6)

    def test_specific_total(self):
        v = wu_from_sw(4, total=SWPolynomial.one() + W2 + W2 ** 2)
        assert v[4].is_zero()


class TestModels:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_projective_models_validate(self, n):
        model = projective_space_model(n)
        assert validate_action(model.ring, model.action).passed

    def test_projective_plane_tangent(self):
        model = projective_space_model(2)
        ring = model.ring
        assert np.array_equal(model.total_tangent(), ring.vector({"1": 1, "h": 1, "h^2": 1}))

    @pytest.mark.parametrize("n", [1, 3])
    def test_trivial_tangent(self, n):
        model = projective_space_model(n)
        assert model.tangent == {}
        assert np.array_equal(model.total_tangent(), model.ring.unit_vector())

    def test_evaluate(self):
        model = projective_space_model(2)
        ring = model.ring
        assert not evaluate_sw(W4 + W2 ** 2, ring, model.tangent).any()
        assert np.array_equal(evaluate_sw(SWPolynomial.one(), ring, model.tangent), ring.unit_vector())

    @pytest.mark.parametrize("name", ["P1", "P2", "P3", "P2xP2", "torus"])
    def test_wu_theorem(self, name):
        report = verify_wu_theorem(ModelFactory.get_model(name))
        assert report.passed, report.violations

    def test_wrong_tangent_is_reported(self):
        model = projective_space_model(2)
        report = verify_wu_theorem(CharacteristicModel(model.ring, model.action, {}))
        axioms = {v.axiom for v in report.violations}
        assert {"Wu theorem", "Wu routes"} <= axioms

    def test_factory(self):
        assert ModelFactory.get_model("P2").name == "P2"
        assert ModelFactory.get_model("P2xP1").ring.dim == 3
        assert torus_model().name == "torus"
        assert "torus" in ModelFactory.available_models()
        assert product_space_model(1, 1).ring.is_perfect()

    @pytest.mark.parametrize("name", ["Q2", "P0", "P1xP0"])
    def test_unknown_model(self, name):
        with pytest.raises(ConfigurationError):
            ModelFactory.get_model(name)
