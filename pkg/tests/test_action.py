# tests/test_action.py
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from action_tools.action import (apply_operation, einfty_edge_value, from_generators, total_square_action,
                                 validate_action)
from action_tools.base import SteenrodAction
from action_tools.codec import instance_to_model, load_instance, load_mod_n, mod_n_to_model
from action_tools.flavor import compare_flavors, flavor_convert
from action_tools.pairing import (pairing_matrix_n, pairing_n, reduction_chain_steps, validate_mod_n,
                                  verify_alternating, verify_top_formula)
from action_tools.rings import monomial_ring_mod_n, truncated_polynomial_ring
from action_tools.wu import verify_wu_duality, wu_classes
from models.ring import Flavor
from modules.exceptions import ActionTableError, ArgumentError, ConfigurationError
from steenrod_tools.algebra import element, sq
from steenrod_tools.base import BETA
from steenrod_tools.serialization import dump_model
from tests.strategies import mod_vectors


def projective(n):
    ring = truncated_polynomial_ring(2, [n])
    h = ring.basis_vector("h")
    action = from_generators(ring, {"e": {}, "h": {1: ring.multiply(h, h)}})
    return ring, action


def product_model(m, n):
    ring = truncated_polynomial_ring(2, [m, n])
    values = {"e": {}}
    for name in ("h1", "h2"):
        x = ring.basis_vector(name)
        values[name] = {1: ring.multiply(x, x)}
    return ring, from_generators(ring, values)


def torus_instance(bockstein, level=2, with_action=True):
    """Λ[e]⊗F[a,b]/(a²,b²), β_n(x) = e·φ(x)"""
    generators = [("e", (1, 0), 1), ("a", (2, 1), 1), ("b", (2, 1), 1)]
    ring = monomial_ring_mod_n(level, generators, bockstein=bockstein, name="torus")
    if with_action:
        reduction = ring.reduction()
        ring.attach_action(from_generators(reduction, {"e": {}, "a": {}, "b": {}}))
    return ring


def einfty_table(ring, action):
    """경계값과 i = b 대각선으로 만든 E∞ 작용 테이블"""
    powers = {}
    for i in range(1, action.max_index + 1):
        matrix = np.zeros((ring.rank, ring.rank), dtype=np.int64)
        for k in range(ring.rank):
            x = ring.basis_vector(k)
            edge = einfty_edge_value(ring, i, x)
            if edge is not None:
                matrix[:, k] = edge
            elif i == ring.bidegrees[k][1]:
                matrix[:, k] = action.apply(i, x)
        powers[i] = matrix
    return SteenrodAction(ring, action.beta, powers)


VALID = {"a": {"e*a": 1}, "b": {"e*b": 3}}
CORRUPTED = {"a": {"e*a": 1, "e*b": 2}, "b": {"e*b": 3}}


class TestRings:
    def test_projective_plane_shape(self):
        ring = truncated_polynomial_ring(2, [2])
        assert ring.labels == ["1", "e", "h", "e*h", "h^2", "e*h^2"]
        assert ring.top_bidegree == (5, 2)
        assert ring.piece((5, 2)) == [5]
        ring.check()
        assert ring.is_perfect()

    def test_product_model_is_perfect(self):
        ring = truncated_polynomial_ring(2, [2, 1])
        ring.check()
        assert ring.dim == 3
        assert ring.is_perfect()

    def test_bad_action_shape(self):
        ring = truncated_polynomial_ring(2, [1])
        with pytest.raises(ActionTableError):
            SteenrodAction(ring, np.zeros((2, 2)), {})

    def test_odd_generator_with_power(self):
        from action_tools.rings import monomial_ring
        with pytest.raises(ActionTableError):
            monomial_ring(2, [("e", (1, 0), 2)])


class TestValidateAction:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_projective_spaces_pass(self, n):
        ring, action = projective(n)
        report = validate_action(ring, action)
        assert report.passed, report.violations

    def test_product_model_passes(self):
        ring, action = product_model(2, 2)
        assert validate_action(ring, action).passed

    def test_p_th_power_law_violation(self):
        ring, action = projective(2)
        powers = {i: m.copy() for i, m in action.powers.items()}
        powers[1][:, ring.labels.index("h")] = 0
        report = validate_action(ring, SteenrodAction(ring, action.beta, powers))
        assert not report.passed
        assert "p-th power law" in {v.axiom for v in report.violations}

    def test_p0_violation(self):
        ring, action = projective(2)
        powers = dict(action.powers)
        powers[0] = np.zeros((ring.rank, ring.rank), dtype=np.int64)
        report = validate_action(ring, SteenrodAction(ring, action.beta, powers))
        assert [v.axiom for v in report.violations if v.axiom == "P^0 = id"]

    def test_instability_violation(self):
        ring, action = projective(2)
        powers = {i: m.copy() for i, m in action.powers.items()}
        powers[2][ring.labels.index("e*h^2"), ring.labels.index("e")] = 1
        report = validate_action(ring, SteenrodAction(ring, action.beta, powers))
        axioms = {v.axiom for v in report.violations}
        assert "instability" in axioms or "bidegree" in axioms

    def test_inconsistent_generator_values(self):
        ring = truncated_polynomial_ring(2, [2])
        with pytest.raises(ActionTableError):
            from_generators(ring, {"e": {}, "h": {1: ring.basis_vector("e")}})

    def test_generators_must_generate(self):
        ring = truncated_polynomial_ring(2, [2])
        with pytest.raises(ActionTableError):
            from_generators(ring, {"h": {1: ring.multiply(ring.basis_vector("h"), ring.basis_vector("h"))}})


class TestOperations:
    def test_apply_operation(self):
        ring, action = projective(3)
        h = ring.basis_vector("h")
        assert np.array_equal(apply_operation(ring, action, h, sq(2)), ring.basis_vector("h^2"))
        h2 = ring.basis_vector("h^2")
        assert not apply_operation(ring, action, h2, sq(2)).any()
        assert not apply_operation(ring, action, h, element(2, "k", (BETA,))).any()

    def test_tau_terms_act_as_zero(self):
        ring, action = projective(2)
        x = element(2, "O", (1,), tau=1)
        assert not apply_operation(ring, action, ring.basis_vector("h"), x).any()

    def test_prime_mismatch(self):
        ring, action = projective(2)
        with pytest.raises(ConfigurationError):
            apply_operation(ring, action, ring.basis_vector("h"), element(3, "k", (1,)))

    def test_total_square(self):
        ring, action = projective(2)
        h = ring.basis_vector("h")
        assert np.array_equal(total_square_action(ring, action, h), ring.vector({"h": 1, "h^2": 1}))

    def test_einfty_edge_values(self):
        ring, _ = projective(2)
        h = ring.basis_vector("h")
        assert np.array_equal(einfty_edge_value(ring, 1, h), ring.basis_vector("h^2"))
        assert not einfty_edge_value(ring, 2, h).any()
        assert einfty_edge_value(ring, 0, ring.basis_vector("h^2")) is None


class TestFlavor:
    def test_equal_index_and_weight(self):
        for base in ("k", "O"):
            conversion = flavor_convert(1, 1, base=base)
            assert conversion.tau_power == 0
            assert conversion.describe() == "Pe^1 = Ps^1"

    def test_k_point_vanishing(self):
        conversion = flavor_convert(2, 1, base="k")
        assert conversion.lhs == Flavor.SYN
        assert conversion.scalar == 0

    def test_o_point_tau(self):
        conversion = flavor_convert(1, 2, base="O")
        assert (conversion.lhs, conversion.tau_power) == (Flavor.EINFTY, 1)
        assert conversion.describe() == "Pe^1 = tau*Ps^1"
        assert not flavor_convert(1, 2, direction=Flavor.SYN, base="O").expressible

    def test_odd_prime_power(self):
        assert flavor_convert(3, 1, base="O", p=3).tau_power == 4

    def test_negative_index(self):
        with pytest.raises(ConfigurationError):
            flavor_convert(-1, 0)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=8), st.integers(min_value=0, max_value=8))
    def test_k_point_scalar(self, i, b):
        assert flavor_convert(i, b).scalar == (1 if i == b else 0)

    def test_tables_agree_with_conversion(self):
        ring, action = projective(4)
        assert compare_flavors(ring, action, einfty_table(ring, action)).passed

    def test_same_tables_disagree_off_diagonal(self):
        # P^4 에서 Ps^1(h^3) = h^4 이지만 Pe^1(h^3) 은 K-점에서 0
        ring, action = projective(4)
        report = compare_flavors(ring, action, action)
        assert not report.passed
        assert any(v.witness["element"] == "h^3" for v in report.violations)


class TestWu:
    def test_projective_plane(self):
        ring, action = projective(2)
        v = wu_classes(ring, action)
        assert np.array_equal(v[0], ring.unit_vector())
        assert np.array_equal(v[2], ring.basis_vector("h"))
        assert not v[4].any()
        for i in range(ring.dim + 2, len(v)):
            assert not v[i].any()

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_duality_holds(self, n):
        ring, action = projective(n)
        assert verify_wu_duality(ring, action).passed

    def test_product_duality(self):
        ring, action = product_model(2, 2)
        assert verify_wu_duality(ring, action).passed


class TestModN:
    def test_valid_instance(self):
        ring = torus_instance(VALID)
        report = validate_mod_n(ring)
        assert report.passed, report.violations
        assert pairing_matrix_n(ring) == [[0, 3], [1, 0]]

    def test_pairing_examples(self):
        ring = torus_instance(VALID)
        a = ring.basis_vector("a")
        assert pairing_n(ring, a, ring.zero()) == 0
        assert pairing_n(ring, a, ring.basis_vector("b")) == 3

    @settings(max_examples=50, deadline=None)
    @given(mod_vectors(2, 4), mod_vectors(2, 4))
    def test_skew_symmetry(self, x, y):
        ring = torus_instance(VALID)
        u = ring.vector({"a": x[0], "b": x[1]})
        v = ring.vector({"a": y[0], "b": y[1]})
        assert (pairing_n(ring, u, v) + pairing_n(ring, v, u)) % 4 == 0

    def test_wrong_bidegree(self):
        ring = torus_instance(VALID)
        with pytest.raises(ArgumentError):
            pairing_n(ring, ring.basis_vector("e"), ring.basis_vector("a"))

    def test_alternating_and_top_formula(self):
        ring = torus_instance(VALID)
        assert verify_alternating(ring).passed
        assert verify_top_formula(ring).passed
        assert verify_top_formula(ring, ring.zero()).passed

    def test_corrupted_bockstein(self):
        ring = torus_instance(CORRUPTED)
        assert validate_mod_n(ring).passed
        assert not verify_alternating(ring).passed
        report = verify_top_formula(ring)
        assert not report.passed
        assert report.violations[0].axiom == "top formula"

    def test_missing_action(self):
        ring = torus_instance(VALID, with_action=False)
        with pytest.raises(ConfigurationError):
            verify_top_formula(ring)

    def test_broken_derivation_is_reported(self):
        ring = torus_instance({"a": {"e*a": 1}, "b": {"e*b": 1}})
        axioms = {v.axiom for v in validate_mod_n(ring).violations}
        assert "derivation" in axioms

    def test_reduction_chain(self):
        ring = torus_instance(VALID)
        u = ring.vector({"a": 1, "b": 1})
        report = reduction_chain_steps(ring, u)
        assert report.passed
        assert len(report.details["steps"]) == 7
        assert not reduction_chain_steps(torus_instance(CORRUPTED), ring.basis_vector("a")).passed


class TestCodec:
    def test_instance_round_trip(self):
        ring, action = projective(2)
        text = dump_model(instance_to_model(ring, action))
        loaded, loaded_action = load_instance(text)
        assert loaded.labels == ring.labels
        assert np.array_equal(loaded.structure, ring.structure)
        assert np.array_equal(loaded_action.powers[1], action.powers[1])
        assert validate_action(loaded, loaded_action).passed

    def test_mod_n_round_trip(self):
        ring = torus_instance(VALID)
        loaded = load_mod_n(dump_model(mod_n_to_model(ring)))
        assert np.array_equal(loaded.bockstein, ring.bockstein)
        assert verify_top_formula(loaded).passed

    def test_unknown_label(self):
        text = ('{"ring": {"p": 2, "dim": 0, "basis": [{"label": "1", "bidegree": [0, 0]}], '
                '"products": [["1", "x", "1", 1]], "trace": {"1": 1}}}')
        with pytest.raises(ActionTableError):
            load_instance(text)
