# tests/test_gauge.py
import json

import pytest
from hypothesis import given, settings, strategies as st

from gauge_tools import pipeline
from gauge_tools.algebra import GaugeMap, dual, gauge_algebra, quotient, sub, tensor
from gauge_tools.base import BKTwist
from gauge_tools.codec import gauge_from_model, gauge_to_model, load_gauge, pipeline_to_model
from gauge_tools.cohomology import global_sections
from gauge_tools.constructions import (bk_twist, constant_module, rees_of_filtration, skyscraper, structure_gauge,
                                       supersingular_h, uniformizer)
from gauge_tools.pipeline import supersingular_pipeline
from gauge_tools.render import render_diagram
from gauge_tools.witt import WittRing
from modules.exceptions import (ConfigurationError, GaugeStructureError, PipelineFailure,
                                UnsupportedConfigurationError)
from modules.linalg import identity

F4 = WittRing(2, 2, 3)
twists = st.integers(min_value=-3, max_value=3)


@pytest.fixture(scope="module")
def result():
    return supersingular_pipeline(2, 3)


class TestWittRing:
    def test_rejects_bad_parameters(self):
        with pytest.raises(ConfigurationError):
            WittRing(4)
        with pytest.raises(ConfigurationError):
            WittRing(2, 0)

    def test_f4_modulus(self):
        assert F4.polynomial == [1, 1, 1]
        F4.validate()

    def test_frobenius_on_generator(self):
        x = F4.gen()
        assert F4.equal(F4.frobenius(x), F4.element([-1, -1]))
        assert F4.equal(F4.frobenius(x, 2), x)

    @given(st.tuples(st.integers(0, 1), st.integers(0, 1)))
    def test_teichmuller_is_fixed_by_q_power(self, residue):
        a = F4.teichmuller(residue)
        assert F4.equal(F4.power(a, F4.q), a)
        assert F4.residue(a) == residue

    @given(st.lists(st.integers(0, 7), min_size=2, max_size=2), st.lists(st.integers(0, 7), min_size=2, max_size=2))
    @settings(max_examples=30, deadline=None)
    def test_frobenius_is_multiplicative(self, a, b):
        a, b = F4.element(a), F4.element(b)
        assert F4.equal(F4.frobenius(F4.mul(a, b)), F4.mul(F4.frobenius(a), F4.frobenius(b)))

    @given(st.lists(st.integers(0, 7), min_size=2, max_size=2))
    @settings(max_examples=30, deadline=None)
    def test_inverse(self, a):
        a = F4.element(a)
        if not F4.is_unit(a):
            with pytest.raises(ZeroDivisionError):
                F4.inverse(a)
            return
        assert F4.equal(F4.mul(a, F4.inverse(a)), F4.one())

    def test_odd_prime_modulus(self):
        witt = WittRing(3, 2, 2)
        assert witt.polynomial == [1, 0, 1]
        witt.validate()


class TestReesConstruction:
    def test_structure_gauge(self):
        O = structure_gauge(F4)
        assert O.window == (0, 0)
        assert O.verify().passed

    def test_filtration_must_decrease(self):
        with pytest.raises(GaugeStructureError) as exc:
            rees_of_filtration(2, [identity(2) * 2, identity(2)], 2)
        assert exc.value.witness["weight"] == 1

    def test_filtration_must_contain_p_multiples(self):
        with pytest.raises(GaugeStructureError) as exc:
            rees_of_filtration(2, [identity(2) * 4], 2)
        assert exc.value.witness["weight"] == 0

    def test_h_diagram(self):
        H = supersingular_h(F4).module
        for n in range(-2, 4):
            assert H.free_rank(n) == 2
            assert H.is_iso("t", n) == (n <= 0)
            assert H.is_iso("u", n) == (n >= 1)
        assert [H.colength(n) for n in range(-1, 4)] == [0, 0, 1, 3, 5]
        assert H.coherence_bounds() == (0, 1)

    def test_h_axioms(self):
        assert supersingular_h(F4).verify().passed

    def test_semilinearity_needs_multiplicative_frobenius(self):
        witt = WittRing(2, 2, 3)
        # x ↦ 2x 는 덧셈만 보존
        witt._frobenius_basis = [witt.one(), 2 * witt.gen()]
        report = structure_gauge(witt).verify_semilinearity()
        assert not report.passed
        assert {v.axiom for v in report.violations} == {"F(λx) = φ(λ)F(x)"}

    def test_uniformizer_squares_to_p(self):
        varpi = uniformizer(3)
        assert (varpi.dot(varpi) == identity(2) * 3).all()

    def test_skyscraper(self):
        delta = skyscraper(F4)
        assert delta.module.dimensions(range(-2, 3)) == [0, 0, 1, 0, 0]
        assert delta.module.is_zero_map("u", 0) and delta.module.is_zero_map("t", 0)
        assert delta.verify().passed
        assert skyscraper(F4, twist=-1).module.dimensions(range(-1, 4)) == [0, 0, 1, 0, 0]


class TestGaugeAlgebra:
    @given(twists, twists)
    @settings(max_examples=20, deadline=None)
    def test_twists_add(self, a, b):
        O = structure_gauge(F4)
        assert tensor(O.twist(a), O.twist(b)).same_as(O.twist(a + b))

    def test_unit_for_tensor(self):
        O, H = structure_gauge(F4), supersingular_h(F4)
        assert tensor(O, H).same_as(H)
        assert tensor(H, O).same_as(H)
        assert gauge_algebra("tensor", O.twist(0), H).same_as(H)

    @given(twists, twists)
    @settings(max_examples=10, deadline=None)
    def test_bk_twist_composes(self, a, b):
        H = supersingular_h(F4)
        assert BKTwist(n=a) + BKTwist(n=b) == BKTwist(n=a + b)
        assert (BKTwist(n=a) + BKTwist(n=b)).apply(H).same_as(H.twist(a).twist(b))
        assert bk_twist(bk_twist(H, a), -a).same_as(H)

    def test_dual_of_h(self):
        H = supersingular_h(F4)
        H_dual = dual(H)
        assert H_dual.window == (-1, 0)
        shifted = H.twist(1).module
        assert [H_dual.module.colength(n) for n in range(-3, 3)] == [shifted.colength(n) for n in range(-3, 3)]
        assert dual(H_dual).same_as(H)

    def test_dual_needs_torsion_free(self):
        with pytest.raises(GaugeStructureError):
            dual(skyscraper(F4))

    def test_unknown_operation(self):
        with pytest.raises(ConfigurationError):
            gauge_algebra("cone", structure_gauge(F4))

    def test_mismatched_rings(self):
        with pytest.raises(ConfigurationError):
            tensor(structure_gauge(WittRing(2, 1, 1)), supersingular_h(F4))

    def test_sub_requires_containment(self):
        O = structure_gauge(F4)
        with pytest.raises(GaugeStructureError) as exc:
            sub(O, constant_module(2, [[1]]).twist(-1))
        assert exc.value.witness["weight"] == 1

    def test_quotient_by_uniformizer(self):
        H = supersingular_h(F4)
        M = GaugeMap(H, H, H.gluing).cokernel(name="M")
        assert M.module.dimensions(range(-2, 4)) == [1] * 6
        assert quotient(H, H.module.scaled(2)).module.dimensions(range(-1, 3)) == [2] * 4

    def test_non_commuting_map(self):
        H = supersingular_h(F4)
        projection = GaugeMap(H, H, [[1, 0], [0, 0]])
        report = projection.verify()
        assert not report.passed
        assert "F∘Φ = Φ∘F" in [v.axiom for v in report.violations]
        with pytest.raises(GaugeStructureError):
            projection.cokernel()


class TestGlobalSections:
    @pytest.mark.parametrize("p", [2, 3])
    def test_structure_gauge(self, p):
        sections = global_sections(structure_gauge(WittRing(p, 1, 2)))
        assert (sections.h0, sections.h1) == (1, 1)

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("n", [-3, -2, -1, 1, 2, 3])
    def test_twists_vanish(self, p, n):
        sections = global_sections(structure_gauge(WittRing(p, 1, 2)).twist(n))
        assert (sections.h0, sections.h1) == (0, 0)

    def test_skyscraper(self):
        sections = global_sections(skyscraper(WittRing(2, 1, 2)))
        assert (sections.h0, sections.h1) == (1, 0)

    def test_needs_prime_field(self):
        with pytest.raises(UnsupportedConfigurationError):
            global_sections(structure_gauge(F4))


class TestSupersingularPipeline:
    def test_m(self, result):
        assert result.m.module.dimensions(range(-2, 4)) == [1] * 6
        assert result.details["gluing_scalar"] % 2 == 1

    def test_end_chain(self, result):
        assert result.end_chain.quotient_lengths == {0: (1, 3), 1: (0, 4), 2: (1, 3)}

    def test_m_tilde(self, result):
        assert result.m_tilde.module.dimensions(range(-1, 4)) == [2, 2, 3, 2, 2]

    def test_m_prime(self, result):
        assert result.m_prime.module.dimensions(range(-2, 5)) == [1, 1, 1, 2, 1, 1, 1]
        assert result.line.module.dimensions(range(-2, 5)) == [1] * 7

    def test_delta(self, result):
        delta = result.delta.module
        assert delta.dimensions(range(-2, 5)) == [0, 0, 0, 1, 0, 0, 0]
        assert delta.is_zero_map("u", 1) and delta.is_zero_map("t", 1)

    def test_shortcut(self, result):
        assert result.shortcut is True
        assert "section" in result.details

    def test_all_stages_are_gauges(self, result):
        for X in (result.h, result.m, result.end_chain.end, result.end_chain.eichler, result.m_tilde,
                  result.m_prime, result.delta):
            assert X.verify().passed, X.name

    def test_odd_prime_has_no_shortcut(self):
        odd = supersingular_pipeline(3, 2)
        assert odd.shortcut is False
        assert odd.delta.module.dimensions(range(0, 3)) == [0, 1, 0]

    def test_table_mismatch_reports_weight(self, monkeypatch):
        monkeypatch.setitem(pipeline.M_TILDE_DIMENSIONS, 1, 4)
        with pytest.raises(PipelineFailure) as exc:
            supersingular_pipeline(2, 3)
        assert exc.value.weight == 1

    def test_summary(self, result):
        summary = pipeline_to_model(result)
        assert [stage.name for stage in summary.stages][-1] == "δ{-1}"
        assert summary.shortcut


class TestRender:
    def test_structure_gauge(self):
        assert render_diagram(structure_gauge(F4), margin=1) == "\n".join([
            "weight |  -1 |   0 |   1",
            "piece  |   W |   W |   W",
            "index  |   0 |   0 |   1",
            "u ->   |   p |   ~ |   ~",
            "<- t   |   ~ |   ~ | inc",
        ])

    def test_m(self, result):
        assert render_diagram(result.m, margin=1) == "\n".join([
            "weight | -1 |  0 |  1 |  2",
            "piece  |  k |  k |  k |  k",
            "u ->   |  0 |  0 |  ~ |  ~",
            "<- t   |  ~ |  ~ |  0 |  0",
        ])

    def test_h_pieces(self):
        text = render_diagram(supersingular_h(F4))
        assert "W^2" in text
        assert text == render_diagram(supersingular_h(F4))


class TestCodec:
    def test_round_trip(self, result):
        for X in (structure_gauge(F4), supersingular_h(F4), skyscraper(F4), result.m, result.m_tilde):
            model = gauge_to_model(X)
            assert gauge_from_model(model).same_as(X)
            assert load_gauge(model.model_dump_json()).same_as(X)

    def test_window_mismatch(self):
        payload = gauge_to_model(supersingular_h(F4)).model_dump()
        payload["window"] = [0, 2]
        with pytest.raises(GaugeStructureError):
            load_gauge(json.dumps(payload))

    def test_tampered_arrow(self, result):
        model = gauge_to_model(result.m)
        model.pieces[0].u = [[1]]
        with pytest.raises(GaugeStructureError) as exc:
            gauge_from_model(model)
        assert exc.value.witness["weight"] == 0
