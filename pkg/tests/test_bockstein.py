# tests/test_bockstein.py
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from action_tools.action import validate_action
from action_tools.pairing import validate_mod_n
from bockstein_tools.codec import complex_to_model, group_to_model, load_complex, complex_from_model
from bockstein_tools.complexes import (GradedComplex, ModnClass, bockstein_n, bockstein_page_two, cohomology,
                                       cohomology_group, derived_quotient, is_trivial, mod_class, mod_cohomology,
                                       secondary_bockstein, universal_model)
from bockstein_tools.dga import (degree_ranks, exterior_block, formal_model, point_block, polynomial_block,
                                 power_operation, random_commutative_dga, tensor_all, torsion_surface_model)
from bockstein_tools.equivariant import (EquivariantSquare, classifying_map, distributivity_decomposition,
                                         equivariant_square, total_cohomology, total_power, universal_classes)
from bockstein_tools.export import export_pd_instance, export_with_representatives
from bockstein_tools.verify import (compare_bocksteins, reduction_chain, verify_mat_form_all,
                                    verify_mat_form_general, verify_naturality)
from models.complex import ComplexModel
from modules.exceptions import (ArgumentError, BocksteinObstructionError, ComplexValidationError, ExportError,
                                UnsupportedConfigurationError)
from modules.linalg import invariant_factors

SEEDS = range(20)


def degenerate_algebra():
    """최고 조각은 랭크 1 이지만 z 가 쌍짓기에서 빠지는 대수"""
    basis = [("1", (0, 0)), ("e", (1, 0)), ("h", (2, 1)), ("z", (2, 1)), ("e*h", (3, 1)), ("e*z", (3, 1)),
             ("h^2", (4, 2)), ("e*h^2", (5, 2))]
    products = [("1", label, label, 1) for label, _ in basis]
    products += [(label, "1", label, 1) for label, _ in basis if label != "1"]
    for left, right, result in [("e", "h", "e*h"), ("e", "z", "e*z"), ("h", "h", "h^2"), ("e", "h^2", "e*h^2"),
                                ("h", "e*h", "e*h^2")]:
        products.append((left, right, result, 1))
        if left != right:
            products.append((right, left, result, 1))
    model = ComplexModel(name="degenerate", basis=[{"label": label, "bidegree": b} for label, b in basis],
                         products=products)
    return complex_from_model(model)


def universal_coefficients(complex_, degree, modulus):
    """H^k(C)⊗Z/N ⊕ Tor(H^{k+1}(C), Z/N) 의 불변인자"""
    factors = []
    for d in cohomology_group(complex_, degree).invariant_factors:
        factors.append(modulus if d == 0 else int(np.gcd(d, modulus)))
    for d in cohomology_group(complex_, degree + 1).invariant_factors:
        if d:
            factors.append(int(np.gcd(d, modulus)))
    return invariant_factors([f for f in factors if f != 1])


class TestCohomology:
    def test_point(self):
        point = GradedComplex(["1"], [(0, 0)], [[0]], name="point")
        assert cohomology(point)[(0, 0)].invariant_factors == [0]

    def test_universal_model(self):
        model = universal_model(2, 0, 2)
        assert list(cohomology(model)) == [(3, 0)]
        assert cohomology(model)[(3, 0)].invariant_factors == [4]
        assert mod_cohomology(model, 2, 4).invariant_factors == [4]
        assert mod_cohomology(model, 3, 4).invariant_factors == [4]

    def test_modulus_must_be_at_least_two(self):
        with pytest.raises(ArgumentError):
            mod_cohomology(universal_model(2, 0, 1), 2, 1)

    def test_differential_must_square_to_zero(self):
        with pytest.raises(ComplexValidationError):
            GradedComplex(["a", "b", "c"], [(0, 0), (1, 0), (2, 0)], [[0, 0, 0], [1, 0, 0], [0, 1, 0]])

    def test_differential_bidegree(self):
        with pytest.raises(ComplexValidationError):
            GradedComplex(["a", "b"], [(0, 0), (1, 1)], [[0, 0], [2, 0]])

    @pytest.mark.parametrize("n", [1, 2])
    def test_derived_quotient_matches_mod_cohomology(self, n):
        model = universal_model(2, 0, 2)
        cone = derived_quotient(model, n)
        for degree in (1, 2, 3):
            integral = cohomology_group(cone, degree).invariant_factors
            assert invariant_factors(integral) == invariant_factors(mod_cohomology(model, degree, 2 ** n).invariant_factors)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_universal_coefficients(self, seed):
        algebra = random_commutative_dga(seed)
        degrees = sorted({deg for deg, _ in algebra.bidegrees})
        for modulus in (2, 4):
            for degree in degrees:
                computed = invariant_factors(cohomology_group(algebra, degree, modulus).invariant_factors)
                assert computed == universal_coefficients(algebra, degree, modulus)

    def test_random_dga_is_reproducible(self):
        assert random_commutative_dga(3).labels == random_commutative_dga(3).labels
        assert max(degree_ranks(random_commutative_dga(3)).values()) <= 8

    def test_random_corpus_varies(self):
        algebras = [random_commutative_dga(seed) for seed in SEEDS]
        assert all(max(degree_ranks(algebra).values()) <= 8 for algebra in algebras)
        assert len({tuple(algebra.labels) for algebra in algebras}) >= 5

    def test_mod_class_requires_cocycle(self):
        model = universal_model(2, 0, 1)
        with pytest.raises(ComplexValidationError):
            mod_class(model, [1, 0], 4)
        assert mod_class(model, [1, 0], 2).bidegree == (2, 0)


class TestBockstein:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_universal_class(self, n):
        model = universal_model(4, 1, n)
        beta = bockstein_n(n, mod_class(model, [1, 0], 2 ** n))
        assert beta.bidegree == (5, 1)
        assert list(beta.representative) == [0, 1]

    def test_unit(self):
        algebra = formal_model([2])
        unit = mod_class(algebra, algebra.unit_vector(), 4)
        assert is_trivial(bockstein_n(2, unit))

    def test_modulus_mismatch(self):
        with pytest.raises(ArgumentError):
            bockstein_n(2, mod_class(universal_model(2, 0, 2), [1, 0], 2))

    @pytest.mark.parametrize("seed", SEEDS)
    def test_beta_squared_vanishes(self, seed):
        algebra = random_commutative_dga(seed)
        for n in (1, 2):
            for bidegree, group in cohomology(algebra, 2 ** n).items():
                for g in group.generators():
                    u = ModnClass(algebra, 2 ** n, bidegree, np.array([c % 2 ** n for c in g], dtype=object))
                    assert is_trivial(bockstein_n(n, bockstein_n(n, u)))

    @pytest.mark.parametrize("seed", SEEDS)
    def test_naturality_along_classifying_maps(self, seed):
        algebra = random_commutative_dga(seed)
        for bidegree, group in cohomology(algebra, 4).items():
            for g in group.generators():
                u = ModnClass(algebra, 4, bidegree, np.array([c % 4 for c in g], dtype=object))
                model, phi = classifying_map(algebra, u, 2)
                report = verify_naturality(phi, model, algebra, 2)
                assert report.passed, report.violations

    def test_naturality_rejects_non_chain_map(self):
        model = universal_model(2, 0, 2)
        algebra = polynomial_block("x", "y", 2, 0, 2, 3)
        phi = np.zeros((algebra.rank, 2), dtype=object)
        phi[algebra.index("x"), 0] = 1
        with pytest.raises(ComplexValidationError):
            verify_naturality(phi, model, algebra, 2)

    @pytest.mark.parametrize("degree", [2, 3])
    def test_page_two_of_universal_model(self, degree):
        assert bockstein_page_two(universal_model(2, 0, 2), 2, degree).moduli == []

    def test_page_two_of_formal_model(self):
        algebra = formal_model([2])
        assert bockstein_page_two(algebra, 2, 2).invariant_factors == [4]


class TestSecondaryBockstein:
    def test_zero_class(self):
        model = universal_model(2, 0, 2)
        zero = ModnClass(model, 4, (2, 0), model.zero())
        assert is_trivial(secondary_bockstein(2, zero))

    def test_obstruction(self):
        with pytest.raises(BocksteinObstructionError):
            secondary_bockstein(2, mod_class(universal_model(2, 0, 2), [1, 0], 4))

    def test_square_of_polynomial_generator(self):
        algebra = polynomial_block("x", "y", 2, 1, 1, 3)
        u = mod_class(algebra, algebra.basis_vector("x^2"), 2)
        result = secondary_bockstein(1, u)
        assert result.bidegree == (5, 2)
        assert np.array_equal(result.representative % 2, algebra.basis_vector("x*y") % 2)

    @pytest.mark.parametrize("degree", [2, 4])
    @pytest.mark.parametrize("weight", [0, 1])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_symmetric_square(self, degree, weight, n):
        square, s, expected = universal_classes(degree, weight, n)
        u = mod_class(square, s, 2 ** n)
        assert is_trivial(bockstein_n(n, u))
        result = secondary_bockstein(n, u)
        difference = ModnClass(square, 2 ** n, result.bidegree, (result.representative - expected) % 2 ** n)
        images = [bockstein_n(n, mod_class(square, g, 2 ** n)).representative
                  for g in cohomology_group(square, result.bidegree[0] - 1, 2 ** n).generators()]
        assert is_trivial(difference, images)


class TestEquivariantSquare:
    @pytest.mark.parametrize("degree", [2, 3])
    def test_differential_squares_to_zero(self, degree):
        square = equivariant_square(universal_model(degree, 0, 2))
        assert not square.differential.dot(square.differential).any()

    def test_small_algebra(self):
        square = EquivariantSquare(polynomial_block("x", "y", 2, 1, 1, 3), 3)
        assert square.rank == 4 * 25
        assert not square.differential.dot(square.differential).any()

    def test_yy_differential(self):
        square = equivariant_square(universal_model(2, 0, 2))
        image = square.d(square.element(1, "y", "y"))
        assert np.array_equal(image, 2 * square.element(0, "y", "y"))

    def test_truncation_must_be_positive(self):
        with pytest.raises(ArgumentError):
            EquivariantSquare(universal_model(2, 0, 2), 0)

    def test_distributivity(self):
        parts = distributivity_decomposition(2, 0, 2)
        assert parts["xx"][4] == [4]
        assert parts["xx"][3] == [2]
        assert parts["xy"][5] == [4]
        assert 4 not in parts["xy"]
        assert parts["yy"][6] == [2]
        assert parts["yy"][5] == [2]

    @pytest.mark.parametrize("a, n", [(2, 1), (2, 2), (4, 2), (3, 2)])
    def test_summands_add_up(self, a, n):
        parts = distributivity_decomposition(a, 0, n)
        total = total_cohomology(a, 0, n)
        degrees = set(total) | {deg for part in parts.values() for deg in part}
        for degree in degrees:
            combined = [f for part in parts.values() for f in part.get(degree, [])]
            assert invariant_factors(combined) == invariant_factors(total.get(degree, []))


class TestPowerOperations:
    def test_square_and_vanishing(self):
        algebra = formal_model([2])
        h = mod_class(algebra, algebra.basis_vector("h"), 2)
        assert np.array_equal(power_operation(algebra, h, 1).representative % 2, algebra.basis_vector("h^2"))
        top = power_operation(algebra, h, 2)
        assert top.bidegree == (6, 2)
        assert not top.representative.any()

    def test_odd_prime_is_unsupported(self):
        algebra = formal_model([1])
        h = mod_class(algebra, algebra.basis_vector("h"), 3)
        with pytest.raises(UnsupportedConfigurationError):
            power_operation(algebra, h, 1, p=3)

    def test_total_power(self):
        algebra = polynomial_block("x", "y", 2, 1, 2, 3)
        u = mod_class(algebra, algebra.basis_vector("x"), 4)
        model, phi = classifying_map(algebra, u, 2)
        square, psi = total_power(phi, model, algebra)
        assert np.array_equal(psi.dot(square.element(0, "x", "x")), algebra.basis_vector("x^2"))
        assert np.array_equal(psi.dot(square.element(0, "x", "y")), algebra.basis_vector("x*y"))
        assert not psi.dot(square.element(1, "y", "y")).any()

    def test_total_power_rejects_non_chain_map(self):
        algebra = polynomial_block("x", "y", 2, 1, 2, 3)
        model = universal_model(2, 1, 2)
        phi = np.zeros((algebra.rank, 2), dtype=object)
        phi[algebra.index("x"), 0] = 1
        with pytest.raises(ComplexValidationError):
            total_power(phi, model, algebra)


class TestMatForm:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_polynomial_generator(self, n):
        algebra = polynomial_block("x", "y", 2, 1, n, 3)
        report = verify_mat_form_general(algebra, mod_class(algebra, algebra.basis_vector("x"), 2 ** n), n)
        assert report.passed, report.violations

    def test_class_with_trivial_bockstein(self):
        algebra = formal_model([2])
        report = verify_mat_form_general(algebra, mod_class(algebra, algebra.basis_vector("h"), 4), 2)
        assert report.passed, report.violations
        assert report.details["secondary"] == "0"
        assert report.details["rhs"] == "0"

    def test_odd_degree(self):
        algebra = formal_model([2])
        with pytest.raises(ArgumentError):
            verify_mat_form_general(algebra, mod_class(algebra, algebra.basis_vector("e"), 4), 2)

    @pytest.mark.parametrize("seed", SEEDS)
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_random_dgas(self, seed, n):
        algebra = random_commutative_dga(seed)
        report = verify_mat_form_all(algebra, n)
        assert report.passed, report.violations
        for bidegree, group in cohomology(algebra, 2).items():
            for g in group.generators():
                v = ModnClass(algebra, 2, bidegree, np.array([c % 2 for c in g], dtype=object))
                assert compare_bocksteins(v, n).passed

    def test_torsion_surface(self):
        report = verify_mat_form_all(torsion_surface_model(2, mu=(1, 1)), 2)
        assert report.passed, report.violations


class TestCompareBocksteins:
    def test_zero(self):
        model = universal_model(2, 0, 2)
        report = compare_bocksteins(ModnClass(model, 2, (2, 0), model.zero()), 2)
        assert report.passed
        assert report.details["trivial"]

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_polynomial_generator(self, n):
        algebra = polynomial_block("x", "y", 2, 1, 1, 3)
        report = compare_bocksteins(mod_class(algebra, algebra.basis_vector("x"), 2), n)
        assert report.passed, report.violations
        assert not report.details["trivial"]

    def test_requires_mod_two(self):
        model = universal_model(2, 0, 2)
        with pytest.raises(ArgumentError):
            compare_bocksteins(mod_class(model, [1, 0], 4), 2)

    @settings(max_examples=10, deadline=None)
    @given(st.sampled_from(list(SEEDS)), st.sampled_from([1, 2, 3]))
    def test_random_complexes(self, seed, n):
        algebra = random_commutative_dga(seed)
        for bidegree, group in cohomology(algebra, 2).items():
            for g in group.generators():
                v = ModnClass(algebra, 2, bidegree, np.array([c % 2 for c in g], dtype=object))
                assert compare_bocksteins(v, n).passed


class TestExport:
    def test_torsion_surface(self):
        exported = export_with_representatives(torsion_surface_model(2), 2)
        ring = exported.ring
        assert ring.rank == 8
        assert (ring.level, ring.dim) == (2, 2)
        assert {"1", "e", "a*b", "e*a*b"} <= set(ring.labels)
        assert len(ring.piece((2, 1))) == 2
        assert set(exported.representatives) == set(ring.labels)
        assert all(ring.beta_n(ring.basis_vector(k)).any() for k in ring.piece((2, 1)))
        report = validate_mod_n(ring)
        assert report.passed, report.violations

    def test_formal_model(self):
        ring = export_pd_instance(formal_model([2, 2]), 2)
        assert ring.rank == 18
        assert ring.dim == 4
        assert not ring.bockstein.any()
        assert ring.reduction().is_perfect()

    def test_projective_plane_action(self):
        ring = export_pd_instance(formal_model([2]), 1)
        action = ring.action()
        h = ring.reduction().basis_vector("h")
        assert np.array_equal(action.apply(1, h), ring.reduction().basis_vector("h^2"))
        assert validate_action(ring.reduction(), action).passed

    def test_top_piece_is_boundary_free(self):
        ring = export_pd_instance(torsion_surface_model(2, mu=(1, 3)), 2)
        below_top = (ring.top_bidegree[0] - 1, ring.top_bidegree[1])
        assert all(not ring.beta_n(ring.basis_vector(k)).any() for k in ring.piece(below_top))

    def test_degenerate_pairing(self):
        with pytest.raises(ExportError) as info:
            export_pd_instance(degenerate_algebra(), 2)
        assert info.value.witness["pieces"]

    def test_torsion_is_rejected(self):
        with pytest.raises(ExportError):
            export_pd_instance(torsion_surface_model(2, k=1), 2)

    def test_top_piece_shape(self):
        algebra = tensor_all([point_block(), exterior_block("z", 2, 0)])
        with pytest.raises(ExportError):
            export_pd_instance(algebra, 2)


class TestReductionChain:
    @pytest.mark.parametrize("mu", [(1, -1), (1, 3)])
    def test_torsion_surface(self, mu):
        report = reduction_chain(torsion_surface_model(2, mu=mu), 2)
        assert report.passed, report.violations

    def test_formal_model(self):
        report = reduction_chain(formal_model([2, 2]), 2)
        assert report.passed, report.violations

    def test_boundary_on_top_is_reported(self):
        report = reduction_chain(torsion_surface_model(2, mu=(1, 1)), 2)
        axioms = {v.axiom for v in report.violations}
        assert not report.passed
        assert {"top boundary", "alternating"} <= axioms


class TestCodec:
    def test_round_trip(self):
        algebra = torsion_surface_model(2)
        restored = load_complex(complex_to_model(algebra).model_dump_json())
        assert restored.labels == algebra.labels
        assert np.array_equal(restored.differential, algebra.differential)
        assert np.array_equal(restored.structure, algebra.structure)

    def test_plain_complex(self):
        restored = load_complex(complex_to_model(universal_model(2, 0, 3)).model_dump_json())
        assert not hasattr(restored, "structure")
        assert restored.differential[1, 0] == 8

    def test_invalid_json(self):
        with pytest.raises(ComplexValidationError):
            load_complex('{"basis": 3}')

    def test_unknown_label(self):
        text = '{"basis": [{"label": "x", "bidegree": [0, 0]}], "differential": [["x", "y", 1]]}'
        with pytest.raises(ComplexValidationError):
            load_complex(text)

    def test_group_model(self):
        group = mod_cohomology(universal_model(2, 0, 2), 3, 4)
        model = group_to_model(group)
        assert model.invariant_factors == [4]
        assert len(model.generators) == 1
