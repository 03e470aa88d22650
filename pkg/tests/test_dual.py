# tests/test_dual.py
import pytest
from hypothesis import given, settings

from modules.exceptions import TruncationError
from steenrod_tools.algebra import multiply, sq
from steenrod_tools.base import BETA, DualElement, SteenrodElement
from steenrod_tools.basis import admissible_basis
from steenrod_tools.dual import (dual_antipode, dual_coproduct, dual_multiply, pair, pairing_matrix, sigma)
from steenrod_tools.hopf import antipode, apply_each, coproduct, opposite
from steenrod_tools.serialization import dual_from_json, dual_to_model, dump_model
from steenrod_tools.words import bidegree_of, degree_of
from tests.strategies import admissible_words, bases


def xi(p, base, word):
    return DualElement.xi(p, base, word)


def basis_element(p, base, word):
    return SteenrodElement(p, base, {(word, 0): 1})


class TestPairing:
    def test_unit_pairing(self):
        assert pair(SteenrodElement.unit(2, "k"), xi(2, "k", ())) == {0: 1}

    def test_p3_pairing_after_reduction(self):
        x = SteenrodElement(3, "k", {((1, 1), 0): 1})
        assert pair(x, xi(3, "k", (2,))) == {0: 2}

    @pytest.mark.parametrize("p,bidegree", [(2, (4, 2)), (2, (7, 3)), (2, (9, 4)), (3, (9, 4)), (3, (10, 4))])
    def test_perfect_pairing(self, p, bidegree):
        matrix = pairing_matrix(p, "k", bidegree)
        n = len(admissible_basis(p, bidegree=bidegree))
        assert matrix == [[1 if i == j else 0 for j in range(n)] for i in range(n)]


class TestDualProduct:
    def test_unit(self):
        a = xi(2, "O", (BETA, 1)) + xi(2, "O", (2,))
        assert dual_multiply(xi(2, "O", ()), a) == a

    def test_beta_squared(self):
        b = (BETA,)
        assert dual_multiply(xi(2, "k", b), xi(2, "k", b)).is_zero()
        product = dual_multiply(xi(2, "O", b), xi(2, "O", b))
        assert pair(sq(2, "O"), product) == {1: 1}

    @settings(max_examples=80, deadline=None)
    @given(admissible_words(3, 8), admissible_words(3, 8))
    def test_graded_commutative_p3(self, a, b):
        sign = -1 if (degree_of(a, 3) * degree_of(b, 3)) % 2 else 1
        assert dual_multiply(xi(3, "k", a), xi(3, "k", b)) == dual_multiply(xi(3, "k", b), xi(3, "k", a)).scale(sign)

    @settings(max_examples=80, deadline=None)
    @given(admissible_words(2, 5), admissible_words(2, 5), admissible_words(2, 5), bases)
    def test_associative_p2(self, a, b, c, base):
        x, y, z = xi(2, base, a), xi(2, base, b), xi(2, base, c)
        assert dual_multiply(dual_multiply(x, y), z) == dual_multiply(x, dual_multiply(y, z))

    @settings(max_examples=60, deadline=None)
    @given(admissible_words(2, 6), admissible_words(2, 6), bases)
    def test_transpose_of_coproduct(self, a, b, base):
        product = dual_multiply(xi(2, base, a), xi(2, base, b))
        for gamma in admissible_basis(2, degree=degree_of(a, 2) + degree_of(b, 2)):
            assert pair(basis_element(2, base, gamma), product) == coproduct(basis_element(2, base, gamma)).coefficient((a, b))

    def test_truncation(self):
        with pytest.raises(TruncationError):
            dual_multiply(xi(2, "k", (2,)), xi(2, "k", (2,)), degree_bound=6)


class TestDualCoproduct:
    def test_unit_and_primitive(self):
        assert dual_coproduct(xi(2, "k", ())).terms == {(((), ()), 0): 1}
        assert dual_coproduct(xi(2, "k", (BETA,))).terms == {(((BETA,), ()), 0): 1, (((), (BETA,)), 0): 1}

    @pytest.mark.parametrize("p,base,degree", [(2, "k", 4), (2, "O", 4), (2, "O", 6), (3, "k", 9)])
    def test_transpose_of_multiply(self, p, base, degree):
        for gamma in admissible_basis(p, degree=degree):
            delta = dual_coproduct(xi(p, base, gamma))
            for d in range(degree + 1):
                for a in admissible_basis(p, degree=d):
                    for b in admissible_basis(p, degree=degree - d):
                        product = multiply(basis_element(p, base, a), basis_element(p, base, b))
                        assert delta.coefficient((a, b)) == product.coefficient(gamma)

    def test_truncation(self):
        with pytest.raises(TruncationError):
            dual_coproduct(xi(2, "k", (4,)), degree_bound=4)


class TestSigma:
    def test_examples(self):
        assert sigma(SteenrodElement.unit(2, "k")) == SteenrodElement.unit(2, "k")
        assert sigma(sq(1)) == sq(1)
        assert sigma(sq(2)) == sq(2)

    @pytest.mark.parametrize("p,base,max_degree", [(2, "k", 16), (2, "O", 16), (3, "k", 16)])
    def test_sigma_is_antipode_and_involution(self, p, base, max_degree):
        for word in admissible_basis(p, max_degree=max_degree):
            x = basis_element(p, base, word)
            assert sigma(x) == antipode(x)
            assert sigma(sigma(x)) == x

    @settings(max_examples=50, deadline=None)
    @given(admissible_words(2, 8), admissible_words(2, 8), bases)
    def test_anti_automorphism(self, a, b, base):
        x, y = basis_element(2, base, a), basis_element(2, base, b)
        assert sigma(multiply(x, y)) == multiply(sigma(y), sigma(x))

    @settings(max_examples=30, deadline=None)
    @given(admissible_words(3, 9), admissible_words(3, 9))
    def test_anti_automorphism_odd(self, a, b):
        x, y = basis_element(3, "k", a), basis_element(3, "k", b)
        sign = -1 if (degree_of(a, 3) * degree_of(b, 3)) % 2 else 1
        assert sigma(multiply(x, y)) == multiply(sigma(y), sigma(x)).scale(sign)

    @pytest.mark.parametrize("base", ["k", "O"])
    def test_coproduct_compatibility(self, base):
        for word in admissible_basis(2, max_degree=16):
            x = basis_element(2, base, word)
            assert apply_each(coproduct(x), sigma) == opposite(coproduct(sigma(x)))

    def test_dual_antipode_on_primitive(self):
        assert dual_antipode(xi(3, "k", (BETA,))) == -xi(3, "k", (BETA,))


def test_dual_json_round_trip():
    a = xi(2, "O", (BETA, 1)).scale(1, tau=2) + xi(2, "O", (2,))
    assert dual_from_json(dump_model(dual_to_model(a))) == a


def test_basis_bidegrees_are_consistent():
    for word in admissible_basis(2, max_degree=8):
        deg, wt = bidegree_of(word, 2)
        assert word in admissible_basis(2, bidegree=(deg, wt))
