# tests/test_steenrod.py
import pytest
from hypothesis import given, settings, strategies as st

from modules.exceptions import ConfigurationError, WordFormatError
from steenrod_tools.adem import adem_reduce, binomial_mod
from steenrod_tools.algebra import counit, element, multiply, sq, total_square
from steenrod_tools.base import BETA, SteenrodElement
from steenrod_tools.basis import admissible_basis
from steenrod_tools.hopf import (antipode, coproduct, coproduct_on_factor, multiply_out, tensor_multiply)
from steenrod_tools.serialization import element_from_json, element_to_model, dump_model
from steenrod_tools.words import (bidegree_of, excess, format_element, from_sq, is_admissible, parse_terms,
                                  parse_word, to_sq)
from tests.strategies import admissible_words, bases, words


def basis_element(p, base, word):
    return SteenrodElement(p, base, {(word, 0): 1})


def brute_force_admissible(p, max_degree):
    """모든 문자열을 만든 뒤 허용 단어만 고르는 독립 열거"""
    found = []

    def grow(word, degree):
        # 허용 단어의 접두어는 허용 단어
        if not is_admissible(word, p):
            return
        found.append(word)
        if degree + 1 <= max_degree:
            grow(word + (BETA,), degree + 1)
        i = 1
        while degree + 2 * i * (p - 1) <= max_degree:
            grow(word + (i,), degree + 2 * i * (p - 1))
            i += 1

    grow((), 0)
    return found


def dual_dimensions(p, max_degree):
    """쌍대 대수 Λ[τ_k] ⊗ P[ξ_k] 의 차수별 차원 (|τ_k| = 2p^k − 1, |ξ_k| = 2(p^k − 1))"""
    dims = [1] + [0] * max_degree
    k = 0
    while 2 * p ** k - 1 <= max_degree:
        d = 2 * p ** k - 1
        for n in range(max_degree, d - 1, -1):
            dims[n] += dims[n - d]
        k += 1
    k = 1
    while 2 * (p ** k - 1) <= max_degree:
        d = 2 * (p ** k - 1)
        for n in range(d, max_degree + 1):
            dims[n] += dims[n - d]
        k += 1
    return dims


class TestWords:
    def test_bidegree_examples(self):
        assert bidegree_of((), 2) == (0, 0)
        assert bidegree_of((1,), 2) == (2, 1)
        assert bidegree_of((BETA, 2, 1), 2) == (7, 3)
        assert bidegree_of((BETA, 1), 3) == (5, 2)

    def test_admissibility_examples(self):
        assert is_admissible((1, BETA), 2)
        assert not is_admissible((1, 1), 2)
        assert not is_admissible((BETA, BETA), 2)
        assert is_admissible((2, 1), 2)
        assert not is_admissible((2, BETA, 1), 2)
        assert is_admissible((3, BETA, 1), 2)

    def test_sq_conversion(self):
        assert to_sq((BETA, 1)) == [3]
        assert to_sq((1, BETA)) == [2, 1]
        assert from_sq([5, 2]) == (BETA, 2, 1)
        assert from_sq([1]) == (BETA,)
        assert from_sq([0, 4]) == (2,)

    def test_parse_and_format(self):
        assert parse_word("Sq2 Sq2", 2) == (1, 1)
        assert parse_word("Sq3Sq1", 2) == (BETA, 1, BETA)
        assert parse_word("b P2 P1", 3) == (BETA, 2, 1)
        assert parse_word("beta P1", 3) == (BETA, 1)
        assert parse_word("1", 2) == ()
        x = adem_reduce(parse_terms("Sq2 Sq2", 2, "O"), 2, "O")
        assert format_element(x) == "tau*Sq3 Sq1"

    @pytest.mark.parametrize("text,p", [("Sq2", 3), ("Q2", 2), ("Sq2 ?", 2), ("", 2)])
    def test_parse_errors(self, text, p):
        with pytest.raises(WordFormatError):
            parse_word(text, p)

    def test_excess(self):
        assert excess((1, BETA), 2) == 1
        assert excess((2, 1), 2) == 2
        assert excess((BETA,), 2) == 1


class TestAdem:
    def test_binomial_lucas(self):
        assert binomial_mod(1, 2, 2) == 0
        assert binomial_mod(0, 0, 2) == 1
        assert binomial_mod(6, 3, 3) == 2  # C(6,3) = 20
        assert binomial_mod(5, 7, 5) == 0

    def test_sq2_sq2(self):
        assert adem_reduce((1, 1), 2, "k").is_zero()
        assert adem_reduce((1, 1), 2, "O") == SteenrodElement(2, "O", {((BETA, 1, BETA), 1): 1})

    def test_sq1_sq1(self):
        for base in ("k", "O"):
            assert multiply(sq(1, base), sq(1, base)).is_zero()

    def test_p3_p1_p1(self):
        assert adem_reduce((1, 1), 3, "k") == SteenrodElement(3, "k", {((2,), 0): 2})

    def test_p3_p1_beta_p1(self):
        expected = SteenrodElement(3, "k", {((BETA, 2), 0): 1, ((2, BETA), 0): 1})
        assert adem_reduce((1, BETA, 1), 3, "k") == expected

    def test_classical_relations(self):
        # Sq^2 Sq^3 = Sq^5 + Sq^4 Sq^1, Sq^3 Sq^2 = 0
        assert multiply(sq(2), sq(3)) == adem_reduce({(from_sq([5]), 0): 1, (from_sq([4, 1]), 0): 1}, 2, "k")
        assert multiply(sq(3), sq(2)).is_zero()
        assert multiply(sq(1), sq(2)) == sq(3)

    def test_admissible_concatenation(self):
        assert multiply(sq(3), sq(1)) == basis_element(2, "k", (BETA, 1, BETA))
        assert multiply(SteenrodElement.unit(2, "k"), sq(4)) == sq(4)

    def test_mismatched_prime(self):
        with pytest.raises(ConfigurationError):
            multiply(sq(2), element(3, "k", (1,)))

    @settings(max_examples=150, deadline=None)
    @given(words(max_length=4, max_index=4), bases)
    def test_reduction_is_canonical_and_homogeneous(self, word, base):
        x = adem_reduce(word, 2, base)
        deg, wt = bidegree_of(word, 2)
        for w, tau in x.terms:
            assert is_admissible(w, 2)
            assert bidegree_of(w, 2) == (deg, wt - tau)
        assert adem_reduce(x) == x

    @settings(max_examples=100, deadline=None)
    @given(words(max_length=3, max_index=3))
    def test_reduction_odd_prime_homogeneous(self, word):
        x = adem_reduce(word, 3, "k")
        for w, _ in x.terms:
            assert is_admissible(w, 3)
            assert bidegree_of(w, 3) == bidegree_of(word, 3)

    @settings(max_examples=200, deadline=None)
    @given(admissible_words(2, 7), admissible_words(2, 7), admissible_words(2, 6), bases)
    def test_associative_p2(self, a, b, c, base):
        x, y, z = (basis_element(2, base, w) for w in (a, b, c))
        assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))

    @settings(max_examples=100, deadline=None)
    @given(admissible_words(3, 9), admissible_words(3, 9), admissible_words(3, 9))
    def test_associative_p3(self, a, b, c):
        x, y, z = (basis_element(3, "k", w) for w in (a, b, c))
        assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))

    @pytest.mark.parametrize("p,base,total", [(2, "k", 20), (2, "O", 20), (3, "k", 18)])
    def test_associative_all_triples(self, p, base, total):
        words = [w for w in admissible_basis(p, max_degree=total) if w]
        degree = {w: bidegree_of(w, p)[0] for w in words}
        elements = {w: basis_element(p, base, w) for w in words}
        products = {}

        def product(a, b):
            if (a, b) not in products:
                products[(a, b)] = multiply(elements[a], elements[b])
            return products[(a, b)]

        for a in words:
            for b in words:
                if degree[a] + degree[b] >= total:
                    continue
                for c in words:
                    if degree[a] + degree[b] + degree[c] <= total:
                        assert multiply(product(a, b), elements[c]) == multiply(elements[a], product(b, c)), (a, b, c)

    def test_total_square(self):
        total = total_square(3)
        assert total == SteenrodElement.unit(2, "k") + sq(1) + sq(2) + sq(3)


class TestBasis:
    def test_small_bidegrees(self):
        assert admissible_basis(2, bidegree=(0, 0)) == [()]
        assert admissible_basis(3, bidegree=(1, 0)) == [(BETA,)]

    def test_degree_three_p2(self):
        basis = admissible_basis(2, max_degree=3)
        assert set(basis) == {(), (BETA,), (1,), (BETA, 1), (1, BETA)}
        assert basis[0] == ()

    @pytest.mark.parametrize("p,max_degree", [(2, 30), (3, 30), (5, 30)])
    def test_counts_match_brute_force(self, p, max_degree):
        brute = brute_force_admissible(p, max_degree)
        for degree in range(max_degree + 1):
            expected = sum(1 for w in brute if bidegree_of(w, p)[0] == degree)
            assert len(admissible_basis(p, degree=degree)) == expected

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_counts_match_dual_dimensions(self, p):
        dims = dual_dimensions(p, 30)
        for degree in range(31):
            assert len(admissible_basis(p, degree=degree)) == dims[degree]


class TestHopf:
    def test_coproduct_examples(self):
        assert coproduct(SteenrodElement.unit(2, "k")).terms == {(((), ()), 0): 1}
        assert coproduct(sq(2)).terms == {(((1,), ()), 0): 1, (((), (1,)), 0): 1}
        expected = {
            (((2,), ()), 0): 1, (((1,), (1,)), 0): 1, (((), (2,)), 0): 1,
            (((BETA, 1), (BETA,)), 1): 1, (((BETA,), (BETA, 1)), 1): 1,
        }
        assert coproduct(sq(4, "O")).terms == expected

    def test_beta_primitive(self):
        beta = element(3, "k", (BETA,))
        assert coproduct(beta).terms == {(((BETA,), ()), 0): 1, (((), (BETA,)), 0): 1}

    @settings(max_examples=60, deadline=None)
    @given(admissible_words(2, 10), bases)
    def test_coassociative_p2(self, word, base):
        delta = coproduct(basis_element(2, base, word))
        assert coproduct_on_factor(delta, 0) == coproduct_on_factor(delta, 1)

    @settings(max_examples=40, deadline=None)
    @given(admissible_words(3, 13))
    def test_coassociative_p3(self, word):
        delta = coproduct(basis_element(3, "k", word))
        assert coproduct_on_factor(delta, 0) == coproduct_on_factor(delta, 1)

    @settings(max_examples=80, deadline=None)
    @given(admissible_words(2, 6), admissible_words(2, 6), bases)
    def test_multiplicative_p2(self, a, b, base):
        x, y = basis_element(2, base, a), basis_element(2, base, b)
        assert coproduct(multiply(x, y)) == tensor_multiply(coproduct(x), coproduct(y))

    @settings(max_examples=40, deadline=None)
    @given(admissible_words(3, 9), admissible_words(3, 9))
    def test_multiplicative_p3(self, a, b):
        x, y = basis_element(3, "k", a), basis_element(3, "k", b)
        assert coproduct(multiply(x, y)) == tensor_multiply(coproduct(x), coproduct(y))

    def test_antipode_examples(self):
        assert antipode(SteenrodElement.unit(2, "k")) == SteenrodElement.unit(2, "k")
        assert antipode(sq(1)) == sq(1)
        assert antipode(sq(2)) == sq(2)
        beta = element(3, "k", (BETA,))
        assert antipode(beta) == -beta

    @pytest.mark.parametrize("p,base,max_degree", [(2, "k", 16), (2, "O", 16), (3, "k", 16)])
    def test_antipode_axiom(self, p, base, max_degree):
        for word in admissible_basis(p, max_degree=max_degree):
            x = basis_element(p, base, word)
            total = SteenrodElement.zero(p, base)
            for ((a, b), tau), c in coproduct(x).terms.items():
                total = total + multiply(antipode(SteenrodElement(p, base, {(a, tau): c})),
                                         basis_element(p, base, b))
            eps = counit(x)
            assert total == SteenrodElement(p, base, {((), e): c for e, c in eps.items()})

    @settings(max_examples=50, deadline=None)
    @given(admissible_words(2, 6), admissible_words(2, 6), bases)
    def test_antipode_anti_homomorphism(self, a, b, base):
        x, y = basis_element(2, base, a), basis_element(2, base, b)
        assert antipode(multiply(x, y)) == multiply(antipode(y), antipode(x))

    def test_multiply_out_of_coproduct(self):
        # m∘Δ(Sq^2) = 2·Sq^2 = 0 (p = 2)
        assert multiply_out(coproduct(sq(2))).is_zero()


class TestSerialization:
    def test_json_round_trip(self):
        x = adem_reduce({((1, 1), 0): 1, ((2,), 0): 1}, 2, "O")
        text = dump_model(element_to_model(x))
        assert element_from_json(text) == x

    def test_json_format(self):
        model = element_to_model(adem_reduce((1, 1), 2, "O"))
        data = model.model_dump(exclude_none=True)
        assert data == {"p": 2, "base": "O",
                        "terms": [{"coeff": [0, 1], "word": [{"beta": True}, {"P": 1}, {"beta": True}]}]}

    def test_bad_json(self):
        with pytest.raises(WordFormatError):
            element_from_json('{"p": 2, "base": "k", "terms": [{"coeff": [1], "word": [{"Q": 1}]}]}')
