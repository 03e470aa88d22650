# tests/strategies.py
from hypothesis import strategies as st

from steenrod_tools.base import BETA
from steenrod_tools.basis import admissible_basis

bases = st.sampled_from(["k", "O"])
odd_primes = st.sampled_from([3, 5])


def letters(max_index: int = 4):
    return st.one_of(st.just(BETA), st.integers(min_value=1, max_value=max_index))


def words(max_length: int = 4, max_index: int = 4):
    """허용 여부와 무관한 임의 단어"""
    return st.lists(letters(max_index), max_size=max_length).map(tuple)


def admissible_words(p: int, max_degree: int):
    return st.sampled_from(admissible_basis(p, max_degree=max_degree))


def mod_vectors(length: int, modulus: int):
    return st.lists(st.integers(min_value=0, max_value=modulus - 1), min_size=length, max_size=length)
