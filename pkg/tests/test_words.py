import pickle
from itertools import product

import pytest
from hypothesis import given, strategies as st

from symcomplex.words import (
    Alphabet,
    AlphabetMismatch,
    DoubledAlphabet,
    Word,
    chop,
    factors_of_word,
    is_primitive,
    least_rotation,
    primitive_root,
    sorted_words,
)

ABC = Alphabet("abc")
AB = Alphabet("ab")


def W(s, A=ABC):
    return A.word(s)


class TestAlphabet:
    def test_rejects_empty_and_duplicates(self):
        with pytest.raises(ValueError):
            Alphabet([])
        with pytest.raises(ValueError):
            Alphabet(["a", "a"])
        with pytest.raises(ValueError):
            Alphabet(["a b"])

    def test_index_symbol_bijection(self):
        A = Alphabet(["x1", "x2", "y"])
        assert [A.symbol(A.index(s)) for s in A] == list(A.symbols)
        with pytest.raises(ValueError):
            A.index("z")

    def test_tokenize_longest_match(self):
        A = Alphabet(["a1", "a10", "a"])
        assert A.tokenize("a10a1 a") == ["a10", "a1", "a"]
        with pytest.raises(ValueError):
            A.tokenize("b")

    def test_immutable_and_picklable(self):
        with pytest.raises(AttributeError):
            ABC.symbols = ("z",)
        assert pickle.loads(pickle.dumps(ABC)) == ABC


class TestWord:
    def test_validation(self):
        with pytest.raises(ValueError):
            Word(AB, (0, 2))

    def test_concat_checks_alphabet(self):
        assert W("ab") + W("c") == W("abc")
        with pytest.raises(AlphabetMismatch):
            W("ab") + W("ab", AB)

    def test_slicing_and_str(self):
        w = W("abcab")
        assert w[1:3] == W("bc")
        assert str(w) == "abcab"
        assert len(w[0:0]) == 0

    def test_sorted_by_symbol_names(self):
        A = Alphabet(["b", "a"])
        ws = [A.word("b"), A.word("a")]
        assert [str(w) for w in sorted_words(ws)] == ["a", "b"]


class TestChop:
    def test_examples(self):
        assert chop(W("abcab"), 1) == W("bca")
        assert chop(W("abca"), 2) == W("")
        assert chop(W("ab"), 0) == W("ab")

    def test_negative_radius(self):
        with pytest.raises(ValueError):
            chop(W("ab"), -1)

    def test_length_exhaustive(self):
        for n in range(0, 9):
            for letters in product(range(3), repeat=n):
                w = Word(ABC, letters)
                for r in range(0, 6):
                    assert len(chop(w, r)) == max(n - 2 * r, 0)


class TestPrimitiveRoot:
    def test_examples(self):
        assert primitive_root(W("ababab")) == (W("ab"), 3)
        assert primitive_root(W("abc")) == (W("abc"), 1)
        assert primitive_root(W("aaaa")) == (W("a"), 4)

    def test_empty(self):
        with pytest.raises(ValueError):
            primitive_root(W(""))

    def test_exhaustive_binary(self):
        for n in range(1, 13):
            for letters in product(range(2), repeat=n):
                w = Word(AB, letters)
                v, k = primitive_root(w)
                assert v * k == w
                assert primitive_root(v) == (v, 1)
                # brute force: no shorter divisor period reproduces w
                shortest = min(d for d in range(1, n + 1) if n % d == 0 and letters[:d] * (n // d) == letters)
                assert len(v) == shortest

    @given(st.lists(st.integers(0, 2), min_size=1, max_size=12), st.integers(1, 4))
    def test_power_roundtrip(self, letters, k):
        w = Word(ABC, letters)
        v, e = primitive_root(w * k)
        assert is_primitive(v)
        assert v * e == w * k
        assert e % k == 0


class TestFactors:
    def test_examples(self):
        assert factors_of_word(W("abab"), 2) == {W("ab"), W("ba")}
        assert factors_of_word(W("aaaa"), 3) == {W("aaa")}
        assert factors_of_word(W("abc"), 0) == {W("")}
        assert factors_of_word(W("ab"), 3) == set()

    @given(st.lists(st.integers(0, 2), max_size=12), st.integers(0, 13))
    def test_count_bound(self, letters, n):
        w = Word(ABC, letters)
        assert len(factors_of_word(w, n)) <= max(len(w) - n + 1, 0)


def test_least_rotation_is_conjugacy_key():
    assert least_rotation((1, 0, 1)) == (0, 1, 1)
    assert least_rotation((0, 1, 1)) == least_rotation((1, 1, 0))
    assert least_rotation(()) == ()


class TestDoubledAlphabet:
    def test_involution(self):
        D = DoubledAlphabet(AB)
        assert D.symbols == ("a", "b", "a^-1", "b^-1")
        for i in range(len(D)):
            assert D.inverse(i) != i
            assert D.inverse(D.inverse(i)) == i
        assert D.inverse_letters((0, 1)) == (3, 2)

    def test_coerce(self):
        D = DoubledAlphabet(AB)
        assert DoubledAlphabet.coerce(Alphabet(D.symbols)) == D
        with pytest.raises(ValueError):
            DoubledAlphabet.coerce(ABC)
        with pytest.raises(ValueError):
            DoubledAlphabet(D)
