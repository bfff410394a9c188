import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import full_words, long_iterate_factors, naive_sft_words, safe_margin
from symcomplex import corpus
from symcomplex.morphisms import Morphism
from symcomplex.subshifts import (
    SFT,
    ComplexityTable,
    Double,
    FullShift,
    MorphicImage,
    PrimitiveSubstitution,
    check_primitive,
    complexity,
    complexity_table,
    language,
)
from symcomplex.words import Alphabet

AB = Alphabet("ab")


def strs(words):
    return {str(w) for w in words}


class TestLanguage:
    def test_full_shift(self):
        assert strs(language(FullShift(AB), 2)) == {"aa", "ab", "ba", "bb"}

    def test_sft_direct_exclusion(self):
        assert strs(language(SFT.from_words(AB, ["bb"]), 2)) == {"aa", "ab", "ba"}

    def test_fibonacci_two_words(self):
        X = corpus.fibonacci_subshift()
        got = {w.letters for w in language(X, 2)}
        assert got == long_iterate_factors({0: (1,), 1: (1, 0)}, 2)
        assert len(got) == 3

    def test_zero_window_rejected(self):
        for X in corpus.subshifts().values():
            with pytest.raises(ValueError):
                language(X, 0)

    def test_transient_words_excluded(self):
        # Nothing may follow c, so no biinfinite point contains it.
        A = Alphabet("abc")
        X = SFT.from_words(A, ["ca", "cb", "cc"])
        assert all("c" not in str(w) for w in language(X, 4))
        assert complexity(X, 4) == 16

    def test_empty_sft_rejected(self):
        with pytest.raises(ValueError):
            SFT.from_words(AB, ["a", "b"])

    def test_sink_without_return(self):
        # b is absorbing: b only before b, and a never after b.  Left-infinite
        # a-runs then b-runs are fine, so "ab" is in the language.
        X = SFT.from_words(AB, ["ba"])
        assert strs(language(X, 2)) == {"aa", "ab", "bb"}


class TestComplexity:
    def test_examples(self):
        assert complexity(FullShift(AB), 5) == 32
        gm = corpus.golden_mean()
        assert complexity(gm, 3) == len(naive_sft_words(2, [(1, 1)], 3)) == 5
        fib = corpus.fibonacci_subshift()
        assert complexity(fib, 7) == len(long_iterate_factors({0: (1,), 1: (1, 0)}, 7)) == 8

    def test_tables(self):
        assert complexity_table(FullShift(AB), 3).entries == {1: 2, 2: 4, 3: 8}
        assert complexity_table(Double(FullShift(AB)), 2).entries == {1: 4, 2: 8}
        assert complexity_table(corpus.fibonacci_subshift(), 4).entries == {1: 2, 2: 3, 3: 4, 4: 5}

    def test_counting_matches_enumeration(self):
        for X in list(corpus.subshifts().values()) + [Double(corpus.golden_mean())]:
            for n in range(1, 11):
                assert complexity(X, n, "auto") == complexity(X, n, "enumerate")

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            complexity(FullShift(AB), 2, "guess")

    def test_big_integers(self):
        assert complexity(FullShift(AB), 200) == 2**200


class TestPrimitivity:
    def test_fibonacci_exponent_matches_matrix_powers(self):
        sigma = corpus.fibonacci_morphism()
        M = np.array(sigma.incidence_matrix())
        oracle = next(k for k in range(1, 5) if (np.linalg.matrix_power(M, k) > 0).all())
        chk = check_primitive(sigma)
        assert chk.is_primitive and chk.exponent == oracle == 2

    def test_non_primitive(self):
        assert not check_primitive(Morphism.from_dict({"a": ["a", "b"], "b": ["b"]})).is_primitive
        assert not check_primitive(Morphism.from_dict({"a": ["a", "a"], "b": ["b", "b"]})).is_primitive

    def test_non_primitive_substitution_rejected(self):
        with pytest.raises(ValueError):
            PrimitiveSubstitution(Morphism.from_dict({"a": ["a", "b"], "b": ["b"]}))


SUBSTITUTIONS = {
    "fibonacci": {0: (1,), 1: (1, 0)},
    "thue_morse": {0: (0, 1), 1: (1, 0)},
    "tribonacci": {0: (0, 1), 1: (0, 2), 2: (0,)},
    "period_doubling": {0: (0, 1), 1: (0, 0)},
}


@pytest.mark.parametrize("name", sorted(SUBSTITUTIONS))
def test_substitution_matches_long_iterate(name):
    images = SUBSTITUTIONS[name]
    A = Alphabet([f"s{i}" for i in range(len(images))])
    X = PrimitiveSubstitution(Morphism(A, A, [images[i] for i in range(len(A))]))
    for n in range(1, 11):
        assert X.words(n) == long_iterate_factors(images, n)


SFTS = [
    (2, [(1, 1)]),
    (2, [(0, 0, 0)]),
    (2, [(0, 1, 0), (1, 1)]),
    (3, [(2, 0), (2, 1), (2, 2)]),
    (3, [(0, 0), (1, 1), (2, 2)]),
]


@pytest.mark.parametrize("k,forbidden", SFTS)
def test_sft_matches_naive(k, forbidden):
    A = Alphabet([f"x{i}" for i in range(k)])
    X = SFT(A, frozenset(forbidden))
    K = safe_margin(k, forbidden)
    for n in range(1, 9):
        assert X.words(n) == naive_sft_words(k, forbidden, n, K)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.lists(st.integers(0, 1), min_size=1, max_size=3).map(tuple), min_size=1, max_size=3)
)
def test_random_binary_sft_matches_naive(forbidden):
    A = Alphabet("ab")
    try:
        X = SFT(A, frozenset(forbidden))
    except ValueError:
        assert naive_sft_words(2, forbidden, 1, safe_margin(2, forbidden)) == set()
        return
    K = safe_margin(2, forbidden)
    for n in range(1, 6):
        assert X.words(n) == naive_sft_words(2, forbidden, n, K)


CORPUS = list(corpus.subshifts().items()) + [
    ("doubling image", MorphicImage(corpus.full_shift(), corpus.doubling())),
    ("double golden", Double(corpus.golden_mean())),
]


@pytest.mark.parametrize("name,X", CORPUS, ids=[c[0] for c in CORPUS])
def test_factorial_and_extendable(name, X):
    top = 10 if name in ("full", "double golden") else 12
    for n in range(2, top + 1):
        words = X.words(n)
        shorter = X.words(n - 1)
        assert {w[1:] for w in words} | {w[:-1] for w in words} <= shorter
        longer = X.words(n + 2) if n + 2 <= top else None
        if longer is not None:
            assert {u[1:-1] for u in longer} == words


@pytest.mark.parametrize("name,X", list(corpus.subshifts().items()))
def test_doubling_identity(name, X):
    for n in range(1, 13):
        assert complexity(Double(X), n, "enumerate") == 2 * complexity(X, n, "enumerate")


def test_full_shift_words_brute():
    assert FullShift(AB).words(4) == full_words(2, 4)


class TestTable:
    def test_invariants_and_csv(self):
        t = complexity_table(corpus.golden_mean(), 8)
        assert t.violations() == []
        back = ComplexityTable.from_csv(t.to_csv(), t.label)
        assert back == t and back.digest() == t.digest()
        assert t.to_csv().splitlines()[:3] == ["n,p", "1,2", "2,3"]

    def test_violations_detected(self):
        t = ComplexityTable("t", {1: 2, 2: 5, 3: 4})
        bad = t.violations()
        assert any("p(3) < p(2)" in v for v in bad)
        assert any("p(2) > p(1) * p(1)" in v for v in bad)
        assert ComplexityTable("z", {1: 0}).violations()
