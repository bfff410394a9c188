"""Alphabets, finite words and elementary word operations.

Words are stored as tuples of dense letter indices together with the
alphabet they live over.  Symbol names only matter at the boundary
(parsing, printing, serialization).
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


class AlphabetMismatch(ValueError):
    """Raised when an operation mixes words over different alphabets."""


class Alphabet:
    """An ordered, non-empty inventory of distinct symbol names.

    Two alphabets compare equal when their symbol sequences are equal.
    """

    __slots__ = ("symbols", "_index", "_hash")

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        if not symbols:
            raise ValueError("an alphabet must be non-empty")
        for s in symbols:
            if not isinstance(s, str) or not s:
                raise ValueError(f"symbol names must be non-empty strings, got {s!r}")
            if any(ch.isspace() for ch in s):
                raise ValueError(f"symbol names may not contain whitespace: {s!r}")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})
        object.__setattr__(self, "_hash", hash(symbols))

    def __setattr__(self, name, value):
        raise AttributeError("Alphabet is immutable")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, symbol) -> bool:
        return symbol in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.symbols == other.symbols

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.symbols)!r})"

    def __reduce__(self):
        return (Alphabet, (self.symbols,))

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} not in {self!r}") from None

    def symbol(self, index: int) -> str:
        return self.symbols[index]

    def tokenize(self, text: str) -> list[str]:
        """Split `text` into symbol names by greedy longest match.

        Whitespace between symbols is ignored, so both ``"a2a1"`` and
        ``"a2 a1"`` parse to ``["a2", "a1"]``.
        """
        by_length = sorted(self.symbols, key=len, reverse=True)
        out = []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            for s in by_length:
                if text.startswith(s, i):
                    out.append(s)
                    i += len(s)
                    break
            else:
                raise ValueError(f"cannot parse {text[i:]!r} over {self!r}")
        return out

    def word(self, spelling: str | Sequence[str] = "") -> "Word":
        """Build a word from a string or a sequence of symbol names."""
        if isinstance(spelling, str):
            spelling = self.tokenize(spelling)
        return Word(self, tuple(self.index(s) for s in spelling))

    def all_words(self, n: int) -> Iterator["Word"]:
        from itertools import product

        for letters in product(range(len(self)), repeat=n):
            yield Word(self, letters)


class Word:
    """A finite, possibly empty, word over an :class:`Alphabet`.

    Parameters
    ----------
    alphabet : Alphabet
    letters : sequence of int
        Letter indices into `alphabet`.
    """

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet: Alphabet, letters: Iterable[int] = ()):
        letters = tuple(letters)
        k = len(alphabet)
        for a in letters:
            if not (isinstance(a, int) and 0 <= a < k):
                raise ValueError(f"letter index {a!r} invalid for {alphabet!r}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "letters", letters)

    @classmethod
    def _trusted(cls, alphabet: Alphabet, letters: tuple) -> "Word":
        # Skips validation; callers guarantee indices are in range.
        w = object.__new__(cls)
        object.__setattr__(w, "alphabet", alphabet)
        object.__setattr__(w, "letters", letters)
        return w

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word._trusted(self.alphabet, self.letters[item])
        return self.letters[item]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        return hash(self.letters)

    def __add__(self, other: "Word") -> "Word":
        _check_same(self, other)
        return Word._trusted(self.alphabet, self.letters + other.letters)

    def __mul__(self, k: int) -> "Word":
        return Word._trusted(self.alphabet, self.letters * k)

    def __reduce__(self):
        return (Word, (self.alphabet, self.letters))

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(self.alphabet.symbols[a] for a in self.letters)

    def sort_key(self) -> tuple[str, ...]:
        """Key ordering words lexicographically by symbol name."""
        return self.symbols

    def __str__(self) -> str:
        return "".join(self.symbols)

    def __repr__(self) -> str:
        return f"Word({' '.join(self.symbols)!r})"


def _check_same(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"{u.alphabet!r} != {v.alphabet!r}")


def sorted_words(words: Iterable[Word]) -> list[Word]:
    return sorted(words, key=Word.sort_key)


def chop(w: Word, r: int) -> Word:
    """Delete the length-`r` prefix and suffix of `w`.

    Returns the empty word when ``2 * r >= len(w)``.
    """
    if r < 0:
        raise ValueError("chop radius must be non-negative")
    if 2 * r >= len(w):
        return w[0:0]
    return w[r : len(w) - r]


def _smallest_period(seq: Sequence) -> int:
    # KMP failure function; the smallest period is n - border(n).
    n = len(seq)
    fail = [0] * (n + 1)
    fail[0] = -1
    k = -1
    for i in range(n):
        while k >= 0 and seq[k] != seq[i]:
            k = fail[k]
        k += 1
        fail[i + 1] = k
    return n - fail[n]


def root_length(seq: Sequence) -> int:
    """Length of the primitive root of a non-empty sequence."""
    n = len(seq)
    p = _smallest_period(seq)
    return p if n % p == 0 else n


def primitive_root(w: Word) -> tuple[Word, int]:
    """Return ``(v, k)`` with ``w == v * k`` and `k` maximal.

    Raises
    ------
    ValueError
        If `w` is empty.
    """
    if not len(w):
        raise ValueError("the empty word has no primitive root")
    p = root_length(w.letters)
    return w[:p], len(w) // p


def is_primitive(w: Word) -> bool:
    return len(w) > 0 and root_length(w.letters) == len(w)


def factors_of_word(w: Word, n: int) -> set[Word]:
    """All distinct length-`n` factors of `w`; empty when ``n > len(w)``."""
    if n < 0:
        raise ValueError("factor length must be non-negative")
    t = w.letters
    return {Word._trusted(w.alphabet, t[i : i + n]) for i in range(len(t) - n + 1)}


def least_rotation(seq: tuple) -> tuple:
    """Lexicographically least cyclic rotation; a canonical key for conjugacy."""
    if not seq:
        return seq
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


INVERSE_SUFFIX = "^-1"


class DoubledAlphabet(Alphabet):
    """The alphabet ``A ∪ A^-1`` built from a positive alphabet ``A``.

    Positive letters keep their indices ``0..k-1``; the inverse of letter
    ``i`` has index ``i + k`` and symbol name ``<name>^-1``.
    """

    __slots__ = ("positive",)

    def __init__(self, positive: Alphabet):
        if isinstance(positive, DoubledAlphabet):
            raise ValueError("alphabet is already doubled")
        inverses = [s + INVERSE_SUFFIX for s in positive.symbols]
        super().__init__(positive.symbols + tuple(inverses))
        object.__setattr__(self, "positive", positive)

    def __reduce__(self):
        return (DoubledAlphabet, (self.positive,))

    @property
    def rank(self) -> int:
        return len(self.positive)

    def inverse(self, letter: int) -> int:
        k = len(self.positive)
        return letter + k if letter < k else letter - k

    def is_positive(self, letter: int) -> bool:
        return letter < len(self.positive)

    def inverse_letters(self, letters: Sequence[int]) -> tuple[int, ...]:
        """Letters of the formal inverse: reversed, each letter inverted."""
        k = len(self.positive)
        return tuple(a + k if a < k else a - k for a in reversed(letters))

    @classmethod
    def coerce(cls, alphabet: Alphabet) -> "DoubledAlphabet":
        """Recover the doubled structure of an alphabet spelled as ``A ∪ A^-1``."""
        if isinstance(alphabet, DoubledAlphabet):
            return alphabet
        syms = alphabet.symbols
        k, odd = divmod(len(syms), 2)
        if odd or any(syms[k + i] != syms[i] + INVERSE_SUFFIX for i in range(k)):
            raise ValueError(f"{alphabet!r} is not a doubled alphabet")
        return cls(Alphabet(syms[:k]))
