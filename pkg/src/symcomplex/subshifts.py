"""Finite presentations of subshifts and their exact factor languages.

Every presentation can list ``L(X) ∩ A^n`` exactly for any window ``n >= 1``.
Internally languages are frozensets of letter-index tuples; the public
:func:`language` wraps them into :class:`~symcomplex.words.Word` objects.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, NamedTuple

from .morphisms import Morphism, image_factors
from .words import Alphabet, AlphabetMismatch, DoubledAlphabet, Word

Letters = tuple[int, ...]


def _check_window(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"window length must be a positive integer, got {n!r}")


class Subshift:
    """Base class of subshift presentations."""

    @property
    def alphabet(self) -> Alphabet:
        raise NotImplementedError

    def _words(self, n: int) -> frozenset[Letters]:
        raise NotImplementedError

    def words(self, n: int) -> frozenset[Letters]:
        """``L(X) ∩ A^n`` as letter-index tuples (memoized)."""
        _check_window(n)
        return _cached_words(self, n)

    def count(self, n: int) -> int:
        """``p_X(n)``; subclasses may count without enumerating."""
        return len(self.words(n))

    def contains(self, letters: Letters) -> bool:
        """Whether the word with these letters lies in ``L(X)``."""
        if not letters:
            return True
        return tuple(letters) in self.words(len(letters))

    def describe(self) -> str:
        raise NotImplementedError


@lru_cache(maxsize=1024)
def _cached_words(X: Subshift, n: int) -> frozenset[Letters]:
    return X._words(n)


@dataclass(frozen=True)
class FullShift(Subshift):
    """All biinfinite words over `alphabet`."""

    base: Alphabet

    @property
    def alphabet(self) -> Alphabet:
        return self.base

    def _words(self, n):
        return frozenset(product(range(len(self.base)), repeat=n))

    def count(self, n):
        _check_window(n)
        return len(self.base) ** n

    def contains(self, letters):
        return True

    def describe(self):
        return f"full({','.join(self.base.symbols)})"


@dataclass(frozen=True)
class SFT(Subshift):
    """Shift of finite type given by finitely many forbidden words.

    The language is read off the essential part of the graph of allowed
    blocks of length ``max(K - 1, 1)`` (``K`` the longest forbidden word):
    vertices lying on some biinfinite path.  Words that can only be
    extended finitely far are therefore excluded.
    """

    base: Alphabet
    forbidden: frozenset[Letters]

    def __post_init__(self):
        fb = frozenset(tuple(f) for f in self.forbidden)
        object.__setattr__(self, "forbidden", fb)
        for f in fb:
            if not f:
                raise ValueError("forbidden words must be non-empty")
            if any(not (0 <= a < len(self.base)) for a in f):
                raise ValueError(f"forbidden word {f} is not over {self.base!r}")
        if not self._essential:
            raise ValueError("these forbidden words define the empty subshift")

    @classmethod
    def from_words(cls, alphabet: Alphabet, forbidden: Iterable[Word | str]) -> "SFT":
        fb = []
        for w in forbidden:
            if isinstance(w, str):
                w = alphabet.word(w)
            if w.alphabet != alphabet:
                raise AlphabetMismatch("forbidden word over a different alphabet")
            fb.append(w.letters)
        return cls(alphabet, frozenset(fb))

    @property
    def alphabet(self):
        return self.base

    @property
    def block_length(self) -> int:
        return max(max(map(len, self.forbidden), default=1) - 1, 1)

    def _avoids(self, t: Letters) -> bool:
        for f in self.forbidden:
            L = len(f)
            for i in range(len(t) - L + 1):
                if t[i : i + L] == f:
                    return False
        return True

    @cached_property
    def _graph(self) -> dict[Letters, tuple[Letters, ...]]:
        b = self.block_length
        k = len(self.base)
        vertices = [t for t in product(range(k), repeat=b) if self._avoids(t)]
        vset = set(vertices)
        succ = {}
        for u in vertices:
            out = []
            for a in range(k):
                v = u[1:] + (a,)
                if v in vset and self._avoids(u + (a,)):
                    out.append(v)
            succ[u] = tuple(out)
        return succ

    @cached_property
    def _essential(self) -> dict[Letters, tuple[Letters, ...]]:
        # Iteratively drop vertices without a predecessor or successor.
        alive = set(self._graph)
        changed = True
        while changed:
            changed = False
            has_pred = set()
            for u in alive:
                for v in self._graph[u]:
                    if v in alive:
                        has_pred.add(v)
            for u in list(alive):
                if u not in has_pred or not any(v in alive for v in self._graph[u]):
                    alive.discard(u)
                    changed = True
        return {u: tuple(v for v in self._graph[u] if v in alive) for u in sorted(alive)}

    def _words(self, n):
        b = self.block_length
        ess = self._essential
        if n < b:
            return frozenset(u[i : i + n] for u in ess for i in range(b - n + 1))
        # Paths of n - b edges; the word is the first block plus one letter per edge.
        layer = {u: {u} for u in ess}
        for _ in range(n - b):
            nxt: dict[Letters, set[Letters]] = {}
            for end, ws in layer.items():
                for v in ess[end]:
                    bucket = nxt.setdefault(v, set())
                    tail = v[-1]
                    for w in ws:
                        bucket.add(w + (tail,))
            layer = nxt
        return frozenset().union(*layer.values()) if layer else frozenset()

    def count(self, n):
        _check_window(n)
        b = self.block_length
        if n < b:
            return len(self.words(n))
        ess = self._essential
        paths = dict.fromkeys(ess, 1)  # paths of the current length ending at each vertex
        for _ in range(n - b):
            nxt = dict.fromkeys(ess, 0)
            for u, c in paths.items():
                for v in ess[u]:
                    nxt[v] += c
            paths = nxt
        return sum(paths.values())

    def contains(self, letters):
        t = tuple(letters)
        b = self.block_length
        if len(t) < b:
            return super().contains(t)
        if not self._avoids(t):
            return False
        ess = self._essential
        return all(t[i : i + b] in ess for i in range(len(t) - b + 1))

    def describe(self):
        fb = ";".join(sorted("".join(self.base.symbols[a] for a in f) for f in self.forbidden))
        return f"sft({','.join(self.base.symbols)}|{fb})"


class PrimitivityCheck(NamedTuple):
    is_primitive: bool
    exponent: int | None


def check_primitive(sigma: Morphism) -> PrimitivityCheck:
    """Test whether some power ``k <= card(A)**2`` of the incidence matrix is positive.

    Returns the least such ``k`` as witness exponent.
    """
    if not sigma.is_endomorphism:
        raise AlphabetMismatch("primitivity needs an endomorphism")
    k = len(sigma.source)
    base = [[c > 0 for c in row] for row in sigma.incidence_matrix()]
    power = base
    for e in range(1, k * k + 1):
        if all(all(row) for row in power):
            return PrimitivityCheck(True, e)
        power = [[any(power[i][m] and base[m][j] for m in range(k)) for j in range(k)] for i in range(k)]
    return PrimitivityCheck(False, None)


@dataclass(frozen=True)
class PrimitiveSubstitution(Subshift):
    """Subshift generated by the iterates of a primitive substitution."""

    substitution: Morphism

    def __post_init__(self):
        sigma = self.substitution
        if not sigma.is_endomorphism:
            raise ValueError("a substitution must have equal source and target alphabets")
        if not check_primitive(sigma).is_primitive:
            raise ValueError(f"{sigma!r} is not primitive")
        if sigma.is_letter_to_letter:
            raise ValueError(f"{sigma!r} does not grow; its iterates have bounded length")

    @property
    def alphabet(self):
        return self.substitution.source

    @cached_property
    def _two_factors(self) -> frozenset[Letters]:
        # Least set of 2-letter words containing the 2-factors of every
        # letter image and closed under taking 2-factors of sigma(cd).
        sigma = self.substitution
        found = set()
        for img in sigma.images:
            found.update(img[i : i + 2] for i in range(len(img) - 1))
        frontier = set(found)
        while frontier:
            fresh = set()
            for cd in frontier:
                img = sigma.image_letters(cd)
                for i in range(len(img) - 1):
                    t = img[i : i + 2]
                    if t not in found:
                        fresh.add(t)
            found |= fresh
            frontier = fresh
        return frozenset(found)

    def _words(self, n):
        # With every sigma^j(c) of length >= n, a length-n window of a long
        # iterate meets at most two consecutive blocks sigma^j(c) sigma^j(d),
        # and cd ranges over the 2-letter words of the language.
        sigma = self.substitution
        images = [(a,) for a in range(len(sigma.source))]
        while min(map(len, images)) < n:
            images = [sigma.image_letters(img) for img in images]
        out = set()
        for c, d in self._two_factors:
            block = images[c] + images[d]
            out.update(block[i : i + n] for i in range(len(block) - n + 1))
        return frozenset(out)

    def describe(self):
        return f"subst({self.substitution!r})"


@dataclass(frozen=True)
class MorphicImage(Subshift):
    """The image subshift ``sigma(X)`` generated by ``sigma(L(X))``."""

    inner: Subshift
    morphism: Morphism

    def __post_init__(self):
        if self.morphism.source != self.inner.alphabet:
            raise AlphabetMismatch("morphism source differs from the inner alphabet")

    @property
    def alphabet(self):
        return self.morphism.target

    def source_window(self, n: int) -> int:
        """Inner window whose images expose every length-`n` factor."""
        return -(-n // self.morphism.inf_norm) + 1

    def _words(self, n):
        m = self.source_window(n)
        return frozenset(image_factors(self.morphism, self.inner.words(m), n))

    def describe(self):
        return f"image({self.inner.describe()}; {self.morphism!r})"


@dataclass(frozen=True)
class Double(Subshift):
    """``X ∪ X^-1`` over the doubled alphabet ``A ∪ A^-1``.

    Each biinfinite word of `inner` appears together with its formal
    inverse (reversed, every letter inverted).
    """

    inner: Subshift
    _alphabet: DoubledAlphabet = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_alphabet", DoubledAlphabet(Alphabet(self.inner.alphabet.symbols)))

    @property
    def alphabet(self) -> DoubledAlphabet:
        return self._alphabet

    def _words(self, n):
        inv = self._alphabet.inverse_letters
        base = self.inner.words(n)
        return frozenset(base) | frozenset(inv(w) for w in base)

    def count(self, n):
        # Positive and inverse words use disjoint letters, so the union is disjoint.
        return 2 * self.inner.count(n)

    def describe(self):
        return f"double({self.inner.describe()})"


# Module-level operations ---------------------------------------------------


def language(X: Subshift, n: int) -> frozenset[Word]:
    """Exactly ``L(X) ∩ A^n``."""
    A = X.alphabet
    return frozenset(Word._trusted(A, t) for t in X.words(n))


def image_language(X: Subshift, sigma: Morphism, n: int) -> frozenset[Word]:
    """``L(sigma(X)) ∩ B^n`` from the length-``ceil(n/<sigma>)+1`` words of X."""
    return language(MorphicImage(X, sigma), n)


def complexity(X: Subshift, n: int, method: str = "auto") -> int:
    """The factor complexity ``p_X(n)``.

    With ``method="enumerate"`` the language is always listed; ``"auto"``
    lets full shifts, SFTs and doubles count without enumeration.
    """
    if method == "enumerate":
        return len(X.words(n))
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    return X.count(n)


@dataclass
class ComplexityTable:
    """Values ``n -> p(n)`` for a named presentation."""

    label: str
    entries: dict[int, int]

    def __getitem__(self, n: int) -> int:
        return self.entries[n]

    def __contains__(self, n: int) -> bool:
        return n in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def window(self) -> int:
        return max(self.entries)

    def items(self):
        return sorted(self.entries.items())

    def violations(self) -> list[str]:
        """Broken table invariants (positivity, monotonicity, submultiplicativity)."""
        out = []
        ns = sorted(self.entries)
        for n in ns:
            if self.entries[n] < 1:
                out.append(f"p({n}) = {self.entries[n]} < 1")
        for a, b in zip(ns, ns[1:]):
            if self.entries[b] < self.entries[a]:
                out.append(f"p({b}) < p({a})")
        for m in ns:
            for n in ns:
                if n < m or m + n not in self.entries:
                    continue
                if self.entries[m + n] > self.entries[m] * self.entries[n]:
                    out.append(f"p({m + n}) > p({m}) * p({n})")
        return out

    def replace(self, n: int, value: int) -> "ComplexityTable":
        entries = dict(self.entries)
        entries[n] = value
        return ComplexityTable(self.label, entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "p"])
        for n, p in self.items():
            writer.writerow([n, p])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, label: str = "") -> "ComplexityTable":
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls(label, {int(r["n"]): int(r["p"]) for r in rows})

    def digest(self) -> str:
        return hashlib.sha256(self.to_csv().encode()).hexdigest()


def complexity_table(X: Subshift, N: int, method: str = "auto") -> ComplexityTable:
    """Table of ``p_X(n)`` for ``n = 1..N``; raises if an invariant fails."""
    _check_window(N)
    table = ComplexityTable(X.describe(), {n: complexity(X, n, method) for n in range(1, N + 1)})
    bad = table.violations()
    if bad:
        raise AssertionError(f"complexity table invariants violated for {table.label}: {bad[:3]}")
    return table

