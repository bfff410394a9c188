"""Non-erasing monoid morphisms between free monoids."""

from __future__ import annotations

from itertools import chain
from typing import Iterable, Mapping, Sequence

from .words import Alphabet, AlphabetMismatch, Word


class Morphism:
    """A non-erasing monoid morphism ``source* -> target*``.

    Parameters
    ----------
    source, target : Alphabet
    images : sequence of tuple of int
        ``images[i]`` is the image of source letter ``i`` as target letter
        indices.  Every image must be non-empty.
    """

    __slots__ = ("source", "target", "images", "_hash")

    def __init__(self, source: Alphabet, target: Alphabet, images: Sequence[Sequence[int]]):
        images = tuple(tuple(img) for img in images)
        if len(images) != len(source):
            raise ValueError(f"need {len(source)} images, got {len(images)}")
        for i, img in enumerate(images):
            if not img:
                raise ValueError(f"erasing morphism: {source.symbol(i)!r} maps to the empty word")
            for b in img:
                if not (isinstance(b, int) and 0 <= b < len(target)):
                    raise ValueError(f"image letter {b!r} invalid for {target!r}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_hash", hash((source, target, images)))

    def __setattr__(self, name, value):
        raise AttributeError("Morphism is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.source, self.target, self.images) == (other.source, other.target, other.images)

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (Morphism, (self.source, self.target, self.images))

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{a}->{''.join(self.target.symbols[b] for b in img)}"
            for a, img in zip(self.source.symbols, self.images)
        )
        return f"Morphism({parts})"

    @classmethod
    def from_dict(
        cls,
        images: Mapping[str, str | Sequence[str]],
        source: Alphabet | None = None,
        target: Alphabet | None = None,
    ) -> "Morphism":
        """Build a morphism from ``{symbol: image}``.

        Images may be lists of symbol names, or strings when `target` is
        given (they are then tokenized).  Missing alphabets are inferred:
        the source from the key order, the target from first appearance.

        >>> Morphism.from_dict({"a": ["a", "b"], "b": ["a"]})
        Morphism(a->ab, b->a)
        """
        if source is None:
            source = Alphabet(images.keys())
        if target is None:
            seen: dict[str, None] = {}
            for s in source.symbols:
                img = images[s]
                if isinstance(img, str):
                    raise ValueError("string images need an explicit target alphabet")
                for b in img:
                    seen.setdefault(b, None)
            target = Alphabet(seen)
        if set(images) != set(source.symbols):
            raise ValueError("image keys must be exactly the source symbols")
        rows = []
        for s in source.symbols:
            img = images[s]
            if isinstance(img, str):
                img = target.tokenize(img)
            rows.append(tuple(target.index(b) for b in img))
        return cls(source, target, rows)

    def to_dict(self) -> dict[str, list[str]]:
        return {
            a: [self.target.symbols[b] for b in img]
            for a, img in zip(self.source.symbols, self.images)
        }

    @property
    def sup_norm(self) -> int:
        """Maximal image length."""
        return max(map(len, self.images))

    @property
    def inf_norm(self) -> int:
        """Minimal image length."""
        return min(map(len, self.images))

    @property
    def is_letter_to_letter(self) -> bool:
        return self.sup_norm == 1

    @property
    def is_endomorphism(self) -> bool:
        return self.source == self.target

    def image_letters(self, letters: Iterable[int]) -> tuple[int, ...]:
        """Image of a letter-index sequence, no validation."""
        images = self.images
        return tuple(chain.from_iterable(images[a] for a in letters))

    def __call__(self, w: Word) -> Word:
        return apply_morphism(self, w)

    def compose(self, inner: "Morphism") -> "Morphism":
        """Return ``self ∘ inner``."""
        if inner.target != self.source:
            raise AlphabetMismatch("cannot compose: inner target differs from outer source")
        return Morphism(inner.source, self.target, [self.image_letters(img) for img in inner.images])

    def power(self, k: int) -> "Morphism":
        if not self.is_endomorphism:
            raise ValueError("only endomorphisms can be iterated")
        if k < 1:
            raise ValueError("power must be positive")
        result = self
        for _ in range(k - 1):
            result = self.compose(result)
        return result

    def incidence_matrix(self) -> list[list[int]]:
        """``M[i][j]`` counts target letter ``j`` in the image of source letter ``i``."""
        m = [[0] * len(self.target) for _ in self.images]
        for i, img in enumerate(self.images):
            for b in img:
                m[i][b] += 1
        return m


def apply_morphism(sigma: Morphism, w: Word) -> Word:
    """Concatenate the letter images of `w`."""
    if w.alphabet != sigma.source:
        raise AlphabetMismatch(f"word over {w.alphabet!r}, morphism source {sigma.source!r}")
    return Word._trusted(sigma.target, sigma.image_letters(w.letters))


def canonical_decomposition(sigma: Morphism) -> tuple[Morphism, Morphism]:
    """Split `sigma` as ``alpha ∘ pi`` through the subdivision alphabet.

    ``pi`` sends letter ``a`` to ``a(1) a(2) ... a(|sigma(a)|)`` and the
    letter-to-letter ``alpha`` sends ``a(k)`` to the ``k``-th letter of
    ``sigma(a)``.
    """
    names = []
    pi_images = []
    alpha_images = []
    for a, img in zip(sigma.source.symbols, sigma.images):
        start = len(names)
        for k, b in enumerate(img, start=1):
            names.append(f"{a}({k})")
            alpha_images.append((b,))
        pi_images.append(tuple(range(start, len(names))))
    subdivided = Alphabet(names)
    pi = Morphism(sigma.source, subdivided, pi_images)
    alpha = Morphism(subdivided, sigma.target, alpha_images)
    for i in range(len(sigma.source)):
        if alpha.image_letters(pi.images[i]) != sigma.images[i]:
            raise AssertionError("canonical decomposition does not recompose")
    return pi, alpha


def image_factors(sigma: Morphism, words: Iterable[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    """Length-`n` factors of ``sigma(u)`` over all `u` in `words` (index tuples)."""
    out: set[tuple[int, ...]] = set()
    add = out.add
    for u in words:
        img = sigma.image_letters(u)
        for i in range(len(img) - n + 1):
            add(img[i : i + n])
    return out


# Standard morphisms -------------------------------------------------------


def doubling_morphism(alphabet: Alphabet) -> Morphism:
    """The doubling morphism ``a -> a- a+`` onto the alphabet of halves."""
    target = Alphabet(chain.from_iterable((f"{s}-", f"{s}+") for s in alphabet.symbols))
    return Morphism(alphabet, target, [(2 * i, 2 * i + 1) for i in range(len(alphabet))])


def fibonacci(alphabet: Alphabet) -> Morphism:
    """Fibonacci substitution on a two-letter alphabet: ``a1 -> a2 -> a2 a1``."""
    if len(alphabet) != 2:
        raise ValueError("the Fibonacci substitution needs a two-letter alphabet")
    return Morphism(alphabet, alphabet, [(1,), (1, 0)])


def renaming(source: Alphabet, target_symbols: Sequence[str]) -> Morphism:
    """Bijective letter renaming onto a fresh alphabet."""
    target = Alphabet(target_symbols)
    if len(target) != len(source):
        raise ValueError("renaming needs alphabets of equal size")
    return Morphism(source, target, [(i,) for i in range(len(source))])
