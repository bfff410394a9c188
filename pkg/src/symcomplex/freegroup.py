"""Reduced words, free group homomorphisms and basis-change experiments.

A basis ``A`` of a free group is represented by a :class:`DoubledAlphabet`
``A ∪ A^-1``.  Homomorphisms store the images of positive letters only;
images of inverse letters are always derived.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .subshifts import ComplexityTable, Subshift
from .words import Alphabet, AlphabetMismatch, DoubledAlphabet, Word, INVERSE_SUFFIX

log = logging.getLogger(__name__)


def _reduce_letters(dalph: DoubledAlphabet, letters) -> tuple[int, ...]:
    stack: list[int] = []
    k = dalph.rank
    for a in letters:
        inv = a + k if a < k else a - k
        if stack and stack[-1] == inv:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def _is_reduced(dalph: DoubledAlphabet, letters) -> bool:
    return all(b != dalph.inverse(a) for a, b in zip(letters, letters[1:]))


class ReducedWord(Word):
    """A word over a doubled alphabet with no factor ``x x^-1``."""

    __slots__ = ()

    def __init__(self, alphabet: DoubledAlphabet, letters=()):
        alphabet = DoubledAlphabet.coerce(alphabet)
        super().__init__(alphabet, letters)
        if not _is_reduced(alphabet, self.letters):
            raise ValueError(f"{self!r} is not reduced")

    def __reduce__(self):
        return (ReducedWord, (self.alphabet, self.letters))

    def inverse(self) -> "ReducedWord":
        return ReducedWord._trusted(self.alphabet, self.alphabet.inverse_letters(self.letters))


def free_reduce(w: Word) -> ReducedWord:
    """Cancel adjacent inverse pairs until none remain."""
    dalph = DoubledAlphabet.coerce(w.alphabet)
    return ReducedWord._trusted(dalph, _reduce_letters(dalph, w.letters))


def reduced_words(dalph: DoubledAlphabet, n: int):
    """All reduced words of length exactly `n`, as letter tuples."""
    if n == 0:
        yield ()
        return
    for prefix in reduced_words(dalph, n - 1):
        for a in range(len(dalph)):
            if prefix and a == dalph.inverse(prefix[-1]):
                continue
            yield prefix + (a,)


class FreeGroupHom:
    """Homomorphism ``F(source) -> F(target)`` given on positive letters.

    Parameters
    ----------
    source, target : DoubledAlphabet
    images : sequence of tuple of int
        Reduced images (target letter indices) of the positive source letters.
    inverse : FreeGroupHom, optional
        A declared inverse; checked by :func:`compose_check_inverse`.
    """

    __slots__ = ("source", "target", "images", "inverse", "_full")

    def __init__(self, source: DoubledAlphabet, target: DoubledAlphabet, images, inverse=None):
        source = DoubledAlphabet.coerce(source)
        target = DoubledAlphabet.coerce(target)
        images = tuple(tuple(img) for img in images)
        if len(images) != source.rank:
            raise ValueError(f"need {source.rank} images, got {len(images)}")
        for img in images:
            if any(not (0 <= b < len(target)) for b in img) or not _is_reduced(target, img):
                raise ValueError(f"image {img} is not a reduced word over {target!r}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_full", images + tuple(target.inverse_letters(img) for img in images))
        object.__setattr__(self, "inverse", None)
        if inverse is not None:
            if not compose_check_inverse(self, inverse):
                raise ValueError("declared inverse does not invert the homomorphism")
            object.__setattr__(self, "inverse", inverse)

    def __setattr__(self, name, value):
        raise AttributeError("FreeGroupHom is immutable")

    def __eq__(self, other):
        if not isinstance(other, FreeGroupHom):
            return NotImplemented
        return (self.source, self.target, self.images) == (other.source, other.target, other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def __repr__(self):
        parts = ", ".join(
            f"{a}->{' '.join(self.target.symbols[b] for b in img) or '1'}"
            for a, img in zip(self.source.positive.symbols, self.images)
        )
        return f"FreeGroupHom({parts})"

    @classmethod
    def from_dict(
        cls,
        images: Mapping[str, Sequence[str]],
        source: Alphabet | None = None,
        target: Alphabet | None = None,
    ) -> "FreeGroupHom":
        """Build from ``{positive symbol: [signed symbols]}`` (``x^-1`` for inverses).

        When `target` is omitted the target basis is the source basis if all
        image letters belong to it, else the letters in order of first use.
        """
        src = Alphabet(images.keys()) if source is None else source
        if target is None:
            bases: dict[str, None] = {}
            for s in src.symbols:
                for b in images[s]:
                    bases.setdefault(b[: -len(INVERSE_SUFFIX)] if b.endswith(INVERSE_SUFFIX) else b, None)
            target = src if set(bases) <= set(src.symbols) else Alphabet(bases)
        sd = src if isinstance(src, DoubledAlphabet) else DoubledAlphabet(src)
        td = target if isinstance(target, DoubledAlphabet) else DoubledAlphabet(target)
        rows = [tuple(td.index(b) for b in images[s]) for s in sd.positive.symbols]
        return cls(sd, td, rows)

    def to_dict(self) -> dict[str, list[str]]:
        return {
            a: [self.target.symbols[b] for b in img]
            for a, img in zip(self.source.positive.symbols, self.images)
        }

    @classmethod
    def identity(cls, basis: DoubledAlphabet) -> "FreeGroupHom":
        return cls(basis, basis, [(i,) for i in range(basis.rank)])

    def with_inverse(self, inverse: "FreeGroupHom") -> "FreeGroupHom":
        return FreeGroupHom(self.source, self.target, self.images, inverse)

    @property
    def norm(self) -> int:
        """``max |phi(a)|`` over positive basis letters."""
        return max(map(len, self.images))

    def letter_image(self, a: int) -> tuple[int, ...]:
        return self._full[a]

    def image_letters(self, letters) -> tuple[int, ...]:
        stack: list[int] = []
        k = self.target.rank
        for a in letters:
            for b in self._full[a]:
                inv = b + k if b < k else b - k
                if stack and stack[-1] == inv:
                    stack.pop()
                else:
                    stack.append(b)
        return tuple(stack)

    def __call__(self, w: Word) -> ReducedWord:
        return apply_hom(self, w)


def apply_hom(phi: FreeGroupHom, w: Word) -> ReducedWord:
    """The reduced word representing ``phi(w)``."""
    if w.alphabet != phi.source:
        raise AlphabetMismatch(f"word over {w.alphabet!r}, homomorphism source {phi.source!r}")
    return ReducedWord._trusted(phi.target, phi.image_letters(w.letters))


def compose_check_inverse(phi: FreeGroupHom, psi: FreeGroupHom) -> bool:
    """True iff ``psi ∘ phi`` and ``phi ∘ psi`` fix every basis letter."""
    if psi.source != phi.target or psi.target != phi.source:
        return False
    return all(psi.image_letters(phi.images[a]) == (a,) for a in range(phi.source.rank)) and all(
        phi.image_letters(psi.images[b]) == (b,) for b in range(psi.source.rank)
    )


# Cancellation bounds -------------------------------------------------------


@dataclass(frozen=True)
class CancellationEstimate:
    """Empirical cancellation bound with its per-window maxima.

    ``sequence[l - 1]`` is the largest number of cancelled letter pairs in
    ``phi(u) phi(v)`` over reduced ``u v`` with ``|u|, |v| <= l``.
    """

    bound: int
    sequence: tuple[int, ...]
    witness: tuple[ReducedWord, ReducedWord] | None

    @property
    def window(self) -> int:
        return len(self.sequence)

    def stable_for(self) -> int:
        """Number of trailing window increments over which the maximum is constant."""
        s = self.sequence
        k = 0
        while k + 1 < len(s) and s[-k - 2] == s[-1]:
            k += 1
        return k


def _common_prefix(a: tuple, b: tuple) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def cancellation_bound_estimate(phi: FreeGroupHom, L: int) -> CancellationEstimate:
    """Estimate the cancellation bound of `phi` from all reduced words up to length `L`.

    The number of letters cancelled between ``phi(u)`` and ``phi(v)`` is the
    common prefix length of ``phi(u)^-1`` and ``phi(v)``.  For a fixed last
    letter of ``u`` the maximum over compatible ``v`` is attained by
    neighbours in the sorted union, so no pairwise enumeration is needed.
    """
    if L < 1:
        raise ValueError("window L must be >= 1")
    S, T = phi.source, phi.target
    sequence = []
    best, best_pair = 0, None
    words: list[tuple[int, ...]] = []
    for ell in range(1, L + 1):
        words.extend(reduced_words(S, ell))
        # Tag 0: inverse image of u grouped by last letter; tag 1: image of v.
        for x in range(len(S)):
            entries = []
            for u in words:
                if u[-1] == x:
                    entries.append((T.inverse_letters(phi.image_letters(u)), 0, u))
            for v in words:
                if v[0] != S.inverse(x):
                    entries.append((phi.image_letters(v), 1, v))
            entries.sort()
            for (a, ta, wa), (b, tb, wb) in zip(entries, entries[1:]):
                if ta == tb:
                    continue
                c = _common_prefix(a, b)
                if c > best:
                    u, v = (wa, wb) if ta == 0 else (wb, wa)
                    best, best_pair = c, (u, v)
        sequence.append(best)
    witness = None
    if best_pair is not None:
        witness = (ReducedWord._trusted(S, best_pair[0]), ReducedWord._trusted(S, best_pair[1]))
    return CancellationEstimate(best, tuple(sequence), witness)


# Basis change --------------------------------------------------------------


@dataclass(frozen=True)
class BasisChangeConstants:
    """Cancellation bounds and norms for a pair of mutually inverse homomorphisms.

    ``c_ba`` bounds cancellation for ``phi_ba`` (rewriting from basis A to
    basis B) and ``c_ab`` for ``phi_ab``.
    """

    c_ba: int
    c_ab: int
    norm_ba: int
    norm_ab: int

    @property
    def h(self) -> int:
        return self.c_ab * self.norm_ba + self.c_ba

    @property
    def upper_C(self) -> int:
        return 4 * self.c_ab * self.norm_ba + 1

    @property
    def upper_D(self) -> int:
        return self.norm_ba * self.norm_ab + 1

    @property
    def lower_C(self) -> int:
        """The constant of the reverse direction; ``c = 1 / lower_C``."""
        return 4 * self.c_ba * self.norm_ab + 1

    @property
    def lower_D(self) -> int:
        """The stretch of the reverse direction; ``d = 1 / lower_D``."""
        return self.norm_ab * self.norm_ba + 1

    def proof_window(self, n: int) -> int:
        return self.norm_ba * self.norm_ab * (n + 2 * self.h)

    def as_dict(self) -> dict[str, int]:
        return {
            "C(B,A)": self.c_ba,
            "C(A,B)": self.c_ab,
            "||phi_BA||": self.norm_ba,
            "||phi_AB||": self.norm_ab,
            "C": self.upper_C,
            "D": self.upper_D,
            "1/c": self.lower_C,
            "1/d": self.lower_D,
        }


@dataclass(frozen=True)
class BasisChangeWindow:
    words: frozenset[ReducedWord]
    window: int
    proof_window: int
    stabilized_at: int | None  # None when the proof window itself was enumerated


def _chopped_image_factors(Xpm: Subshift, phi: FreeGroupHom, c: int, m: int, n: int) -> frozenset:
    out = set()
    for u in Xpm.words(m):
        img = phi.image_letters(u)
        body = img[c : len(img) - c] if 2 * c < len(img) else ()
        for i in range(len(body) - n + 1):
            out.add(body[i : i + n])
    return frozenset(out)


def basis_change_window(
    Xpm: Subshift,
    phi_ba: FreeGroupHom,
    phi_ab: FreeGroupHom,
    c_ba: int,
    c_ab: int,
    n: int,
    window: int | None = None,
    max_words: int = 200_000,
    stable_steps: int = 3,
) -> BasisChangeWindow:
    """Length-`n` words of the lamination read in basis B.

    Collects the length-`n` factors of ``phi_ba(u)`` chopped by `c_ba` over
    ``u`` in ``L(Xpm)`` of length ``m``.  By default ``m`` is the window
    ``||phi_ba|| ||phi_ab|| (n + 2h)`` with ``h = c_ab ||phi_ba|| + c_ba``.
    When that many words exceed `max_words`, ``m`` grows from ``n`` until
    the factor set is unchanged over `stable_steps` consecutive increments.
    """
    if not compose_check_inverse(phi_ba, phi_ab):
        raise ValueError("phi_ba and phi_ab are not mutually inverse")
    if Xpm.alphabet != phi_ba.source:
        raise AlphabetMismatch("subshift alphabet differs from the source basis")
    if n < 1:
        raise ValueError("window length must be >= 1")
    consts = BasisChangeConstants(c_ba, c_ab, phi_ba.norm, phi_ab.norm)
    m_proof = consts.proof_window(n)
    T = phi_ba.target

    def wrap(found):
        return frozenset(ReducedWord._trusted(T, t) for t in found)

    if window is not None:
        if phi_ba.norm * window - 2 * c_ba < n:
            raise ValueError(f"window {window} is too small for length {n} with C(B,A) = {c_ba}")
        return BasisChangeWindow(wrap(_chopped_image_factors(Xpm, phi_ba, c_ba, window, n)), window, m_proof, None)
    if Xpm.count(m_proof) <= max_words:
        return BasisChangeWindow(wrap(_chopped_image_factors(Xpm, phi_ba, c_ba, m_proof, n)), m_proof, m_proof, None)

    history = []
    m = max(1, n // max(phi_ba.norm, 1))
    while True:
        if Xpm.count(m) > max_words:
            raise RuntimeError(
                f"basis-change window {m} exceeds {max_words} words before stabilizing (n = {n})"
            )
        history.append(_chopped_image_factors(Xpm, phi_ba, c_ba, m, n))
        tail = history[-(stable_steps + 1) :]
        if len(tail) == stable_steps + 1 and tail[0] and all(s == tail[0] for s in tail):
            stable_from = m - stable_steps
            log.info("basis change n=%d stabilized at m=%d (proof window %d)", n, stable_from, m_proof)
            return BasisChangeWindow(wrap(history[-1]), m, m_proof, stable_from)
        if m >= m_proof:
            return BasisChangeWindow(wrap(history[-1]), m, m_proof, None)
        m += 1


def basis_change_language(
    Xpm: Subshift,
    phi_ba: FreeGroupHom,
    phi_ab: FreeGroupHom,
    c_ba: int,
    c_ab: int,
    n: int,
    window: int | None = None,
) -> frozenset[ReducedWord]:
    """``L(Y±) ∩ B±^n`` from chopped images; see :func:`basis_change_window`."""
    return basis_change_window(Xpm, phi_ba, phi_ab, c_ba, c_ab, n, window).words


@dataclass
class BasisChangeReport:
    passed: bool
    constants: dict[str, int]
    window: int
    first_failure: dict | None
    checked_lower: tuple[int, ...]
    skipped_lower: tuple[int, ...]
    table_digests: dict[str, str]

    def to_dict(self) -> dict:
        return {
            "claim": "basis-change",
            "passed": self.passed,
            "constants": self.constants,
            "window": self.window,
            "first_failure": self.first_failure,
            "checked_lower": list(self.checked_lower),
            "skipped_lower": list(self.skipped_lower),
            "table_digests": self.table_digests,
        }


def verify_basis_change_inequality(
    x_table: ComplexityTable, y_table: ComplexityTable, constants: BasisChangeConstants, N: int
) -> BasisChangeReport:
    """Check ``c p_X(floor(d n)) <= p_Y(n) <= C p_X(D n)`` for ``n <= N``.

    ``C, D`` come from the bounds of the forward change and
    ``c = 1/C', d = 1/D'`` from the reverse one.  The lower inequality is
    only checked where ``floor(d n) >= 1``.  `x_table` must reach ``D N``.
    """
    C, D = constants.upper_C, constants.upper_D
    c = Fraction(1, constants.lower_C)
    d = Fraction(1, constants.lower_D)
    failure = None
    checked, skipped = [], []
    for n in range(1, N + 1):
        py = y_table[n]
        rhs = C * x_table[D * n]
        if py > rhs:
            failure = {"n": n, "side": "upper", "p_Y(n)": py, "C*p_X(D*n)": rhs}
            break
        dn = int(d * n)
        if dn < 1:
            skipped.append(n)
            continue
        checked.append(n)
        lhs = c * x_table[dn]
        if lhs > py:
            failure = {"n": n, "side": "lower", "c*p_X(floor(d*n))": str(lhs), "p_Y(n)": py}
            break
    return BasisChangeReport(
        passed=failure is None,
        constants=constants.as_dict(),
        window=N,
        first_failure=failure,
        checked_lower=tuple(checked),
        skipped_lower=tuple(skipped),
        table_digests={"X": x_table.digest(), "Y": y_table.digest()},
    )


# Standard examples ---------------------------------------------------------


def fibonacci_squared_pair(basis: Alphabet | None = None) -> tuple[FreeGroupHom, FreeGroupHom]:
    """The square of the Fibonacci automorphism and its inverse.

    ``a1 -> a2 a1, a2 -> a2 a1 a2`` with inverse
    ``a1 -> a2^-1 a1 a1, a2 -> a1^-1 a2``.
    """
    basis = basis or Alphabet(["a1", "a2"])
    if len(basis) != 2:
        raise ValueError("needs a rank-2 basis")
    x, y = basis.symbols
    inv = lambda s: s + INVERSE_SUFFIX  # noqa: E731
    psi = FreeGroupHom.from_dict({x: [inv(y), x, x], y: [inv(x), y]}, source=basis, target=basis)
    phi = FreeGroupHom.from_dict({x: [y, x], y: [y, x, y]}, source=basis, target=basis)
    return phi.with_inverse(psi), psi.with_inverse(phi)


def exhaustive_cancellation(phi: FreeGroupHom, L: int) -> int:
    """Brute-force maximum cancellation over all reduced ``u v`` with ``|u|, |v| <= L``."""
    S = phi.source
    words = [w for ell in range(1, L + 1) for w in reduced_words(S, ell)]
    best = 0
    for u, v in product(words, repeat=2):
        if v[0] == S.inverse(u[-1]):
            continue
        pu, pv = phi.image_letters(u), phi.image_letters(v)
        joined = phi.image_letters(u + v)
        best = max(best, (len(pu) + len(pv) - len(joined)) // 2)
    return best
