"""Finite-window recognizability certificates for non-erasing morphisms.

Recognizability quantifies over all biinfinite words, so nothing here
decides it.  Two finite tests are combined instead:

* a repetition bound for the letter-to-letter part of the canonical
  decomposition, searched over all words up to a window length;
* an audit of periodic points up to a period bound, which can only ever
  produce genuine counterexamples.

Every counterexample carries a witness that :func:`replay_witness`
re-checks from first principles.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from itertools import product
from math import lcm

from .morphisms import Morphism, canonical_decomposition
from .subshifts import SFT, FullShift, MorphicImage, Subshift
from .words import AlphabetMismatch, Word, chop, least_rotation, root_length

log = logging.getLogger(__name__)


class Verdict(str, enum.Enum):
    CERTIFIED_UP_TO = "certified_up_to"
    COUNTEREXAMPLE_FOUND = "counterexample_found"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PairWitness:
    """Two words of ``L(Z)`` with equal images that differ after chopping `refutes`.

    Refutes every candidate repetition bound ``r <= refutes``.
    """

    left: Word
    right: Word
    refutes: int

    kind = "pair"


@dataclass(frozen=True)
class PeriodicWitness:
    """Two distinct lifts ``(x, k) != (x', ell)`` of one periodic point.

    `x` and `x_prime` are period words of biinfinite periodic points, read
    from index 1: ``x_1 = x[0]``.  The shifts satisfy
    ``T^k sigma(x) = T^ell sigma(x')`` with ``0 <= k < |sigma(x_1)|`` and
    ``0 <= ell < |sigma(x'_1)|``.
    """

    x: Word
    k: int
    x_prime: Word
    ell: int
    reason: str  # "period" or "orbit"

    kind = "periodic"


@dataclass(frozen=True)
class RecognizabilityCertificate:
    verdict: Verdict
    r: int | None = None
    window: int | None = None
    r_max: int | None = None
    period_max: int | None = None
    witness: PairWitness | PeriodicWitness | None = None

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED_UP_TO


# Repetition bounds ---------------------------------------------------------


def find_repetition_bound(
    alpha: Morphism, Z: Subshift, r_max: int, window: int
) -> RecognizabilityCertificate:
    """Least ``r <= r_max`` such that equal `alpha`-images force equal r-chops.

    All words of ``L(Z)`` of length at most `window` are grouped by their
    image.  Only radii with ``2 r + 1 <= window`` are testable (larger
    ones chop every window word away), so `r_max` is clamped to that.

    Returns ``CERTIFIED_UP_TO`` with the least passing ``r``, or
    ``COUNTEREXAMPLE_FOUND`` with a pair refuting every testable ``r``.
    """
    if not alpha.is_letter_to_letter:
        raise ValueError("repetition bounds are searched for letter-to-letter morphisms")
    if alpha.source != Z.alphabet:
        raise AlphabetMismatch("morphism source differs from the subshift alphabet")
    if r_max < 0 or window < 1:
        raise ValueError("need r_max >= 0 and window >= 1")
    r_eff = min(r_max, (window - 1) // 2)
    image_of = [img[0] for img in alpha.images]

    needed = 0
    worst = None  # (needed, length, position, pair)
    for ell in range(1, window + 1):
        groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        for w in Z.words(ell):
            groups.setdefault(tuple(image_of[a] for a in w), []).append(w)
        for members in groups.values():
            if len(members) < 2:
                continue
            for d in range(ell):
                col = {w[d] for w in members}
                if len(col) < 2:
                    continue
                req = min(d, ell - 1 - d) + 1
                if req > needed:
                    needed = req
                    worst = (ell, d, members)
    if needed <= r_eff:
        return RecognizabilityCertificate(Verdict.CERTIFIED_UP_TO, r=needed, window=window, r_max=r_max)

    ell, d, members = worst
    members = sorted(members, key=lambda w: tuple(Z.alphabet.symbols[a] for a in w))
    first = members[0]
    second = next(w for w in members if w[d] != first[d])
    A = Z.alphabet
    witness = PairWitness(Word._trusted(A, first), Word._trusted(A, second), refutes=r_eff)
    return RecognizabilityCertificate(
        Verdict.COUNTEREXAMPLE_FOUND, window=window, r_max=r_max, witness=witness
    )


# Periodic points -----------------------------------------------------------


def periodic_check_length(X: Subshift, period: int) -> int:
    """Window length used to decide that ``v^∞`` lies in `X` for ``|v| = period``.

    Exact for full shifts and SFTs; for other presentations ``v^∞`` is
    accepted once all its factors of length ``4 * period + 2`` are in the
    language, which rules out words of bounded critical exponent below 4.
    """
    if isinstance(X, FullShift):
        return period
    if isinstance(X, SFT):
        return period + X.block_length + 1
    return 4 * period + 2


def _periodic_in(X: Subshift, v: tuple[int, ...]) -> bool:
    L = periodic_check_length(X, len(v))
    reps = -(-(L + len(v)) // len(v))
    long = v * reps
    return all(X.contains(long[i : i + L]) for i in range(len(v)))


def _lyndon_words(k: int, p: int):
    for t in product(range(k), repeat=p):
        if root_length(t) == p and least_rotation(t) == t:
            yield t


def _rotate(t: tuple, s: int) -> tuple:
    s %= len(t)
    return t[s:] + t[:s]


def _lift_shift(sigma: Morphism, v: tuple[int, ...], t: int) -> tuple[int, int]:
    """Write ``t = |sigma(v_1..v_j)| + ell`` with ``0 <= ell < |sigma(v_{j+1})|``."""
    j = 0
    while t >= len(sigma.images[v[j]]):
        t -= len(sigma.images[v[j]])
        j += 1
    return j, t


def periodic_point_audit(sigma: Morphism, X: Subshift, period_max: int) -> RecognizabilityCertificate:
    """Check period preservation and orbit injectivity on periodic points of `X`.

    For every primitive ``v`` (one per conjugacy class) with ``|v| <= period_max``
    and ``v^∞`` in `X`: ``sigma(v)`` must be primitive for every rotation of
    ``v``, and distinct classes must have images generating distinct
    periodic orbits.
    """
    if sigma.source != X.alphabet:
        raise AlphabetMismatch("morphism source differs from the subshift alphabet")
    A = X.alphabet
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    checked = 0
    for p in range(1, period_max + 1):
        for v in _lyndon_words(len(A), p):
            if not _periodic_in(X, v):
                continue
            checked += 1
            for s in range(p):
                rot = _rotate(v, s)
                img = sigma.image_letters(rot)
                q = root_length(img)
                if q < len(img):
                    j, ell = _lift_shift(sigma, rot, q)
                    witness = PeriodicWitness(
                        Word._trusted(A, rot), 0, Word._trusted(A, _rotate(rot, j)), ell, "period"
                    )
                    return RecognizabilityCertificate(
                        Verdict.COUNTEREXAMPLE_FOUND, period_max=period_max, witness=witness
                    )
            img = sigma.image_letters(v)
            key = least_rotation(img[: root_length(img)])
            if key in seen:
                other = seen[key]
                other_img = sigma.image_letters(other)
                t = next(t for t in range(len(other_img)) if _same_periodic(_rotate(other_img, t), img))
                j, ell = _lift_shift(sigma, other, t)
                witness = PeriodicWitness(
                    Word._trusted(A, v), 0, Word._trusted(A, _rotate(other, j)), ell, "orbit"
                )
                return RecognizabilityCertificate(
                    Verdict.COUNTEREXAMPLE_FOUND, period_max=period_max, witness=witness
                )
            seen[key] = v
    log.debug("periodic audit: %d periodic orbits of period <= %d checked", checked, period_max)
    return RecognizabilityCertificate(Verdict.CERTIFIED_UP_TO, window=period_max, period_max=period_max)


def _same_periodic(p: tuple, q: tuple) -> bool:
    L = lcm(len(p), len(q))
    return p * (L // len(p)) == q * (L // len(q))


def check_recognizability(
    sigma: Morphism, X: Subshift, r_max: int = 3, window: int = 10, period_max: int = 4
) -> RecognizabilityCertificate:
    """Combine the repetition-bound search and the periodic-point audit.

    The search runs for the letter-to-letter part of the canonical
    decomposition on the subdivided subshift ``pi(X)``.  A periodic
    counterexample takes precedence; a refuted repetition bound is also
    reported as a counterexample, but its witness only refutes radii up
    to `r_max`.
    """
    if window < 2 * r_max + 2:
        raise ValueError("window must be at least 2 * r_max + 2")
    pi, alpha = canonical_decomposition(sigma)
    Z = MorphicImage(X, pi)
    audit = periodic_point_audit(sigma, X, period_max)
    if audit.verdict is Verdict.COUNTEREXAMPLE_FOUND:
        return RecognizabilityCertificate(
            Verdict.COUNTEREXAMPLE_FOUND, window=window, r_max=r_max, period_max=period_max, witness=audit.witness
        )
    rep = find_repetition_bound(alpha, Z, r_max, window)
    if rep.verdict is Verdict.COUNTEREXAMPLE_FOUND:
        return RecognizabilityCertificate(
            Verdict.COUNTEREXAMPLE_FOUND, window=window, r_max=r_max, period_max=period_max, witness=rep.witness
        )
    if rep.certified and audit.certified:
        return RecognizabilityCertificate(
            Verdict.CERTIFIED_UP_TO, r=rep.r, window=window, r_max=r_max, period_max=period_max
        )
    return RecognizabilityCertificate(Verdict.INCONCLUSIVE, window=window, r_max=r_max, period_max=period_max)


# Witness replay ------------------------------------------------------------


def _periodic_letter(p: tuple, i: int):
    # Biinfinite periodic word with x_1 = p[0].
    return p[(i - 1) % len(p)]


def _shift_image(sigma: Morphism, x: tuple, k: int, span: int) -> list:
    """Letters ``(T^k sigma(x))_i`` for ``i = 1..span``, built letter by letter."""
    y = []
    i = 0
    while len(y) < k + span:
        y.extend(sigma.images[x[i % len(x)]])
        i += 1
    return y[k : k + span]


def replay_periodic_witness(sigma: Morphism, X: Subshift, w: PeriodicWitness) -> bool:
    """Re-verify that `w` violates unique lifting of a biinfinite word.

    Checks both periodic points lie in `X`, the shift ranges, that
    ``T^k sigma(x)`` and ``T^ell sigma(x')`` agree on a full common period,
    and that ``(x, k) != (x', ell)``.
    """
    x, xp = w.x.letters, w.x_prime.letters
    if not x or not xp:
        return False
    if not (0 <= w.k < len(sigma.images[x[0]]) and 0 <= w.ell < len(sigma.images[xp[0]])):
        return False
    if not (_periodic_in(X, x) and _periodic_in(X, xp)):
        return False
    # Both images are periodic with periods |sigma(x)|, |sigma(x')|.
    span = lcm(len(sigma.image_letters(x)), len(sigma.image_letters(xp)))
    if _shift_image(sigma, x, w.k, span) != _shift_image(sigma, xp, w.ell, span):
        return False
    same_point = all(
        _periodic_letter(x, i) == _periodic_letter(xp, i) for i in range(1, lcm(len(x), len(xp)) + 1)
    )
    return not (same_point and w.k == w.ell)


def replay_pair_witness(alpha: Morphism, Z: Subshift, w: PairWitness) -> bool:
    """Re-verify a pair: both in ``L(Z)``, equal images, distinct ``refutes``-chops."""
    u, v = w.left, w.right
    return (
        len(u) == len(v)
        and Z.contains(u.letters)
        and Z.contains(v.letters)
        and alpha(u) == alpha(v)
        and chop(u, w.refutes) != chop(v, w.refutes)
    )


def replay_witness(sigma: Morphism, X: Subshift, cert: RecognizabilityCertificate) -> bool:
    """Replay the witness of a ``COUNTEREXAMPLE_FOUND`` certificate for `sigma` on `X`.

    Pair witnesses live on the subdivided subshift of the canonical
    decomposition, or directly on `X` when `sigma` is letter-to-letter
    and the witness is over ``X``'s alphabet.
    """
    w = cert.witness
    if isinstance(w, PeriodicWitness):
        return replay_periodic_witness(sigma, X, w)
    if isinstance(w, PairWitness):
        if sigma.is_letter_to_letter and w.left.alphabet == X.alphabet:
            return replay_pair_witness(sigma, X, w)
        pi, alpha = canonical_decomposition(sigma)
        return replay_pair_witness(alpha, MorphicImage(X, pi), w)
    return False
