"""Small standard presentations used by the verification suite and tests."""

from __future__ import annotations

from .morphisms import Morphism, fibonacci, renaming, doubling_morphism
from .subshifts import SFT, FullShift, PrimitiveSubstitution, Subshift
from .words import Alphabet

A2 = Alphabet(["a1", "a2"])


def full_shift(k: int = 2) -> FullShift:
    return FullShift(A2 if k == 2 else Alphabet([f"a{i}" for i in range(1, k + 1)]))


def golden_mean() -> SFT:
    """Binary SFT forbidding ``a2 a2``."""
    return SFT.from_words(A2, ["a2a2"])


def fibonacci_morphism() -> Morphism:
    return fibonacci(A2)


def fibonacci_squared() -> Morphism:
    return fibonacci(A2).power(2)


def fibonacci_subshift() -> PrimitiveSubstitution:
    return PrimitiveSubstitution(fibonacci(A2))


def thue_morse() -> Morphism:
    return Morphism(A2, A2, [(0, 1), (1, 0)])


def doubling() -> Morphism:
    return doubling_morphism(A2)


def rename() -> Morphism:
    return renaming(A2, ["b1", "b2"])


def subshifts() -> dict[str, Subshift]:
    return {
        "full": full_shift(),
        "golden_mean": golden_mean(),
        "fibonacci": fibonacci_subshift(),
    }


def morphisms() -> dict[str, Morphism]:
    return {
        "doubling": doubling(),
        "fibonacci": fibonacci_morphism(),
        "fibonacci_squared": fibonacci_squared(),
        "renaming": rename(),
    }
