"""Factor complexity of subshifts under monoid morphisms and free basis changes."""

from .analysis import (
    BoundReport,
    EntropyProfile,
    ThetaDiagnostic,
    check_lower_bound_general,
    check_lower_bound_l2l,
    check_upper_bound,
    counterexample_suite,
    entropy_profile,
    theta_diagnostic,
    verify_lower_bound_general,
    verify_lower_bound_l2l,
    verify_upper_bound,
)
from .freegroup import (
    BasisChangeConstants,
    FreeGroupHom,
    ReducedWord,
    apply_hom,
    basis_change_language,
    basis_change_window,
    cancellation_bound_estimate,
    compose_check_inverse,
    free_reduce,
    verify_basis_change_inequality,
)
from .morphisms import Morphism, apply_morphism, canonical_decomposition, fibonacci, renaming, doubling_morphism
from .recognizability import (
    RecognizabilityCertificate,
    Verdict,
    check_recognizability,
    find_repetition_bound,
    periodic_point_audit,
    replay_witness,
)
from .subshifts import (
    SFT,
    ComplexityTable,
    Double,
    FullShift,
    MorphicImage,
    PrimitiveSubstitution,
    Subshift,
    check_primitive,
    complexity,
    complexity_table,
    image_language,
    language,
)
from .words import Alphabet, AlphabetMismatch, DoubledAlphabet, Word, chop, primitive_root

__version__ = "0.1.0"
