"""End-to-end experiments and the ``verify all`` claim list."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from . import corpus
from .analysis import (
    BoundReport,
    check_entropy_transfer,
    counterexample_suite,
    theta_diagnostic,
    verify_lower_bound_general,
    verify_lower_bound_l2l,
    verify_upper_bound,
)
from .freegroup import (
    BasisChangeConstants,
    BasisChangeReport,
    FreeGroupHom,
    basis_change_window,
    cancellation_bound_estimate,
    compose_check_inverse,
    fibonacci_squared_pair,
    verify_basis_change_inequality,
)
from .morphisms import Morphism, canonical_decomposition
from .recognizability import Verdict, check_recognizability, replay_witness
from .subshifts import ComplexityTable, Double, MorphicImage, Subshift, complexity, complexity_table, language

log = logging.getLogger(__name__)


@dataclass
class BasisChangeExperiment:
    constants: BasisChangeConstants
    stabilization: dict[str, tuple[int, ...]]
    x_table: ComplexityTable
    y_table: ComplexityTable
    windows: dict[int, int]
    certified_windows: tuple[int, ...]
    report: BasisChangeReport

    def to_dict(self) -> dict:
        d = self.report.to_dict()
        d["cancellation_sequences"] = {k: list(v) for k, v in self.stabilization.items()}
        d["language_windows"] = {str(n): m for n, m in sorted(self.windows.items())}
        d["proof_window_used"] = list(self.certified_windows)
        return d


def basis_change_experiment(
    Xpm: Subshift,
    phi_ba: FreeGroupHom,
    phi_ab: FreeGroupHom,
    N: int,
    L: int = 6,
    bounds: tuple[int, int] | None = None,
) -> BasisChangeExperiment:
    """Estimate cancellation bounds, build both tables and check the two-sided inequality.

    `bounds` overrides the estimates with ``(C(B,A), C(A,B))``.
    """
    if not compose_check_inverse(phi_ba, phi_ab):
        raise ValueError("phi_ba and phi_ab are not mutually inverse")
    e_ba = cancellation_bound_estimate(phi_ba, L)
    e_ab = cancellation_bound_estimate(phi_ab, L)
    c_ba, c_ab = bounds if bounds is not None else (e_ba.bound, e_ab.bound)
    consts = BasisChangeConstants(c_ba, c_ab, phi_ba.norm, phi_ab.norm)
    entries, windows, certified = {}, {}, []
    for n in range(1, N + 1):
        res = basis_change_window(Xpm, phi_ba, phi_ab, c_ba, c_ab, n)
        entries[n] = len(res.words)
        windows[n] = res.window
        if res.window == res.proof_window:
            certified.append(n)
    y = ComplexityTable(f"basis change of {Xpm.describe()}", entries)
    x = complexity_table(Xpm, consts.upper_D * N)
    report = verify_basis_change_inequality(x, y, consts, N)
    return BasisChangeExperiment(
        consts,
        {"C(B,A)": e_ba.sequence, "C(A,B)": e_ab.sequence},
        x,
        y,
        windows,
        tuple(certified),
        report,
    )


def _wrap(claim: str, window: int, passed: bool, **details) -> BoundReport:
    return BoundReport(claim=claim, passed=passed, window=window, details=details)


def run_all(N: int = 10) -> list[BoundReport]:
    """Every claim at window `N` (recognizability and entropy use fixed windows)."""
    reports: list[BoundReport] = []

    cx = counterexample_suite(2, N, entropy_window=30)
    cx.claim = "doubling counterexample (identities, non-Theta ratio, entropy drop)"
    reports.append(cx)

    for xn, X in corpus.subshifts().items():
        for sn, s in corpus.morphisms().items():
            r = verify_upper_bound(X, s, N)
            r.claim = f"upper bound [{xn} x {sn}]"
            reports.append(r)

    A = corpus.A2
    cases = [
        ("doubling on full shift", corpus.doubling(), corpus.full_shift(), Verdict.CERTIFIED_UP_TO),
        ("a->aa on full shift", Morphism(A, A, [(0, 0), (1,)]), corpus.full_shift(), Verdict.COUNTEREXAMPLE_FOUND),
        ("constant image on full shift", Morphism(A, A, [(0,), (0,)]), corpus.full_shift(), Verdict.COUNTEREXAMPLE_FOUND),
    ]
    for name, s, X, expected in cases:
        cert = check_recognizability(s, X)
        ok = cert.verdict is expected
        if cert.verdict is Verdict.COUNTEREXAMPLE_FOUND:
            ok = ok and replay_witness(s, X, cert)
        reports.append(_wrap(f"recognizability [{name}]", cert.window, ok, verdict=cert.verdict.value, r=cert.r))

    r = verify_lower_bound_general(corpus.full_shift(), corpus.doubling(), max(N, 12))
    r.claim = "lower bound (general) [full x doubling]"
    reports.append(r)
    r = verify_lower_bound_general(corpus.fibonacci_subshift(), corpus.fibonacci_squared(), 12, r_max=5, window=12)
    r.claim = "lower bound (general) [fibonacci x fibonacci_squared]"
    reports.append(r)
    pi, alpha = canonical_decomposition(corpus.doubling())
    r = verify_lower_bound_l2l(MorphicImage(corpus.full_shift(), pi), alpha, N)
    r.claim = "lower bound (letter-to-letter) [subdivided full x doubling]"
    reports.append(r)

    phi, psi = fibonacci_squared_pair(A)
    exp = basis_change_experiment(Double(corpus.full_shift()), phi, psi, N)
    stable = all(cancellation_bound_estimate(h, 6).stable_for() >= 3 for h in (phi, psi))
    bc = _wrap(
        "basis change [doubled full shift, Fibonacci squared]",
        N,
        exp.report.passed and stable,
        constants=exp.report.constants,
        first_failure=exp.report.first_failure,
        cancellation_stable=stable,
    )
    reports.append(bc)

    sigma = Morphism(A, A, phi.images)
    two_path = all(
        basis_change_window(Double(corpus.full_shift()), phi, psi, exp.constants.c_ba, exp.constants.c_ab, n).words
        == language(Double(MorphicImage(corpus.full_shift(), sigma)), n)
        for n in range(1, min(N, 8) + 1)
    )
    reports.append(_wrap("two-path agreement [Fibonacci squared]", min(N, 8), two_path))

    fib = basis_change_experiment(Double(corpus.fibonacci_subshift()), phi, psi, N)
    th = theta_diagnostic(fib.x_table, fib.y_table)
    reports.append(_wrap("basis change [doubled Fibonacci]", N, fib.report.passed, theta=th.to_dict()))
    et = check_entropy_transfer(fib.x_table, fib.y_table, fib.constants.upper_C, fib.constants.upper_D, N)
    et.claim = "entropy transfer [doubled Fibonacci]"
    reports.append(et)

    doubles = all(
        complexity(Double(X), n, "enumerate") == 2 * complexity(X, n, "enumerate")
        for X in corpus.subshifts().values()
        for n in range(1, N + 1)
    )
    reports.append(_wrap("doubling identity [corpus]", N, doubles))
    return reports
