"""Entropy profiles and exact verifiers for complexity inequalities.

Every verifier comes in two layers: a ``check_*`` function that works on
:class:`ComplexityTable` values only (so a serialized table can be
re-verified, or deliberately corrupted as a negative control), and a
``verify_*`` wrapper that builds the tables from presentations.
Comparisons use integers or :class:`fractions.Fraction`; floats only
appear in entropy profiles.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .morphisms import Morphism, canonical_decomposition, doubling_morphism
from .recognizability import RecognizabilityCertificate, check_recognizability
from .subshifts import ComplexityTable, FullShift, MorphicImage, Subshift, complexity_table
from .words import Alphabet


# Entropy -------------------------------------------------------------------


@dataclass(frozen=True)
class EntropyProfile:
    """Finite sequence of ``(n, p(n), log p(n) / n)``; the headline is the last entry."""

    label: str
    entries: tuple[tuple[int, int, float], ...]

    @classmethod
    def from_table(cls, table: ComplexityTable, ns: Iterable[int] | None = None) -> "EntropyProfile":
        ns = sorted(table.entries) if ns is None else sorted(ns)
        return cls(table.label, tuple((n, table[n], math.log(table[n]) / n) for n in ns))

    @property
    def window(self) -> int:
        return self.entries[-1][0]

    @property
    def headline(self) -> float:
        return self.entries[-1][2]

    def value(self, n: int) -> float:
        for m, _, h in self.entries:
            if m == n:
                return h
        raise KeyError(n)

    def values(self) -> list[float]:
        return [h for _, _, h in self.entries]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "p", "log_p_over_n"])
        for n, p, h in self.entries:
            w.writerow([n, p, repr(h)])
        return buf.getvalue()


def entropy_profile(X: Subshift, n_range: Iterable[int] | int, method: str = "auto") -> EntropyProfile:
    """``log p_X(n) / n`` over `n_range` (an int ``N`` means ``1..N``)."""
    ns = range(1, n_range + 1) if isinstance(n_range, int) else sorted(n_range)
    table = complexity_table(X, max(ns), method)
    return EntropyProfile.from_table(table, ns)


# Reports -------------------------------------------------------------------


@dataclass
class BoundReport:
    """Outcome of one claim over a finite window.

    ``first_failure`` holds the failing ``n`` with both sides of the
    inequality, so a failure can be re-checked from the tables.
    ``holds_from`` is the least ``n`` from which the inequality holds up to
    the window end (``None`` if it fails at the end).
    """

    claim: str
    passed: bool
    window: int
    constants: dict = field(default_factory=dict)
    first_failure: dict | None = None
    holds_from: int | None = None
    threshold: int | None = None
    checked: tuple[int, ...] = ()
    skipped: tuple[int, ...] = ()
    table_digests: dict[str, str] = field(default_factory=dict)
    parts: list["BoundReport"] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "claim": self.claim,
            "passed": self.passed,
            "window": self.window,
            "constants": {k: _jsonable(v) for k, v in self.constants.items()},
            "first_failure": None
            if self.first_failure is None
            else {k: _jsonable(v) for k, v in self.first_failure.items()},
            "holds_from": self.holds_from,
            "threshold": self.threshold,
            "checked": list(self.checked),
            "skipped": list(self.skipped),
            "table_digests": dict(sorted(self.table_digests.items())),
        }
        if self.details:
            d["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        if self.parts:
            d["parts"] = [p.to_dict() for p in self.parts]
        return d

    def to_text(self, indent: int = 0) -> str:
        pad = " " * indent
        verdict = "PASS" if self.passed else "FAIL"
        lines = [f"{pad}{verdict:<5}{self.claim}  (window {self.window})"]
        rows = []
        if self.constants:
            rows.append(("constants", ", ".join(f"{k}={_jsonable(v)}" for k, v in self.constants.items())))
        if self.threshold is not None:
            rows.append(("threshold", str(self.threshold)))
        if self.holds_from is not None:
            rows.append(("holds from", str(self.holds_from)))
        if self.skipped:
            rows.append(("skipped", _ranges(self.skipped)))
        if self.first_failure:
            rows.append(("first failure", ", ".join(f"{k}={_jsonable(v)}" for k, v in self.first_failure.items())))
        for k, v in self.details.items():
            rows.append((k, str(_jsonable(v))))
        width = max((len(k) for k, _ in rows), default=0)
        lines += [f"{pad}     {k:<{width}}  {v}" for k, v in rows]
        lines += [p.to_text(indent + 2) for p in self.parts]
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _ranges(ns: Iterable[int]) -> str:
    ns = sorted(ns)
    out, start = [], None
    for i, n in enumerate(ns):
        if start is None:
            start = n
        if i + 1 == len(ns) or ns[i + 1] != n + 1:
            out.append(str(start) if start == n else f"{start}-{n}")
            start = None
    return ",".join(out)


def _check_range(
    claim: str,
    ns: Iterable[int],
    test: Callable[[int], tuple[bool, dict]],
    window: int,
    constants: dict | None = None,
    threshold: int | None = None,
    skipped: Iterable[int] = (),
    tables: Iterable[ComplexityTable] = (),
) -> BoundReport:
    ns = list(ns)
    failure = None
    last_bad = None
    for n in ns:
        ok, values = test(n)
        if not ok:
            last_bad = n
            if failure is None:
                failure = {"n": n, **values}
    holds_from = None
    if ns and last_bad != ns[-1]:
        holds_from = ns[0] if last_bad is None else next(n for n in ns if n > last_bad)
    return BoundReport(
        claim=claim,
        passed=failure is None,
        window=window,
        constants=constants or {},
        first_failure=failure,
        holds_from=holds_from,
        threshold=threshold,
        checked=tuple(ns),
        skipped=tuple(skipped),
        table_digests={t.label: t.digest() for t in tables},
    )


def _combine(claim: str, window: int, parts: list[BoundReport], constants: dict | None = None) -> BoundReport:
    digests: dict[str, str] = {}
    for p in parts:
        digests.update(p.table_digests)
    failed = next((p for p in parts if not p.passed), None)
    return BoundReport(
        claim=claim,
        passed=failed is None,
        window=window,
        constants=constants or {},
        first_failure=None if failed is None else {"part": failed.claim, **failed.first_failure},
        table_digests=digests,
        parts=parts,
    )


# Upper bound ---------------------------------------------------------------


def upper_window(sigma: Morphism, N: int) -> int:
    """Image-table window needed by :func:`check_upper_bound`."""
    return sigma.inf_norm * (N - 1) + 1


def check_upper_bound(
    x: ComplexityTable, y: ComplexityTable, sup_norm: int, inf_norm: int, N: int
) -> BoundReport:
    """``p_Y(n) <= ||s|| p_X(n)`` and the chain through ``p_Y(<s>(n-1)+1)`` for ``n <= N``."""
    direct = _check_range(
        "upper: p_Y(n) <= C p_X(n)",
        range(1, N + 1),
        lambda n: (y[n] <= sup_norm * x[n], {"p_Y(n)": y[n], "C*p_X(n)": sup_norm * x[n]}),
        N,
        {"C": sup_norm},
        tables=(x, y),
    )

    def chain(n):
        m = inf_norm * (n - 1) + 1
        ok = y[n] <= y[m] <= sup_norm * x[n]
        return ok, {"p_Y(n)": y[n], "m": m, "p_Y(m)": y[m], "C*p_X(n)": sup_norm * x[n]}

    sharp = _check_range(
        "upper chain: p_Y(n) <= p_Y(<s>(n-1)+1) <= C p_X(n)",
        range(1, N + 1),
        chain,
        N,
        {"C": sup_norm, "<s>": inf_norm},
        tables=(x, y),
    )
    return _combine("upper bound", N, [direct, sharp], {"C": sup_norm})


def verify_upper_bound(X: Subshift, sigma: Morphism, N: int, method: str = "auto") -> BoundReport:
    Y = MorphicImage(X, sigma)
    x = complexity_table(X, N, method)
    y = complexity_table(Y, upper_window(sigma, N), method)
    report = check_upper_bound(x, y, sigma.sup_norm, sigma.inf_norm, N)
    if sigma.is_letter_to_letter and all(x[n] == y[n] for n in range(1, N + 1)):
        report.details["equality"] = True
    return report


# Lower bounds --------------------------------------------------------------


def _certify(sigma: Morphism, X: Subshift, certificate, r_max: int, window: int, period_max: int):
    if certificate is None:
        certificate = check_recognizability(sigma, X, r_max=r_max, window=window, period_max=period_max)
    if not certificate.certified:
        raise ValueError(f"lower bounds need a certified repetition bound, got {certificate.verdict.value}")
    return certificate


def check_lower_bound_l2l(x: ComplexityTable, y: ComplexityTable, card: int, r: int, N: int) -> BoundReport:
    """``card^(2r) p_Y(m) >= p_X(m)`` for ``m <= N``."""
    c = Fraction(1, card ** (2 * r))
    return _check_range(
        "lower (letter-to-letter): p_Y(m) >= c p_X(m)",
        range(1, N + 1),
        lambda m: (y[m] >= c * x[m], {"p_Y(m)": y[m], "c*p_X(m)": c * x[m]}),
        N,
        {"c": c, "r": r},
        tables=(x, y),
    )


def verify_lower_bound_l2l(
    X: Subshift,
    sigma: Morphism,
    N: int,
    certificate: RecognizabilityCertificate | None = None,
    method: str = "auto",
    r_max: int = 3,
    window: int = 10,
    period_max: int = 4,
) -> BoundReport:
    if not sigma.is_letter_to_letter:
        raise ValueError("sigma must be letter-to-letter")
    cert = _certify(sigma, X, certificate, r_max, window, period_max)
    x = complexity_table(X, N, method)
    y = complexity_table(MorphicImage(X, sigma), N, method)
    return check_lower_bound_l2l(x, y, len(sigma.source), cert.r, N)


def general_threshold(sup_norm: int) -> int:
    """Least ``m`` with ``m >= 1 / (1/s - d)`` for ``d = 1/(s+1)``, i.e. ``s (s+1)``."""
    return sup_norm * (sup_norm + 1)


def check_lower_bound_general(
    x: ComplexityTable,
    z: ComplexityTable,
    y: ComplexityTable,
    sup_norm: int,
    card_sub: int,
    r: int,
    N: int,
) -> BoundReport:
    """The four inequalities behind ``p_Y(m) >= c p_X(floor(d m))``.

    `z` is the table of the subdivided subshift over ``card_sub`` letters,
    ``c = card_sub^(-2r)`` and ``d = 1 / (sup_norm + 1)``.
    """
    s = sup_norm
    K = card_sub ** (2 * r)
    c = Fraction(1, K)
    d = Fraction(1, s + 1)
    tabs = (x, z, y)
    p1 = _check_range(
        "subdivided vs image: p_Y(n+2r) >= p_Z(n)",
        range(1, N - 2 * r + 1),
        lambda n: (y[n + 2 * r] >= z[n], {"p_Y(n+2r)": y[n + 2 * r], "p_Z(n)": z[n]}),
        N,
        {"r": r},
        tables=tabs,
    )
    p2 = _check_range(
        "extension count: p_Z(n+2r) <= K p_Z(n)",
        range(1, N - 2 * r + 1),
        lambda n: (z[n + 2 * r] <= K * z[n], {"p_Z(n+2r)": z[n + 2 * r], "K*p_Z(n)": K * z[n]}),
        N,
        {"K": K},
        tables=tabs,
    )
    p3 = _check_range(
        "subdivision stretch: p_Z(s n) >= p_X(n)",
        range(1, N // s + 1),
        lambda n: (z[s * n] >= x[n], {"p_Z(s*n)": z[s * n], "p_X(n)": x[n]}),
        N,
        {"s": s},
        tables=tabs,
    )
    t = general_threshold(s)

    def final(m):
        dm = math.floor(d * m)
        return y[m] >= c * x[dm], {"p_Y(m)": y[m], "floor(d*m)": dm, "c*p_X(floor(d*m))": c * x[dm]}

    p4 = _check_range(
        "lower (general): p_Y(m) >= c p_X(floor(d m))",
        range(t, N + 1),
        final,
        N,
        {"c": c, "d": d},
        threshold=t,
        skipped=range(1, min(t, N + 1)),
        tables=tabs,
    )
    report = _combine("lower bound (general)", N, [p1, p2, p3, p4], {"r": r, "c": c, "d": d, "threshold": t})
    report.threshold = t
    report.skipped = p4.skipped
    return report


def verify_lower_bound_general(
    X: Subshift,
    sigma: Morphism,
    N: int,
    certificate: RecognizabilityCertificate | None = None,
    method: str = "auto",
    r_max: int = 3,
    window: int = 10,
    period_max: int = 4,
) -> BoundReport:
    cert = _certify(sigma, X, certificate, r_max, window, period_max)
    pi, _ = canonical_decomposition(sigma)
    x = complexity_table(X, N, method)
    z = complexity_table(MorphicImage(X, pi), N, method)
    y = complexity_table(MorphicImage(X, sigma), N, method)
    return check_lower_bound_general(x, z, y, sigma.sup_norm, len(pi.target), cert.r, N)


# The doubling counterexample -----------------------------------------------


def check_doubling_tables(
    x: ComplexityTable,
    y: ComplexityTable,
    k: int,
    N: int,
    entropy_window: int | None = None,
) -> BoundReport:
    """Exact identities and growth for ``Y`` the doubling image of the full `k`-shift.

    Needs `x` to ``max(2N, N+1)`` and `y` to ``max(2N, entropy_window)``.
    """
    tabs = (x, y)
    odd = _check_range(
        "doubling: p_Y(2n-1) = 2 p_X(n)",
        range(1, N + 1),
        lambda n: (y[2 * n - 1] == 2 * x[n], {"p_Y(2n-1)": y[2 * n - 1], "2*p_X(n)": 2 * x[n]}),
        N,
        tables=tabs,
    )
    even = _check_range(
        "doubling: p_Y(2n) = p_X(n) + p_X(n+1)",
        range(1, N + 1),
        lambda n: (y[2 * n] == x[n] + x[n + 1], {"p_Y(2n)": y[2 * n], "p_X(n)+p_X(n+1)": x[n] + x[n + 1]}),
        N,
        tables=tabs,
    )

    def ratio_of(n):
        return Fraction(x[2 * n], y[2 * n])

    def ratio(n):
        closed = Fraction(k ** (2 * n), k**n + k ** (n + 1))
        got = ratio_of(n)
        ok = got == closed and (n == 1 or got > ratio_of(n - 1))
        return ok, {"p_X(2n)/p_Y(2n)": got, "closed form": closed}

    growth = _check_range(
        "non-Theta: p_X(2n)/p_Y(2n) = k^2n/(k^n+k^(n+1)), strictly increasing",
        range(1, N + 1),
        ratio,
        N,
        {"k": k},
        tables=tabs,
    )
    growth.details["final ratio"] = float(ratio_of(N))
    parts = [odd, even, growth]
    if entropy_window:
        W = entropy_window
        hx = math.log(x[min(W, x.window)]) / min(W, x.window)
        hy = [math.log(y[n]) / n for n in range(1, W + 1)]
        half = math.log(k) / 2

        def drop(n):
            ok = hy[n - 1] < hy[n - 3] and (n < W or hy[n - 1] < hx)
            return ok, {"h_Y(n)": hy[n - 1], "h_Y(n-2)": hy[n - 3], "h_X": hx}

        ent = _check_range(
            "entropy drop: h_Y(n) < h_Y(n-2), headline h_Y < h_X",
            range(3, W + 1),
            drop,
            W,
            {"h_X": hx, "log(k)/2": half},
            tables=tabs,
        )
        ent.details["headline h_Y"] = hy[-1]
        ent.details["distance to log(k)/2"] = hy[-1] - half
        parts.append(ent)
    return _combine("doubling counterexample", N, parts, {"k": k})


def counterexample_suite(k: int, N: int, entropy_window: int | None = 30, method: str = "auto") -> BoundReport:
    """Run :func:`check_doubling_tables` on the full `k`-shift and its doubling image."""
    if k < 2:
        raise ValueError("alphabet size must be at least 2")
    A = Alphabet([f"a{i}" for i in range(1, k + 1)])
    X = FullShift(A)
    Y = MorphicImage(X, doubling_morphism(A))
    x = complexity_table(X, max(2 * N, N + 1), method)
    y = complexity_table(Y, max(2 * N, entropy_window or 0), method)
    return check_doubling_tables(x, y, k, N, entropy_window)


# Theta diagnostics ---------------------------------------------------------


@dataclass(frozen=True)
class ThetaDiagnostic:
    """Ratio corridor ``p_A(n) / p_B(n)`` over a common window.

    A ratio that keeps growing (or shrinking) over the tail of the window is
    flagged as evidence against a two-sided constant bound; it is never a
    proof either way.
    """

    window: int
    min_ratio: Fraction
    max_ratio: Fraction
    ratios: tuple[Fraction, ...]
    growing: bool
    shrinking: bool

    @property
    def flagged(self) -> bool:
        return self.growing or self.shrinking

    def to_dict(self) -> dict:
        return {
            "window": self.window,
            "min_ratio": _jsonable(self.min_ratio),
            "max_ratio": _jsonable(self.max_ratio),
            "growing": self.growing,
            "shrinking": self.shrinking,
            "flagged": self.flagged,
        }


def theta_diagnostic(pa: ComplexityTable, pb: ComplexityTable, tail: int = 4) -> ThetaDiagnostic:
    """Min, max and trend of ``p_A / p_B``.

    The trend is flagged when the ratio is strictly monotone over the last
    `tail` steps and its overall spread exceeds a factor of two.
    """
    ns = sorted(set(pa.entries) & set(pb.entries))
    if not ns:
        raise ValueError("tables share no window")
    ratios = tuple(Fraction(pa[n], pb[n]) for n in ns)
    last = ratios[-(tail + 1) :]
    wide = max(ratios) >= 2 * min(ratios)
    up = len(last) > 1 and all(a < b for a, b in zip(last, last[1:])) and wide
    down = len(last) > 1 and all(a > b for a, b in zip(last, last[1:])) and wide
    return ThetaDiagnostic(ns[-1], min(ratios), max(ratios), ratios, up, down)


# Entropy transfer ----------------------------------------------------------


def check_entropy_transfer(
    x: ComplexityTable, y: ComplexityTable, C: int, D: int, N: int
) -> BoundReport:
    """Logarithmic form of ``p_Y(n) <= C p_X(D n)``.

    ``log p_Y(n) / n <= D h_X(D n) + log(C) / n`` where ``h_X(m) = log p_X(m) / m``:
    a small entropy profile for `x` forces a small one for `y`.
    """

    def test(n):
        hy = math.log(y[n]) / n
        bound = D * math.log(x[D * n]) / (D * n) + math.log(C) / n
        return hy <= bound + 1e-12, {"h_Y(n)": hy, "bound": bound}

    report = _check_range(
        "entropy transfer: h_Y(n) <= D h_X(D n) + log(C)/n",
        range(1, N + 1),
        test,
        N,
        {"C": C, "D": D},
        tables=(x, y),
    )
    report.details["headline h_X"] = math.log(x[D * N]) / (D * N)
    report.details["headline h_Y"] = math.log(y[N]) / N
    return report
