"""Command-line entry point.

Exit status is 0 on success (including negative recognizability
verdicts), 1 when a verifier reports a failure and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import io as sio
from .analysis import EntropyProfile, counterexample_suite
from .recognizability import check_recognizability
from .subshifts import Double, MorphicImage, complexity_table
from .words import AlphabetMismatch, DoubledAlphabet

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    inputs: list[Path] = field(default_factory=list)
    n: int = 10
    r_max: int = 3
    window: int = 10
    period_max: int = 4
    L: int = 6
    alphabet_size: int = 2
    method: str = "auto"
    format: str = "csv"
    output: Path | None = None

    def validate(self) -> None:
        for name in ("n", "window", "L", "alphabet_size"):
            if getattr(self, name) < 1:
                raise sio.FormatError(f"--{name.replace('_', '-')} must be positive")
        if self.r_max < 0 or self.period_max < 0:
            raise sio.FormatError("--r-max and --period-max must be non-negative")
        for p in self.inputs:
            if not p.is_file():
                raise sio.FormatError(f"no such file: {p}")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symcomplex", description="Complexity of subshifts under morphisms.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=("csv", "json"), default=None):
        sp.add_argument("-n", type=_positive, default=10, help="window length N")
        sp.add_argument("--format", choices=fmt, default=default or fmt[0])
        sp.add_argument("-o", "--output", type=Path)

    sp = sub.add_parser("complexity", help="complexity table of a presentation")
    sp.add_argument("X", type=Path)
    sp.add_argument("--method", choices=("auto", "enumerate"), default="auto")
    common(sp)

    sp = sub.add_parser("image", help="complexity table of a morphic image")
    sp.add_argument("X", type=Path)
    sp.add_argument("sigma", type=Path)
    sp.add_argument("--method", choices=("auto", "enumerate"), default="auto")
    common(sp)

    sp = sub.add_parser("recognize", help="recognizability certificate")
    sp.add_argument("sigma", type=Path)
    sp.add_argument("X", type=Path)
    sp.add_argument("--r-max", type=int, default=3)
    sp.add_argument("--window", type=_positive, default=10)
    sp.add_argument("--period-max", type=int, default=4)
    sp.add_argument("-o", "--output", type=Path)

    sp = sub.add_parser("entropy", help="entropy profile log p(n)/n")
    sp.add_argument("X", type=Path)
    common(sp)

    sp = sub.add_parser("counterexample", help="doubling counterexample on a full shift")
    sp.add_argument("--alphabet-size", type=_positive, default=2)
    sp.add_argument("--entropy-window", type=_positive, default=30)
    common(sp, ("json", "text"))

    sp = sub.add_parser("basis-change", help="two-sided bound under a change of free basis")
    sp.add_argument("X", type=Path)
    sp.add_argument("phi", type=Path)
    sp.add_argument("phi_inv", type=Path)
    sp.add_argument("-L", type=_positive, default=6, help="cancellation search window")
    common(sp, ("json", "text"))

    sp = sub.add_parser("verify", help="run the claim suite")
    sp.add_argument("target", choices=("all",))
    common(sp, ("text", "json"))
    return p


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text, encoding="utf-8")


def _table_out(table, fmt: str) -> str:
    if fmt == "json":
        return sio.dumps({"label": table.label, "entries": {str(n): p for n, p in table.items()}})
    return table.to_csv()


def _reports_out(reports, fmt: str) -> str:
    if fmt == "json":
        return sio.dumps([r.to_dict() for r in reports])
    return "\n".join(r.to_text() for r in reports) + "\n"


def _failed(reports) -> list[str]:
    return [r.claim for r in reports if not r.passed]


def run(args: argparse.Namespace) -> int:
    cmd = args.command
    out = getattr(args, "output", None)
    if cmd == "complexity":
        X = sio.subshift_from_json(sio.load_json(args.X))
        _emit(_table_out(complexity_table(X, args.n, args.method), args.format), out)
        return EXIT_OK
    if cmd == "image":
        X = sio.subshift_from_json(sio.load_json(args.X))
        sigma = sio.morphism_from_json(sio.load_json(args.sigma), X.alphabet)
        Y = MorphicImage(X, sigma)
        _emit(_table_out(complexity_table(Y, args.n, args.method), args.format), out)
        return EXIT_OK
    if cmd == "recognize":
        X = sio.subshift_from_json(sio.load_json(args.X))
        sigma = sio.morphism_from_json(sio.load_json(args.sigma), X.alphabet)
        window = max(args.window, 2 * args.r_max + 2)
        cert = check_recognizability(sigma, X, r_max=args.r_max, window=window, period_max=args.period_max)
        _emit(sio.dumps(sio.certificate_to_json(cert)), out)
        return EXIT_OK
    if cmd == "entropy":
        X = sio.subshift_from_json(sio.load_json(args.X))
        prof = EntropyProfile.from_table(complexity_table(X, args.n))
        if args.format == "json":
            _emit(sio.dumps({"label": prof.label, "window": prof.window, "headline": prof.headline,
                             "entries": [list(e) for e in prof.entries]}), out)
        else:
            _emit(prof.to_csv(), out)
        return EXIT_OK
    if cmd == "counterexample":
        report = counterexample_suite(args.alphabet_size, args.n, args.entropy_window)
        _emit(_reports_out([report], args.format) if args.format == "text" else sio.dumps(report.to_dict()), out)
        return _status([report])
    if cmd == "basis-change":
        from .suite import basis_change_experiment

        X = sio.subshift_from_json(sio.load_json(args.X))
        Xpm = X if isinstance(X.alphabet, DoubledAlphabet) else Double(X)
        basis = Xpm.alphabet.positive
        phi = sio.hom_from_json(sio.load_json(args.phi), basis)
        psi = sio.hom_from_json(sio.load_json(args.phi_inv), phi.target.positive)
        exp = basis_change_experiment(Xpm, phi, psi, args.n, args.L)
        if args.format == "json":
            _emit(sio.dumps(exp.to_dict()), out)
        else:
            d = exp.to_dict()
            verdict = "PASS" if d["passed"] else "FAIL"
            _emit(f"{verdict}  basis change (window {args.n})\n"
                  + "".join(f"     {k}: {json.dumps(v)}\n" for k, v in d.items() if k != "passed"), out)
        if not exp.report.passed:
            print("claim failed: basis-change", file=sys.stderr)
            return EXIT_FAIL
        return EXIT_OK
    if cmd == "verify":
        from .suite import run_all

        reports = run_all(args.n)
        _emit(_reports_out(reports, args.format), out)
        return _status(reports)
    raise AssertionError(cmd)


def _status(reports) -> int:
    bad = _failed(reports)
    for claim in bad:
        print(f"claim failed: {claim}", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    config = RunConfig(
        args.command,
        inputs=[getattr(args, k) for k in ("X", "sigma", "phi", "phi_inv") if getattr(args, k, None) is not None],
        **{k: getattr(args, k) for k in ("n", "r_max", "window", "period_max", "L", "alphabet_size") if hasattr(args, k)},
    )
    try:
        config.validate()
        return run(args)
    except (sio.FormatError, AlphabetMismatch, KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
