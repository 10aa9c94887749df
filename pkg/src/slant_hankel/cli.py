"""Command-line front end: ``slant-hankel {matrix,spectrum,commute,verify}``.

Exit codes: 0 when every verdict is CONFIRMED, 2 when some verdict is
MISMATCH_DOCUMENTED, 1 on errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from dataclasses import dataclass, field
from enum import Enum

from . import __version__
from .certify import CertificationError, precision_bits
from .commutativity import (
    decide_commute,
    verify_lemma_tail_vanishing,
    verify_theorem_equal_degree,
    verify_theorem_unequal_degree,
)
from .operator_matrices import hankel_matrix, slant_matrix, w_matrix
from .spectral_analysis import (
    Monomial,
    PartialSum,
    ProofCase,
    Status,
    Verdict,
    adjoint_point_spectrum_check,
    compare_closed_form,
    compare_oracle_numerical,
    eigenvector_from_proof,
)
from .symbol_algebra import HarmonicSymbol, SymbolFormatError, load_symbol

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2

EQUAL_DEGREES = range(1, 7)
UNEQUAL_PAIRS = ((3, 1), (5, 2), (4, 3))
LEMMA_PAIRS = ((2, 1), (3, 1), (4, 2))
LEMMA_GRID_LIMIT = 3000


class Command(str, Enum):
    MATRIX = "matrix"
    SPECTRUM = "spectrum"
    COMMUTE = "commute"
    VERIFY = "verify"


class Format(str, Enum):
    JSON = "json"
    CSV = "csv"


@dataclass(frozen=True)
class RunConfig:
    command: Command
    k: tuple[int, ...] = (2,)
    dim: int = 16
    tol: float = 1e-9
    seed: int = 42
    format: Format = Format.JSON
    symbol_paths: tuple[str, ...] = ()
    output_path: str | None = None
    trials: int = 50

    def __post_init__(self):
        if not self.k or any(k < 2 for k in self.k):
            raise ValueError(f"k must be >= 2, got {list(self.k)}")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")

    def to_json(self) -> dict:
        return {
            "command": self.command.value,
            "k": list(self.k),
            "dim": self.dim,
            "tol": self.tol,
            "seed": self.seed,
            "format": self.format.value,
            "symbols": list(self.symbol_paths),
            "trials": self.trials,
            "precision_bits": precision_bits(),
        }


def parse_k(text: str) -> tuple[int, ...]:
    """``"3"`` -> (3,), ``"2..4"`` -> (2, 3, 4)."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
            if hi < lo:
                raise ValueError
            return tuple(range(lo, hi + 1))
        return (int(text),)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid k {text!r}; use an integer or LO..HI") from None


# report assembly ------------------------------------------------------------


@dataclass
class Outcome:
    results: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)  # (k, Verdict)

    def exit_code(self) -> int:
        if any(v.status is Status.MISMATCH_DOCUMENTED for _, v in self.verdicts):
            return EXIT_MISMATCH
        return EXIT_OK


def _load(config: RunConfig, need: int) -> list[tuple[str, HarmonicSymbol]]:
    if len(config.symbol_paths) < need:
        raise ValueError(f"{config.command.value} needs at least {need} --symbol file(s)")
    return [(p, load_symbol(p)) for p in config.symbol_paths]


def _run_matrix(config: RunConfig) -> Outcome:
    out = Outcome()
    for path, phi in _load(config, 1):
        for k in config.k:
            out.results.append({
                "symbol": path,
                "k": k,
                "hankel": hankel_matrix(phi, config.dim),
                "slant": slant_matrix(phi, k, config.dim),
                "w": w_matrix(k, config.dim),
            })
    return out


def _run_spectrum(config: RunConfig) -> Outcome:
    out = Outcome()
    for path, phi in _load(config, 1):
        for k in config.k:
            report = compare_oracle_numerical(phi, k, config.dim, tol=max(config.tol, 1e-12))
            report = report.with_verdicts(adjoint_point_spectrum_check(phi, k).verdict)
            out.results.append({"symbol": path, "k": k, "report": report})
            out.verdicts.extend((k, v) for v in report.verdicts)
    return out


def _run_commute(config: RunConfig) -> Outcome:
    out = Outcome()
    symbols = _load(config, 2)
    for (pa, a), (pb, b) in itertools.combinations(symbols, 2):
        for k in config.k:
            out.results.append({"pair": [pa, pb], "k": k, "report": decide_commute(a, b, k)})
    return out


def _summary_verdict(summary) -> Verdict:
    status = Status.CONFIRMED if summary.passed else Status.MISMATCH_DOCUMENTED
    detail = json.dumps(summary.to_json(), sort_keys=True)
    return Verdict(f"commutativity-{summary.theorem}", status, detail)


def _fmt_residual(residual: dict) -> str:
    """Nonzero residual coefficients as polynomials in x (the eigenvalue)."""
    parts = []
    for deg in sorted(residual):
        terms = [f"({c})" + ("" if p == 0 else "*x" if p == 1 else f"*x^{p}")
                 for p, c in enumerate(residual[deg]) if c]
        if terms:
            parts.append(f"z^{deg}: " + " + ".join(terms))
    return "; ".join(parts)


def verify_suite(k: int, seed: int, trials: int, dim: int) -> list[Verdict]:
    """Every machine-checkable claim for one slant order k."""
    verdicts: list[Verdict] = []
    for N in range(2 * k):
        verdicts.extend(compare_closed_form(PartialSum(N), k).verdicts)
        verdicts.extend(compare_oracle_numerical(HarmonicSymbol.partial_sum(N), k, dim).verdicts)
        verdicts.append(adjoint_point_spectrum_check(HarmonicSymbol.partial_sum(N), k).verdict)
        if N < k:
            cases = [(ProofCase.CONSTANT_ONE, None), (ProofCase.KERNEL_SAMPLE, None)]
        else:
            cases = [(ProofCase.QUADRATIC_PAIR, 1), (ProofCase.QUADRATIC_PAIR, 2)]
        for case, which in cases:
            vec = eigenvector_from_proof(case, k, N, which)
            ok = vec.verify()
            verdicts.append(Verdict(
                "proof-eigenvector",
                Status.CONFIRMED if ok else Status.MISMATCH_DOCUMENTED,
                f"k={k} N={N} {case.value}{'' if which is None else f'({which})'}: "
                f"exact residual {'zero' if ok else 'nonzero'}"
                + ("" if ok else f": {_fmt_residual(vec.residual())}"),
            ))
    for i in range(3 * (k + 1) + 1):
        verdicts.extend(compare_closed_form(Monomial(i), k).verdicts)
    for n in EQUAL_DEGREES:
        verdicts.append(_summary_verdict(verify_theorem_equal_degree(n, k, trials, seed)))
    for n, m in LEMMA_PAIRS:
        verdicts.append(_summary_verdict(
            verify_lemma_tail_vanishing(n, m, k, seed, samples=60, grid_limit=LEMMA_GRID_LIMIT)))
    for n, m in UNEQUAL_PAIRS:
        verdicts.append(_summary_verdict(verify_theorem_unequal_degree(n, m, k, trials, seed)))
    return verdicts


def _run_verify(config: RunConfig) -> Outcome:
    out = Outcome()
    for k in config.k:
        for v in verify_suite(k, config.seed, config.trials, config.dim):
            out.verdicts.append((k, v))
    return out


_RUNNERS = {
    Command.MATRIX: _run_matrix,
    Command.SPECTRUM: _run_spectrum,
    Command.COMMUTE: _run_commute,
    Command.VERIFY: _run_verify,
}


# rendering --------------------------------------------------------------------


def _to_json_value(obj):
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {k: _to_json_value(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_json_value(v) for v in obj]
    return obj


def render_json(config: RunConfig, outcome: Outcome) -> str:
    doc = {
        "tool": "slant-hankel",
        "version": __version__,
        "config": config.to_json(),
        "results": _to_json_value(outcome.results),
    }
    if config.command is Command.VERIFY:
        doc["verdicts"] = [dict(k=k, **v.to_json()) for k, v in outcome.verdicts]
        doc["summary"] = {
            "total": len(outcome.verdicts),
            "confirmed": sum(v.confirmed for _, v in outcome.verdicts),
            "mismatch_documented": sum(not v.confirmed for _, v in outcome.verdicts),
        }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_csv(config: RunConfig, outcome: Outcome) -> str:
    buf = io.StringIO()
    cfg = config.to_json()
    buf.write(f"# slant-hankel {__version__} " + " ".join(
        f"{key}={json.dumps(cfg[key])}" for key in ("command", "k", "dim", "tol", "seed")) + "\n")
    if config.command is Command.MATRIX:
        for item in outcome.results:
            for name in ("hankel", "slant", "w"):
                M = item[name]
                buf.write(f"# symbol={item['symbol']} k={item['k']} matrix={name} rows={M.rows} cols={M.cols}\n")
                buf.write(M.to_csv())
        return buf.getvalue()
    writer = csv.writer(buf, lineterminator="\n")
    if config.command is Command.SPECTRUM:
        writer.writerow(["symbol", "k", "kind", "re", "im", "residual", "source", "multiplicity",
                         "claim", "status", "detail"])
        for item in outcome.results:
            rep = item["report"]
            for e in rep.eigenvalues:
                writer.writerow([item["symbol"], item["k"], "eigenvalue", repr(e.value.real),
                                 repr(e.value.imag), repr(e.residual), e.source.value,
                                 e.multiplicity, "", "", ""])
            for v in rep.verdicts:
                writer.writerow([item["symbol"], item["k"], "verdict", "", "", "", "", "",
                                 v.claim, v.status.value, v.detail])
    elif config.command is Command.COMMUTE:
        writer.writerow(["symbol_a", "symbol_b", "k", "commute", "dependent",
                         "witness_input_degree", "witness_output_degree", "witness_value"])
        for item in outcome.results:
            rep = item["report"]
            w = rep.witness or ("", "", "")
            writer.writerow([*item["pair"], item["k"], rep.commute, rep.dependent,
                             w[0], w[1], str(w[2])])
    else:
        writer.writerow(["k", "claim", "status", "detail"])
        for k, v in outcome.verdicts:
            writer.writerow([k, v.claim, v.status.value, v.detail])
    return buf.getvalue()


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit code, rendered report)."""
    outcome = _RUNNERS[config.command](config)
    text = render_json(config, outcome) if config.format is Format.JSON else render_csv(config, outcome)
    return outcome.exit_code(), text


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1; exit code 2 is reserved for documented mismatches
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="slant-hankel",
        description="Slant little Hankel operators on the Bergman space: matrices, spectra, commutativity.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd, help_text in (
        (Command.MATRIX, "dump Hankel, slant and W_k matrices"),
        (Command.SPECTRUM, "point spectrum report per symbol"),
        (Command.COMMUTE, "exact commutation decision per symbol pair"),
        (Command.VERIFY, "run every theorem check and emit an aggregate verdict file"),
    ):
        p = sub.add_parser(cmd.value, help=help_text)
        p.add_argument("--k", type=parse_k, default=(2,), help="slant order, or an inclusive range LO..HI")
        p.add_argument("--dim", type=int, default=16, help="truncation size (default 16)")
        p.add_argument("--tol", type=float, default=1e-9, help="numerical agreement tolerance")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--format", choices=[f.value for f in Format], default="json")
        p.add_argument("--symbol", action="append", default=[], dest="symbols", metavar="PATH",
                       help="symbol JSON file (repeatable)")
        p.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
        if cmd is Command.VERIFY:
            p.add_argument("--trials", type=int, default=50, help="random pairs per commutativity cell")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            command=Command(args.command),
            k=args.k,
            dim=args.dim,
            tol=args.tol,
            seed=args.seed,
            format=Format(args.format),
            symbol_paths=tuple(args.symbols),
            output_path=args.output,
            trials=getattr(args, "trials", 50),
        )
        code, text = run(config)
    except (SymbolFormatError, ValueError, CertificationError) as exc:
        print(f"slant-hankel: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
