"""Command-line front end: complexity queries, selection runs, demos, fixtures.

Exit status contract: 0 on success, 1 on input errors (unreadable or
malformed data files), 2 on usage and bounds errors (bad flags, method/
scale combinations outside their caps). Reports go to standard output as
TSV by default or JSON with ``--format json``; JSON re-parses to the
same numbers bit for bit.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._validation import as_binary_sequence
from .models import BinaryMarkovFamily, fisher_root_integral_log2
from .regression import RegressionData, select_degree
from .selection import MARKOV_CODE_KINDS, select_markov_order
from .universal import (
    GridSpec,
    comp_asymptotic,
    comp_conditional_gaussian,
    comp_exact_bernoulli,
    comp_exact_markov,
    twopart_codelength,
)

__all__ = ["main", "RunReport"]

DEMO_SEQ3_RATE = math.log2(5.0) - 8.0 / 5.0  # 0.72193 bits/symbol
DEMO_MAX_ORDER = 5


class InputError(Exception):
    """Unreadable or malformed input data (exit status 1)."""


class UsageError(Exception):
    """Invalid flag combination or violated bound (exit status 2)."""


@dataclass
class RunReport:
    """Serializable run summary with a stable key layout."""

    command: str
    n: int
    models: list[dict] = field(default_factory=list)
    selected: str | None = None
    confidence_bits: float | None = None
    warnings: list[str] = field(default_factory=list)

    def add_model(self, id: str, code: str, data_fit: float, complexity: float, total: float, flags=()):
        self.models.append(
            {
                "id": id,
                "code": code,
                "data_fit_bits": float(data_fit),
                "complexity_bits": float(complexity),
                "total_bits": float(total),
                "flags": list(flags),
            }
        )

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "n": self.n,
            "models": self.models,
            "selected": self.selected,
            "confidence_bits": self.confidence_bits,
            "warnings": self.warnings,
        }
        return json.dumps(payload, indent=2)

    def to_tsv(self) -> str:
        lines = ["model\tcode\tdata_fit_bits\tcomplexity_bits\ttotal_bits\tflags"]
        for m in self.models:
            lines.append(
                "\t".join(
                    [
                        m["id"],
                        m["code"],
                        repr(m["data_fit_bits"]),
                        repr(m["complexity_bits"]),
                        repr(m["total_bits"]),
                        ",".join(m["flags"]),
                    ]
                )
            )
        if self.selected is not None:
            lines.append(f"selected\t{self.selected}")
            lines.append(f"confidence_bits\t{self.confidence_bits!r}")
        for w in self.warnings:
            lines.append(f"warning\t{w}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_tsv()


def read_sequence_file(path: str) -> np.ndarray:
    """Parse a '0'/'1' ASCII file; whitespace ignored, anything else rejected."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    symbols = []
    for offset, byte in enumerate(raw):
        ch = chr(byte)
        if ch in "01":
            symbols.append(byte - ord("0"))
        elif ch.isspace():
            continue
        else:
            raise InputError(f"{path}: invalid byte {ch!r} at offset {offset}")
    if not symbols:
        raise InputError(f"{path}: no symbols found")
    return np.asarray(symbols, dtype=np.int8)


def read_xy_csv(path: str) -> RegressionData:
    """Parse a two-column CSV with header ``x,y`` and decimal-dot reals."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    if not lines or lines[0].strip().lower() != "x,y":
        raise InputError(f"{path}: line 1: expected header 'x,y'")
    xs, ys = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise InputError(f"{path}: line {lineno}: expected two comma-separated values")
        try:
            xs.append(float(parts[0]))
            ys.append(float(parts[1]))
        except ValueError:
            raise InputError(f"{path}: line {lineno}: could not parse reals") from None
    if not xs:
        raise InputError(f"{path}: no data rows")
    return RegressionData(x=np.asarray(xs), y=np.asarray(ys))


def _parse_model(spec: str) -> tuple[str, int | None]:
    if spec == "bernoulli":
        return "bernoulli", None
    if spec == "gaussian":
        return "gaussian", None
    if spec.startswith("markov:"):
        try:
            order = int(spec.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad markov order in {spec!r}") from None
        if order < 0:
            raise UsageError("markov order must be >= 0")
        return "markov", order
    raise UsageError(f"unknown model {spec!r} (expected bernoulli, markov:K, or gaussian)")


def cmd_complexity(args) -> RunReport:
    kind, order = _parse_model(args.model)
    report = RunReport(command="complexity", n=args.n)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if kind == "gaussian":
        if args.method != "exact":
            raise UsageError("gaussian complexity is conditional-exact only: use --method exact")
        if args.K is None or args.sigma is None:
            raise UsageError("gaussian model requires --K and --sigma")
        comp = comp_conditional_gaussian(args.K, args.n, args.sigma)
        report.add_model(f"gaussian(K={args.K:g},sigma={args.sigma:g})", "nml-exact", 0.0, comp, comp)
        return report
    family = BinaryMarkovFamily(order=order or 0)
    if args.method == "asymptotic":
        comp = comp_asymptotic(
            family.dimension, args.n, log2_fisher_integral=fisher_root_integral_log2(family)
        )
        report.add_model(family.identifier, "nml-asymptotic", 0.0, comp, comp, flags=["asymptotic"])
        report.warnings.append("asymptotic expansion: remainder term dropped; unreliable at small n")
        return report
    if kind == "markov" and order and args.method == "exact":
        # No closed combinatorial form for orders >= 1: exact means enumeration.
        args.method = "enumerate"
    if args.method == "enumerate" or (kind == "markov" and order):
        if args.n > 20:
            raise UsageError("enumeration caps at n = 20")
        comp = comp_exact_markov(args.n, order or 0) if kind == "markov" else comp_exact_bernoulli_enumerated(args.n)
        report.add_model(family.identifier, "nml-exact", 0.0, comp, comp)
        return report
    comp = comp_exact_bernoulli(args.n)
    report.add_model(family.identifier, "nml-exact", 0.0, comp, comp)
    return report


def comp_exact_bernoulli_enumerated(n: int) -> float:
    from . import oracle

    return oracle.enumerate_family(BinaryMarkovFamily(order=0), n).comp


def cmd_select(args) -> RunReport:
    if args.kind == "markov":
        x = read_sequence_file(args.input)
        if args.max_order >= x.size:
            raise UsageError(f"--max-order {args.max_order} requires more than {args.max_order} symbols")
        if args.code not in MARKOV_CODE_KINDS and not args.code.startswith(("bayes:", "plugin:")):
            raise UsageError(f"unknown code {args.code!r}")
        order, ranking = select_markov_order(x, args.max_order, args.code)
        report = RunReport(command="select markov", n=int(x.size))
        for entry in ranking.entries:
            report.add_model(entry.model, args.code, entry.code_total, entry.index_bits, entry.grand_total)
        report.selected = ranking.selected
        report.confidence_bits = ranking.confidence
        return report
    data = read_xy_csv(args.input)
    if args.max_degree + 2 > data.n:
        raise UsageError(f"--max-degree {args.max_degree} needs at least {args.max_degree + 2} points")
    try:
        degree, ranking = select_degree(data, args.max_degree, args.code)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = RunReport(command="select poly", n=data.n)
    for entry in ranking.entries:
        flags = ["approximation: dimension term only"] if args.code == "asymptotic" else []
        report.add_model(entry.model, args.code, entry.code_total, entry.index_bits, entry.grand_total, flags)
    report.selected = ranking.selected
    report.confidence_bits = ranking.confidence
    if args.code == "asymptotic":
        report.warnings.append("asymptotic complexity omits the Fisher-volume term")
    return report


def best_twopart_bits(x: np.ndarray, max_order: int = DEMO_MAX_ORDER):
    """Cheapest self-contained two-part code over orders and both grid modes."""
    best = None
    for order in range(max_order + 1):
        if x.size <= order:
            break
        for mode in ("crude", "refined"):
            rep = twopart_codelength(x, order, GridSpec(mode=mode))
            if best is None or rep.total < best.total:
                best = rep
    return best


def _demo_sequences(n: int, seed: int) -> list[np.ndarray]:
    reps = np.tile(np.array([0, 0, 0, 1], dtype=np.int8), n // 4)
    streams = np.random.SeedSequence(seed).spawn(2)
    fair = np.random.default_rng(streams[0]).integers(0, 2, size=n).astype(np.int8)
    biased = (np.random.default_rng(streams[1]).random(n) < 0.2).astype(np.int8)
    return [reps, fair, biased]


def cmd_demo_sequences(args) -> RunReport:
    n, seed = args.n, args.seed
    if n < 100 or n % 4:
        raise UsageError("--n must be a multiple of 4 and at least 100")
    report = RunReport(command="demo-sequences", n=n)
    seqs = _demo_sequences(n, seed)
    totals = []
    for i, x in enumerate(seqs, start=1):
        rep = best_twopart_bits(x)
        report.add_model(
            f"sequence-{i}:{rep.model}", rep.code, rep.data_fit, rep.complexity, rep.total,
            flags=[f"grid={rep.details['mode']}"],
        )
        totals.append(rep.total)
    repeat_bound = 8.0 + 8.0 * math.log2(n + 1)
    if totals[0] > repeat_bound:
        report.warnings.append(f"sequence-1 exceeded the repetition bound {repeat_bound:.2f} bits")
    if totals[1] < n - 20:
        report.warnings.append("sequence-2 compressed by more than 20 bits (rare event)")
    rate = totals[2] / n
    if abs(rate - DEMO_SEQ3_RATE) > 0.05 * DEMO_SEQ3_RATE:
        report.warnings.append(
            f"sequence-3 rate {rate:.5f} outside 5% of {DEMO_SEQ3_RATE:.5f} bits/symbol"
        )
    return report


def _parse_generate_kind(kind: str, rng: np.random.Generator, n: int) -> np.ndarray:
    if kind.startswith("repeat:"):
        pattern = kind.split(":", 1)[1]
        if not pattern or set(pattern) - {"0", "1"}:
            raise UsageError(f"bad repeat pattern in {kind!r}")
        pat = np.array([int(c) for c in pattern], dtype=np.int8)
        return np.tile(pat, n // pat.size + 1)[:n]
    if kind.startswith("bernoulli:"):
        try:
            p = float(kind.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad probability in {kind!r}") from None
        if not 0.0 <= p <= 1.0:
            raise UsageError("bernoulli probability must lie in [0, 1]")
        return (rng.random(n) < p).astype(np.int8)
    if kind.startswith("markov:"):
        body = kind.split(":", 1)[1]
        parts = body.split(",")
        try:
            k = int(parts[0])
            thetas = [float(v) for v in parts[1:]]
        except ValueError:
            raise UsageError(f"bad markov spec in {kind!r}") from None
        if k < 0 or len(thetas) != 2**k:
            raise UsageError(f"markov:{k} needs exactly {2**max(k, 0)} transition probabilities")
        if any(not 0.0 <= t <= 1.0 for t in thetas):
            raise UsageError("transition probabilities must lie in [0, 1]")
        if n <= k:
            raise UsageError("sequence length must exceed the order")
        out = np.empty(n, dtype=np.int8)
        out[:k] = rng.integers(0, 2, size=k)
        ctx, mask = 0, 2**k - 1
        for j in range(k):
            ctx = (ctx << 1) | int(out[j])
        u = rng.random(n)
        for t in range(k, n):
            b = 1 if u[t] < thetas[ctx] else 0
            out[t] = b
            ctx = ((ctx << 1) & mask) | b if k else 0
        return out
    raise UsageError(f"unknown kind {kind!r} (expected repeat:PAT, bernoulli:P, or markov:K,...)")


def cmd_generate(args) -> RunReport:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(args.seed))
    x = _parse_generate_kind(args.kind, rng, args.n)
    as_binary_sequence(x)
    try:
        Path(args.out).write_text("".join(str(int(b)) for b in x) + "\n")
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc}") from exc
    report = RunReport(command="generate", n=args.n)
    report.warnings.append(f"wrote {args.out}")
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdlselect",
        description="Model selection by minimum description length over binary and regression data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--threads", type=int, default=1, help="advisory worker count (current build runs serially)")

    p = sub.add_parser("complexity", help="parametric complexity of one family")
    p.add_argument("--model", required=True, help="bernoulli | markov:K | gaussian")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("exact", "enumerate", "asymptotic"), default="exact")
    p.add_argument("--K", type=float, default=None, help="mean bound for the gaussian family")
    p.add_argument("--sigma", type=float, default=None, help="known standard deviation")
    add_common(p)
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("select", help="rank models for a data file and pick the shortest")
    p.add_argument("kind", choices=("markov", "poly"))
    p.add_argument("--input", required=True)
    p.add_argument("--code", default=None)
    p.add_argument("--max-order", type=int, default=5)
    p.add_argument("--max-degree", type=int, default=6)
    add_common(p)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("demo-sequences", help="three canonical sequences and their two-part codelengths")
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    add_common(p)
    p.set_defaults(func=cmd_demo_sequences)

    p = sub.add_parser("generate", help="write a synthetic binary sequence file")
    p.add_argument("--kind", required=True, help="repeat:PAT | bernoulli:P | markov:K,t0,t1,...")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    add_common(p)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    if getattr(args, "code", None) is None and getattr(args, "kind", None):
        args.code = "bayes-jeffreys" if args.kind == "markov" else "plug-in"
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.render(args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
