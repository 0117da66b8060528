"""Command-line interface.

Exit codes: 0 success, 2 input/parse error, 3 degenerate data, 4 I/O error.
Every command is deterministic given --seed (or PAIRDISC_SEED).
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence, TextIO

import click
import numpy as np

from .bench import BenchReport, ace, load_pairs, run_benchmark
from .discover import DiscoveryConfig, resfit
from .errors import (
    ConstantVariableError,
    DegenerateRegressorError,
    DegenerateTableError,
    ParseError,
    ValidationError,
)
from .model import PairType, Structure, TestKind, variable_pair
from .synth import mi_distribution, generate_structure
from .rng import RngSeed

_EXIT_INPUT = 2
_EXIT_DEGENERATE = 3
_EXIT_IO = 4

_PAIR_TYPES = {p.value: p for p in PairType}
_TESTS = {t.value: t for t in TestKind}
_KINDS = {s.value: s for s in Structure}
_STRATUM_ROWS = (PairType.CATEGORICAL, PairType.BINARY, PairType.NUMERICAL, PairType.MIXED)


@dataclass(frozen=True)
class CliConfig:
    """Validated knobs shared by the commands."""

    ci: float = 0.05
    bins: int = 10
    permutations: int = 100
    seed: RngSeed = 0
    policy_override: Mapping[PairType, TestKind] | None = None
    output_format: str = "table"

    def __post_init__(self) -> None:
        if not 0.0 < self.ci < 1.0:
            raise ValidationError(f"ci must be in (0, 1), got {self.ci}")
        if self.bins < 2:
            raise ValidationError(f"bins must be >= 2, got {self.bins}")
        if self.permutations < 19:
            raise ValidationError(f"permutations must be >= 19, got {self.permutations}")

    def discovery(self) -> DiscoveryConfig:
        return DiscoveryConfig(
            bins=self.bins,
            permutations=self.permutations,
            policy=self.policy_override,
        )


def _fmt(v: float) -> str:
    """Canonical number rendering, identical across output formats."""
    return repr(float(f"{v:.10g}"))


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _parse_policy(entries: Sequence[str]) -> dict[PairType, TestKind] | None:
    if not entries:
        return None
    policy: dict[PairType, TestKind] = {}
    for entry in entries:
        if "=" not in entry:
            raise ValidationError(f"policy entry must look like type=test, got {entry!r}")
        key, _, val = entry.partition("=")
        key = key.strip().lower()
        val = val.strip().lower()
        if key not in _PAIR_TYPES:
            raise ValidationError(f"unknown pair type {key!r} in --policy")
        if val not in _TESTS:
            raise ValidationError(f"unknown test {val!r} in --policy")
        policy[_PAIR_TYPES[key]] = _TESTS[val]
    return policy


def _open_out(out: str | None) -> TextIO:
    if out is None or out == "-":
        return sys.stdout
    try:
        return Path(out).open("w")
    except OSError as exc:
        _fail(_EXIT_IO, f"cannot write {out}: {exc}")
        raise AssertionError  # unreachable


_seed_option = click.option(
    "--seed",
    type=click.IntRange(min=0),
    default=0,
    envvar="PAIRDISC_SEED",
    show_default=True,
    help="Seed for all randomized steps (env fallback: PAIRDISC_SEED).",
)
_format_option = click.option(
    "--format",
    "output_format",
    type=click.Choice(["table", "csv", "json-lines"]),
    default="table",
    show_default=True,
)


@click.group()
def main() -> None:
    """Pairwise causal discovery from two observed variables."""


def _read_discover_input(source: str) -> tuple[np.ndarray, np.ndarray]:
    """Accept either a two-column CSV (header A,B) or a single pairs-file
    row (header SampleID,A,B with space-separated series)."""
    import csv as _csv

    if source == "-":
        rows = list(_csv.reader(sys.stdin))
    else:
        with Path(source).open(newline="") as fh:
            rows = list(_csv.reader(fh))
    if not rows:
        raise ParseError("input is empty")
    header = [h.strip() for h in rows[0]]
    body = [r for r in rows[1:] if r]
    if header == ["A", "B"]:
        if not body:
            raise ParseError("no observation rows")
        a = np.empty(len(body))
        b = np.empty(len(body))
        for i, row in enumerate(body):
            if len(row) != 2:
                raise ParseError(f"row {i + 2}: expected 2 columns, got {len(row)}")
            try:
                a[i] = float(row[0])
                b[i] = float(row[1])
            except ValueError as exc:
                raise ParseError(f"row {i + 2}: non-numeric value") from exc
        return a, b
    if header == ["SampleID", "A", "B"]:
        if len(body) != 1:
            raise ParseError(f"expected a single pairs-file row, got {len(body)}")
        row = body[0]
        if len(row) != 3:
            raise ParseError("pairs-file row needs 3 columns")
        try:
            a = np.asarray([float(t) for t in row[1].split()])
            b = np.asarray([float(t) for t in row[2].split()])
        except ValueError as exc:
            raise ParseError("pairs-file row has a non-numeric token") from exc
        if a.shape[0] != b.shape[0]:
            raise ParseError(f"A and B lengths differ ({a.shape[0]} vs {b.shape[0]})")
        return a, b
    raise ParseError(f"unrecognized header {','.join(header)!r}; expected A,B or SampleID,A,B")


@main.command("discover")
@click.argument("input", default="-")
@click.option("--ci", type=float, default=0.05, show_default=True)
@click.option("--bins", type=int, default=10, show_default=True)
@click.option("--permutations", type=int, default=100, show_default=True)
@click.option("--policy", multiple=True, help="Override test per type, e.g. numerical=tic.")
@_seed_option
@_format_option
@click.option("--out", default=None, help="Write output to a file instead of stdout.")
def cmd_discover(input, ci, bins, permutations, policy, seed, output_format, out):
    """Classify one pair as Causal, Anticausal, Independent, or Confounded.

    INPUT is a CSV path or '-' for standard input.
    """
    try:
        cfg = CliConfig(
            ci=ci,
            bins=bins,
            permutations=permutations,
            seed=seed,
            policy_override=_parse_policy(policy),
            output_format=output_format,
        )
        a, b = _read_discover_input(input)
        for label, col in (("A", a), ("B", b)):
            if np.unique(col).shape[0] == 1:
                _fail(_EXIT_DEGENERATE, f"column {label} is constant; nothing to discover")
        pair = variable_pair(a, b)
        verdict = resfit(pair, ci=cfg.ci, config=cfg.discovery(), seed=cfg.seed)
    except (ParseError, ValidationError, OSError) as exc:
        _fail(_EXIT_INPUT, str(exc))
    except (ConstantVariableError, DegenerateRegressorError, DegenerateTableError) as exc:
        _fail(_EXIT_DEGENERATE, str(exc))

    fields = {
        "structure": verdict.structure.value.capitalize(),
        "p_causal": _fmt(verdict.p_causal),
        "p_anticausal": _fmt(verdict.p_anticausal),
        "test_used": verdict.test_used.value,
        "pair_type": pair.pair_type.value,
    }
    stream = _open_out(out)
    if output_format == "table":
        width = max(len(k) for k in fields)
        for key, val in fields.items():
            click.echo(f"{key:<{width}}  {val}", file=stream)
    elif output_format == "csv":
        click.echo(",".join(fields), file=stream)
        click.echo(",".join(str(v) for v in fields.values()), file=stream)
    else:
        click.echo(json.dumps({k: _json_value(v) for k, v in fields.items()}), file=stream)
    if stream is not sys.stdout:
        stream.close()


def _json_value(v: str):
    try:
        return float(v)
    except ValueError:
        return v


@main.command("synth")
@click.argument("kind", type=click.Choice(sorted(_KINDS)))
@click.argument("n", type=click.IntRange(min=10))
@_seed_option
@click.option("--out", default=None, help="Output CSV path (default stdout).")
def cmd_synth(kind, n, seed, out):
    """Generate a synthetic pair with a known causal structure as CSV A,B."""
    sample = generate_structure(_KINDS[kind], n, seed)
    stream = _open_out(out)
    try:
        click.echo("A,B", file=stream)
        for xi, yi in zip(sample.x, sample.y):
            click.echo(f"{float(xi)!r},{float(yi)!r}", file=stream)
    except OSError as exc:
        _fail(_EXIT_IO, f"write failed: {exc}")
    finally:
        if stream is not sys.stdout:
            stream.close()
    click.echo(f"truth: {sample.truth.value.capitalize()}", err=True)


def _render_bench(report: BenchReport, output_format: str, stream: TextIO) -> None:
    rows = []
    for stratum in _STRATUM_ROWS:
        score = report.per_stratum.get(stratum)
        rows.append(
            {
                "stratum": stratum.value.capitalize(),
                "test": report.test_policy[stratum].value,
                "accuracy_mean": _fmt(score.accuracy_mean) if score else "",
                "accuracy_std": _fmt(score.accuracy_std) if score else "",
                "count": str(score.count) if score else "0",
            }
        )
    rows.append(
        {
            "stratum": "Total",
            "test": "",
            "accuracy_mean": _fmt(report.total.accuracy_mean),
            "accuracy_std": _fmt(report.total.accuracy_std),
            "count": str(report.total.count),
        }
    )
    header = ["stratum", "test", "accuracy_mean", "accuracy_std", "count"]
    if output_format == "table":
        widths = {h: max(len(h), *(len(r[h]) for r in rows)) for h in header}
        click.echo("  ".join(h.ljust(widths[h]) for h in header), file=stream)
        for r in rows:
            click.echo("  ".join(r[h].ljust(widths[h]) for h in header), file=stream)
        click.echo(
            f"bootstrap_replicates {report.bootstrap_replicates}  "
            f"seed {report.seed}  skipped {len(report.skipped)}",
            file=stream,
        )
    elif output_format == "csv":
        click.echo(",".join(header), file=stream)
        for r in rows:
            click.echo(",".join(r[h] for h in header), file=stream)
    else:
        for r in rows:
            obj = {
                "stratum": r["stratum"],
                "test": r["test"],
                "accuracy_mean": float(r["accuracy_mean"]) if r["accuracy_mean"] else None,
                "accuracy_std": float(r["accuracy_std"]) if r["accuracy_std"] else None,
                "count": int(r["count"]),
            }
            click.echo(json.dumps(obj), file=stream)


@main.command("bench")
@click.argument("pairs_path", type=click.Path())
@click.argument("truth_path", type=click.Path())
@click.option("--ci", type=float, default=0.05, show_default=True)
@click.option("--bins", type=int, default=10, show_default=True)
@click.option("--permutations", type=int, default=100, show_default=True)
@click.option("--policy", multiple=True, help="Override test per type, e.g. numerical=tic.")
@click.option("--bootstrap-replicates", type=int, default=1000, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@_seed_option
@_format_option
@click.option("--out", default=None, help="Write report to a file instead of stdout.")
def cmd_bench(
    pairs_path,
    truth_path,
    ci,
    bins,
    permutations,
    policy,
    bootstrap_replicates,
    workers,
    seed,
    output_format,
    out,
):
    """Score discovery accuracy against a labeled pairs corpus."""
    try:
        cfg = CliConfig(
            ci=ci,
            bins=bins,
            permutations=permutations,
            seed=seed,
            policy_override=_parse_policy(policy),
            output_format=output_format,
        )
        labeled = load_pairs(pairs_path, truth_path)
        report = run_benchmark(
            labeled,
            ci=cfg.ci,
            config=cfg.discovery(),
            seed=cfg.seed,
            bootstrap_replicates=bootstrap_replicates,
            workers=workers,
        )
    except (ParseError, ValidationError, OSError) as exc:
        _fail(_EXIT_INPUT, str(exc))
    stream = _open_out(out)
    _render_bench(report, output_format, stream)
    if stream is not sys.stdout:
        stream.close()
    for sid, reason in report.skipped:
        click.echo(f"skipped {sid}: {reason}", err=True)


@main.command("mi-density")
@click.argument("kind", type=click.Choice(sorted(_KINDS) + ["all"]))
@click.argument("replicates", type=click.IntRange(min=1))
@click.argument("n", type=click.IntRange(min=10), default=1000)
@click.option("--bins", type=int, default=10, show_default=True)
@_seed_option
@click.option("--out", default=None, help="Output CSV path (default stdout).")
def cmd_mi_density(kind, replicates, n, bins, seed, out):
    """Residual-vs-cause mutual information samples, one row per replicate.

    Emits CSV with structure,mi columns, ready for external density plots.
    """
    kinds = list(Structure) if kind == "all" else [_KINDS[kind]]
    try:
        results = {k: mi_distribution(k, replicates, n, bins, seed) for k in kinds}
    except ValidationError as exc:
        _fail(_EXIT_INPUT, str(exc))
    stream = _open_out(out)
    click.echo("structure,mi", file=stream)
    for k in kinds:
        label = k.value.capitalize()
        for v in results[k]:
            click.echo(f"{label},{_fmt(v)}", file=stream)
    if stream is not sys.stdout:
        stream.close()


def _parse_weights(text: str) -> dict[PairType, float]:
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            raw = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read weights file {path}: {exc}") from exc
        items = raw.items()
    else:
        items = []
        for entry in text.split(","):
            key, eq, val = entry.partition("=")
            if not eq:
                raise ParseError(f"weight entry must look like type=value, got {entry!r}")
            items.append((key, val))
    weights: dict[PairType, float] = {}
    for key, val in items:
        key = str(key).strip().lower()
        if key not in _PAIR_TYPES:
            raise ParseError(f"unknown stratum {key!r} in weights")
        try:
            weights[_PAIR_TYPES[key]] = float(val)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"weight for {key!r} is not a number") from exc
    return weights


@main.command("ace")
@click.argument("report_csv", type=click.Path())
@click.option(
    "--weights",
    required=True,
    help="Stratum weights, inline (categorical=0.2,...) or @file.json.",
)
def cmd_ace(report_csv, weights):
    """Average causal effect of test selection from a benchmark report CSV.

    The report supplies the per-stratum best accuracies and the pooled
    (Total) accuracy; weights give each stratum's share of the dataset.
    """
    import csv as _csv

    try:
        w = _parse_weights(weights)
        with Path(report_csv).open(newline="") as fh:
            rows = list(_csv.DictReader(fh))
        if not rows:
            raise ParseError(f"{report_csv}: no data rows")
        means: dict[PairType, float] = {}
        pooled: float | None = None
        for row in rows:
            stratum = (row.get("stratum") or "").strip().lower()
            mean_text = (row.get("accuracy_mean") or "").strip()
            if not mean_text:
                continue
            if stratum == "total":
                pooled = float(mean_text)
            elif stratum in _PAIR_TYPES:
                means[_PAIR_TYPES[stratum]] = float(mean_text)
        if pooled is None:
            raise ParseError(f"{report_csv}: missing Total row with accuracy_mean")
        value = ace(means, w, pooled)
    except (ParseError, ValidationError, OSError, ValueError) as exc:
        _fail(_EXIT_INPUT, str(exc))
    click.echo(f"{_fmt(value)} ({value * 100:.2f}%)")


if __name__ == "__main__":
    main()
