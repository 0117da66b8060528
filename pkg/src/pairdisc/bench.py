"""Benchmark harness: dataset ingestion, scoring, bootstrap, and the
average causal effect of test selection."""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .discover import CausalVerdict, DiscoveryConfig, resfit
from .errors import PairdiscError, ParseError, ValidationError
from .model import PairType, Structure, TestKind, select_test, variable_pair, VariablePair
from .rng import RngSeed, derive, generator
from .special import student_t_two_sided

_STRATUM_ORDER = (PairType.CATEGORICAL, PairType.BINARY, PairType.NUMERICAL, PairType.MIXED)
_POOLED_CODE = len(_STRATUM_ORDER)


@dataclass(frozen=True, eq=False)
class LabeledPair:
    """A benchmark pair with its ground-truth structure."""

    id: str
    pair: VariablePair
    truth: Structure


@dataclass(frozen=True)
class StratumScore:
    accuracy_mean: float
    accuracy_std: float
    count: int


@dataclass(frozen=True)
class BenchReport:
    """Stratified accuracy scores with bootstrap uncertainty."""

    per_stratum: Mapping[PairType, StratumScore]
    total: StratumScore
    test_policy: Mapping[PairType, TestKind]
    bootstrap_replicates: int
    seed: RngSeed
    skipped: tuple[tuple[str, str], ...] = field(default_factory=tuple)


def _decode_truth(target: str, details: str, row: int) -> Structure:
    try:
        t = int(target)
    except ValueError as exc:
        raise ParseError(f"row {row}: Target is not an integer: {target!r}") from exc
    if t == 1:
        return Structure.CAUSAL
    if t == -1:
        return Structure.ANTICAUSAL
    if t == 0:
        try:
            d = int(details)
        except ValueError as exc:
            raise ParseError(f"row {row}: Details is not an integer: {details!r}") from exc
        if d == 3:
            return Structure.CONFOUNDED
        if d == 4:
            return Structure.INDEPENDENT
        raise ParseError(f"row {row}: unknown Details code {d} for Target 0")
    raise ParseError(f"row {row}: unknown Target code {t}")


def _parse_series(text: str, row: int, column: str) -> np.ndarray:
    try:
        values = np.asarray([float(tok) for tok in text.split()], dtype=np.float64)
    except ValueError as exc:
        raise ParseError(f"row {row}: column {column} has a non-numeric token") from exc
    if values.shape[0] < 2:
        raise ParseError(f"row {row}: column {column} has fewer than 2 values")
    return values


def _read_csv(path: str | Path, expected_header: Sequence[str]) -> list[list[str]]:
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise ParseError(f"{path}: file is empty")
    header = [h.strip() for h in rows[0]]
    if header != list(expected_header):
        raise ParseError(
            f"{path}: expected header {','.join(expected_header)}, got {','.join(header)}"
        )
    return rows[1:]


def load_pairs(pairs_path: str | Path, truth_path: str | Path) -> list[LabeledPair]:
    """Load a pairs file (SampleID,A,B with space-separated series) and its
    ground-truth file (SampleID,Target,Details), matched by SampleID."""
    pair_rows = _read_csv(pairs_path, ("SampleID", "A", "B"))
    truth_rows = _read_csv(truth_path, ("SampleID", "Target", "Details"))
    truths: dict[str, Structure] = {}
    for i, row in enumerate(truth_rows, start=2):
        if len(row) != 3:
            raise ParseError(f"row {i}: truth file needs 3 columns, got {len(row)}")
        sid = row[0].strip()
        if sid in truths:
            raise ParseError(f"row {i}: duplicate SampleID {sid!r} in truth file")
        truths[sid] = _decode_truth(row[1].strip(), row[2].strip(), i)
    out: list[LabeledPair] = []
    seen: set[str] = set()
    for i, row in enumerate(pair_rows, start=2):
        if len(row) != 3:
            raise ParseError(f"row {i}: pairs file needs 3 columns, got {len(row)}")
        sid = row[0].strip()
        if sid in seen:
            raise ParseError(f"row {i}: duplicate SampleID {sid!r} in pairs file")
        seen.add(sid)
        a = _parse_series(row[1], i, "A")
        b = _parse_series(row[2], i, "B")
        if a.shape[0] != b.shape[0]:
            raise ParseError(
                f"row {i}: A and B lengths differ ({a.shape[0]} vs {b.shape[0]})"
            )
        if sid not in truths:
            raise ParseError(f"row {i}: SampleID {sid!r} missing from truth file")
        out.append(LabeledPair(id=sid, pair=variable_pair(a, b), truth=truths[sid]))
    unmatched = set(truths) - seen
    if unmatched:
        raise ParseError(f"truth rows without pairs: {sorted(unmatched)[:5]}")
    return out


def accuracy(verdicts: Sequence[CausalVerdict], truths: Sequence[Structure]) -> float:
    """Fraction of exact four-way matches."""
    if len(verdicts) != len(truths):
        raise ValidationError(f"length mismatch: {len(verdicts)} vs {len(truths)}")
    if not verdicts:
        raise ValidationError("need at least one verdict")
    hits = sum(v.structure is t for v, t in zip(verdicts, truths))
    return hits / len(verdicts)


def _bootstrap_correct(correct: np.ndarray, replicates: int, seed: RngSeed) -> StratumScore:
    n = correct.shape[0]
    rng = generator(seed)
    scores = np.empty(replicates)
    for r in range(replicates):
        idx = rng.integers(0, n, size=n)
        scores[r] = correct[idx].mean()
    return StratumScore(
        accuracy_mean=float(scores.mean()),
        accuracy_std=float(scores.std(ddof=1)),
        count=n,
    )


def bootstrap_accuracy(
    labeled: Sequence[LabeledPair],
    verdicts: Sequence[CausalVerdict],
    replicates: int = 1000,
    seed: RngSeed = 0,
) -> tuple[float, float]:
    """Bootstrap mean and sample std of accuracy over resampled pairs.

    Resamples the cached verdicts; discovery is not re-run, so the spread
    reflects sampling of the evaluation set only.
    """
    if replicates < 2:
        raise ValidationError(f"replicates must be >= 2, got {replicates}")
    if not labeled:
        raise ValidationError("need at least one pair")
    if len(labeled) != len(verdicts):
        raise ValidationError(f"length mismatch: {len(labeled)} vs {len(verdicts)}")
    correct = np.asarray(
        [v.structure is lp.truth for lp, v in zip(labeled, verdicts)], dtype=np.float64
    )
    score = _bootstrap_correct(correct, replicates, seed)
    return score.accuracy_mean, score.accuracy_std


def welch_t_test(scores_a: Sequence[float], scores_b: Sequence[float]) -> tuple[float, float]:
    """Welch's unequal-variance two-sample t statistic and two-sided p-value."""
    a = np.asarray(scores_a, dtype=np.float64)
    b = np.asarray(scores_b, dtype=np.float64)
    if a.shape[0] < 2 or b.shape[0] < 2:
        raise ValidationError("both samples need at least 2 observations")
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise ValidationError("samples contain non-finite values")
    v1 = a.var(ddof=1) / a.shape[0]
    v2 = b.var(ddof=1) / b.shape[0]
    se2 = v1 + v2
    if se2 == 0.0:
        raise ValidationError("both samples have zero variance; t undefined")
    t = float((a.mean() - b.mean()) / np.sqrt(se2))
    df = se2**2 / (v1**2 / (a.shape[0] - 1) + v2**2 / (b.shape[0] - 1))
    return t, student_t_two_sided(t, float(df))


def ace(
    stratum_best_means: Mapping[PairType, float],
    stratum_weights: Mapping[PairType, float],
    pooled_mean: float,
) -> float:
    """Average causal effect of per-stratum test selection.

    E[Y1] is the weighted mean of per-stratum best accuracies; E[Y0] is the
    pooled mean with no selection; the effect is their difference.
    """
    weights = dict(stratum_weights)
    if any(w < 0 for w in weights.values()):
        raise ValidationError("weights must be non-negative")
    total = sum(weights.values())
    if abs(total - 1.0) > 1e-9:
        raise ValidationError(f"weights must sum to 1, got {total}")
    missing = set(weights) - set(stratum_best_means)
    if missing:
        raise ValidationError(f"weights reference strata without means: {missing}")
    e_y1 = sum(w * stratum_best_means[s] for s, w in weights.items())
    return e_y1 - pooled_mean


def run_benchmark(
    labeled: Sequence[LabeledPair],
    policy: Mapping[PairType, TestKind] | None = None,
    ci: float = 0.05,
    config: DiscoveryConfig | None = None,
    seed: RngSeed = 0,
    bootstrap_replicates: int = 1000,
    workers: int = 1,
) -> BenchReport:
    """Classify every pair, stratify by pair type, and report bootstrap
    accuracy per stratum and overall.

    Pairs that fail (degenerate or too-short data) are recorded as skipped
    and count as incorrect. Per-pair substreams are derived from the pair
    index, so the report is identical for any worker count.
    """
    if not labeled:
        raise ValidationError("benchmark needs at least one pair")
    cfg = config or DiscoveryConfig()
    if policy is not None:
        cfg = DiscoveryConfig(
            bins=cfg.bins,
            permutations=cfg.permutations,
            max_cells_exponent=cfg.max_cells_exponent,
            max_clumps_factor=cfg.max_clumps_factor,
            policy=policy,
        )

    def classify(i: int) -> CausalVerdict | PairdiscError:
        try:
            return resfit(labeled[i].pair, ci=ci, config=cfg, seed=derive(seed, 0, i))
        except PairdiscError as exc:
            return exc

    indices = range(len(labeled))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(classify, indices))
    else:
        results = [classify(i) for i in indices]

    skipped: list[tuple[str, str]] = []
    correct = np.zeros(len(labeled))
    for i, res in enumerate(results):
        if isinstance(res, PairdiscError):
            skipped.append((labeled[i].id, str(res)))
        elif res.structure is labeled[i].truth:
            correct[i] = 1.0

    per_stratum: dict[PairType, StratumScore] = {}
    for code, stratum in enumerate(_STRATUM_ORDER):
        mask = np.asarray([lp.pair.pair_type is stratum for lp in labeled])
        if mask.any():
            per_stratum[stratum] = _bootstrap_correct(
                correct[mask], bootstrap_replicates, derive(seed, 1, code)
            )
    total = _bootstrap_correct(correct, bootstrap_replicates, derive(seed, 1, _POOLED_CODE))
    effective_policy = {pt: select_test(pt, cfg.policy) for pt in _STRATUM_ORDER}
    return BenchReport(
        per_stratum=per_stratum,
        total=total,
        test_policy=effective_policy,
        bootstrap_replicates=bootstrap_replicates,
        seed=seed,
        skipped=tuple(skipped),
    )
