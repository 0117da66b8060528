"""Total information coefficient: summed optimal-grid mutual information.

For each grid resolution (k columns, l rows) within a cell budget
B = floor(n^exponent), one axis is rank-equipartitioned and the other axis
partition is optimized by dynamic programming over clump boundaries; the two
orientations' best mutual information values are combined per resolution and
the normalized sum over resolutions is the statistic. Rank-based throughout,
so the statistic is exactly invariant under strictly increasing transforms
of either variable.

The per-orientation search runs inside a single numba kernel (nogil) so
permutation replicates scale across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import ValidationError
from .model import TestKind, as_values
from .rng import RngSeed, derive, generator
from .indep import TestResult

DEFAULT_MAX_CELLS_EXPONENT = 0.6
DEFAULT_MAX_CLUMPS_FACTOR = 5


@dataclass(frozen=True, eq=False)
class GridPartition:
    """An axis-aligned grid given by internal cut points per axis.

    rows = len(row_cuts) + 1 and cols = len(col_cuts) + 1. Grids feeding the
    statistic always have rows >= 2 and cols >= 2 (a single row or column
    carries zero mutual information and a zero normalizer).
    """

    row_cuts: np.ndarray
    col_cuts: np.ndarray
    rows: int
    cols: int

    def __post_init__(self) -> None:
        row_cuts = np.asarray(self.row_cuts, dtype=np.float64).copy()
        col_cuts = np.asarray(self.col_cuts, dtype=np.float64).copy()
        if (np.diff(row_cuts) <= 0).any() or (np.diff(col_cuts) <= 0).any():
            raise ValidationError("cut points must be strictly increasing")
        if self.rows != row_cuts.shape[0] + 1 or self.cols != col_cuts.shape[0] + 1:
            raise ValidationError("rows/cols must match cut-point counts")
        if self.rows < 1 or self.cols < 1:
            raise ValidationError("a partition needs at least one row and column")
        row_cuts.flags.writeable = False
        col_cuts.flags.writeable = False
        object.__setattr__(self, "row_cuts", row_cuts)
        object.__setattr__(self, "col_cuts", col_cuts)


@njit(cache=True, nogil=True)
def _equipartition_into(sizes, n_bins, out):
    """Greedy rank equipartition of consecutive atoms into at most n_bins
    bins of roughly equal point count; atoms (tied values) are never split.
    Returns the number of bins actually used."""
    G = sizes.shape[0]
    total = 0
    for g in range(G):
        total += sizes[g]
    row = 0
    row_size = 0
    assigned = 0
    desired = total / n_bins
    for g in range(G):
        s = sizes[g]
        if row_size != 0 and row + 1 < n_bins:
            if abs(row_size + s - desired) >= abs(row_size - desired):
                row += 1
                row_size = 0
                desired = (total - assigned) / (n_bins - row)
        out[g] = row
        row_size += s
        assigned += s
    return row + 1


@njit(cache=True, nogil=True)
def _orientation_scores(row_ties, col_ties, col_to_rowgroup, budget, clumps_factor, gtab):
    """Best mutual information per (row count r, column budget j).

    row_ties / col_ties: tie-group sizes along each axis in sorted order.
    col_to_rowgroup: for each point in column-axis order, its row-axis tie
    group. For every r in 2..budget//2 the row axis is rank-equipartitioned
    into r rows; columns are then optimized by dynamic programming over
    clump boundaries (capped at clumps_factor * (budget // r) superclumps).
    res[r, j] = max MI over grids with those rows and at most j columns.
    """
    n = 0
    for g in range(col_ties.shape[0]):
        n += col_ties[g]
    rmax = budget // 2
    res = np.full((rmax + 1, rmax + 1), -np.inf)
    Gr = row_ties.shape[0]
    Gc = col_ties.shape[0]
    row_of_group = np.empty(Gr, dtype=np.int64)
    labels = np.empty(n, dtype=np.int64)
    glab = np.empty(Gc, dtype=np.int64)
    clump_of = np.empty(Gc, dtype=np.int64)
    for r in range(2, rmax + 1):
        _equipartition_into(row_ties, r, row_of_group)
        for i in range(n):
            labels[i] = row_of_group[col_to_rowgroup[i]]
        row_counts = np.zeros(r, dtype=np.int64)
        for i in range(n):
            row_counts[labels[i]] += 1
        H = 0.0
        for q in range(r):
            H -= gtab[row_counts[q]]
        # clumps: maximal same-row runs, never splitting column-axis ties;
        # a tie group spanning several rows is a clump of its own
        pos = 0
        for g in range(Gc):
            first = labels[pos]
            pure = True
            for i in range(pos + 1, pos + col_ties[g]):
                if labels[i] != first:
                    pure = False
                    break
            glab[g] = first if pure else -1
            pos += col_ties[g]
        clump_of[0] = 0
        for g in range(1, Gc):
            brk = glab[g] == -1 or glab[g - 1] == -1 or glab[g] != glab[g - 1]
            clump_of[g] = clump_of[g - 1] + (1 if brk else 0)
        n_clumps = clump_of[Gc - 1] + 1
        max_cols = budget // r
        cap = clumps_factor * max_cols
        if n_clumps > cap:
            clump_sizes = np.zeros(n_clumps, dtype=np.int64)
            for g in range(Gc):
                clump_sizes[clump_of[g]] += col_ties[g]
            atom_of_clump = np.empty(n_clumps, dtype=np.int64)
            m = _equipartition_into(clump_sizes, cap, atom_of_clump)
        else:
            atom_of_clump = np.arange(n_clumps)
            m = n_clumps
        # cumulative row counts P[t, q] over atom prefixes t = 0..m
        P = np.zeros((m + 1, r), dtype=np.int64)
        S = np.zeros(m + 1, dtype=np.int64)
        pos = 0
        for g in range(Gc):
            a = atom_of_clump[clump_of[g]]
            for i in range(pos, pos + col_ties[g]):
                P[a + 1, labels[i]] += 1
            pos += col_ties[g]
        for t in range(1, m + 1):
            tot = 0
            for q in range(r):
                P[t, q] += P[t - 1, q]
                tot += P[t, q]
            S[t] = tot
        # segment score F[t, s] = -g(total) + sum_q g(cell) for atoms s..t-1;
        # summed over a partition this is MI - H(rows)
        F = np.empty((m + 1, m + 1))
        for t in range(1, m + 1):
            for s in range(t):
                acc = -gtab[S[t] - S[s]]
                for q in range(r):
                    acc += gtab[P[t, q] - P[s, q]]
                F[t, s] = acc
        # DP over exactly-j prefixes; refinement never hurts, so the
        # at-most-j optimum is the running maximum over layers
        top = max_cols if max_cols < m else m
        D_prev = np.empty(m + 1)
        D_cur = np.empty(m + 1)
        for t in range(1, m + 1):
            D_prev[t] = F[t, 0]
        best = D_prev[m]
        res[r, 1] = H + best
        for j in range(2, top + 1):
            for t in range(j, m + 1):
                b = -np.inf
                for s in range(j - 1, t):
                    v = D_prev[s] + F[t, s]
                    if v > b:
                        b = v
                D_cur[t] = b
            tmp = D_prev
            D_prev = D_cur
            D_cur = tmp
            if D_prev[m] > best:
                best = D_prev[m]
            res[r, j] = H + best
        for j in range(top + 1, max_cols + 1):
            res[r, j] = H + best
    return res


def _tie_group_sizes(sorted_vals: np.ndarray) -> np.ndarray:
    n = sorted_vals.shape[0]
    brk = np.flatnonzero(sorted_vals[1:] != sorted_vals[:-1])
    edges = np.concatenate(([0], brk + 1, [n]))
    return np.diff(edges).astype(np.int64)


def _axis_structures(x: np.ndarray, y: np.ndarray):
    """Sorted orders, tie groups, and cross-axis group indices."""
    n = x.shape[0]
    order_x = np.argsort(x, kind="stable")
    order_y = np.argsort(y, kind="stable")
    ties_x = _tie_group_sizes(x[order_x])
    ties_y = _tie_group_sizes(y[order_y])
    gx = np.empty(n, dtype=np.int64)
    gx[order_x] = np.repeat(np.arange(ties_x.shape[0], dtype=np.int64), ties_x)
    gy = np.empty(n, dtype=np.int64)
    gy[order_y] = np.repeat(np.arange(ties_y.shape[0], dtype=np.int64), ties_y)
    return order_x, order_y, ties_x, ties_y, gx, gy


def _log_prob_table(n: int) -> np.ndarray:
    gtab = np.zeros(n + 1)
    z = np.arange(1, n + 1, dtype=np.float64) / n
    gtab[1:] = z * np.log(z)
    return gtab


def _validate_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    xv = as_values(x, "x")
    yv = as_values(y, "y")
    if xv.shape[0] != yv.shape[0]:
        raise ValidationError(f"length mismatch: {xv.shape[0]} vs {yv.shape[0]}")
    return xv, yv


def _budget(n: int, max_cells_exponent: float) -> int:
    budget = int(math.floor(n**max_cells_exponent))
    if budget < 4:
        raise ValidationError(
            f"cell budget {budget} below 4: {n} samples cannot support a 2x2 grid"
        )
    return budget


def tic_statistic(
    x,
    y,
    max_cells_exponent: float = DEFAULT_MAX_CELLS_EXPONENT,
    max_clumps_factor: int = DEFAULT_MAX_CLUMPS_FACTOR,
) -> tuple[float, int]:
    """The statistic and the number of grid resolutions summed.

    Each resolution contributes its best-orientation mutual information
    normalized by log(min(k, l)).
    """
    xv, yv = _validate_pair(x, y)
    n = xv.shape[0]
    budget = _budget(n, max_cells_exponent)
    gtab = _log_prob_table(n)
    order_x, order_y, ties_x, ties_y, gx, gy = _axis_structures(xv, yv)
    res_a = _orientation_scores(ties_y, ties_x, gy[order_x], budget, max_clumps_factor, gtab)
    res_b = _orientation_scores(ties_x, ties_y, gx[order_y], budget, max_clumps_factor, gtab)
    total = 0.0
    grids = 0
    kmax = budget // 2
    for k in range(2, kmax + 1):
        for l in range(2, budget // k + 1):
            mi = max(res_a[l, k], res_b[k, l], 0.0)
            total += mi / math.log(min(k, l))
            grids += 1
    return total, grids


def tic_test(
    x,
    y,
    permutations: int = 100,
    seed: RngSeed = 0,
    max_cells_exponent: float = DEFAULT_MAX_CELLS_EXPONENT,
    max_clumps_factor: int = DEFAULT_MAX_CLUMPS_FACTOR,
) -> TestResult:
    """Permutation test of independence built on the statistic.

    y is shuffled with a substream derived from (seed, replicate), and the
    p-value is (1 + #{replicate statistic >= observed}) / (1 + permutations),
    so the smallest attainable p is 1/(1 + permutations).
    """
    if permutations < 19:
        raise ValidationError(f"permutations must be >= 19, got {permutations}")
    xv, yv = _validate_pair(x, y)
    observed, grids = tic_statistic(xv, yv, max_cells_exponent, max_clumps_factor)
    n = yv.shape[0]
    exceed = 0
    for j in range(1, permutations + 1):
        rng = generator(derive(seed, j))
        shuffled = yv[rng.permutation(n)]
        stat, _ = tic_statistic(xv, shuffled, max_cells_exponent, max_clumps_factor)
        if stat >= observed:
            exceed += 1
    p = (1 + exceed) / (1 + permutations)
    return TestResult(
        kind=TestKind.TIC,
        statistic=observed,
        p_value=p,
        grids_evaluated=grids,
        permutations=permutations,
    )


def _cut_values(sorted_vals: np.ndarray, ties: np.ndarray, group_bins: np.ndarray) -> np.ndarray:
    """Cut points (midpoints between adjacent groups) for a bin assignment."""
    ends = np.cumsum(ties)
    cuts = []
    for g in range(len(ties) - 1):
        if group_bins[g + 1] != group_bins[g]:
            left = sorted_vals[ends[g] - 1]
            right = sorted_vals[ends[g]]
            cuts.append((left + right) / 2.0)
    return np.asarray(cuts)


def optimal_partition(
    x,
    y,
    rows: int,
    cols: int,
    max_cells_exponent: float = DEFAULT_MAX_CELLS_EXPONENT,
    max_clumps_factor: int = DEFAULT_MAX_CLUMPS_FACTOR,
) -> GridPartition:
    """The argmax grid for a single (rows, cols) resolution.

    Runs the same search as the statistic for this one resolution (both
    orientations, same superclump caps) and reconstructs the winning cut
    points. Intended for inspection and cross-checks; not the hot path.
    """
    xv, yv = _validate_pair(x, y)
    if rows < 2 or cols < 2:
        raise ValidationError("a contributing grid needs rows >= 2 and cols >= 2")
    budget = _budget(xv.shape[0], max_cells_exponent)
    order_x, order_y, ties_x, ties_y, gx, gy = _axis_structures(xv, yv)
    gtab = _log_prob_table(xv.shape[0])

    best: tuple[float, np.ndarray, np.ndarray] | None = None
    for rows_from_y in (True, False):
        if rows_from_y:
            row_ties, col_ties = ties_y, ties_x
            col_to_rowgroup = gy[order_x]
            n_rows, n_cols = rows, cols
        else:
            row_ties, col_ties = ties_x, ties_y
            col_to_rowgroup = gx[order_y]
            n_rows, n_cols = cols, rows
        # same cap the statistic uses for this row count (shared across all
        # column budgets of the row count)
        cap = max_clumps_factor * max(budget // n_rows, n_cols)
        mi, row_bins, col_bins = _optimize_one(
            row_ties, col_ties, col_to_rowgroup, n_rows, n_cols, cap, gtab
        )
        if rows_from_y:
            rc = _cut_values(yv[order_y], ties_y, row_bins)
            cc = _cut_values(xv[order_x], ties_x, col_bins)
        else:
            rc = _cut_values(yv[order_y], ties_y, col_bins)
            cc = _cut_values(xv[order_x], ties_x, row_bins)
        if best is None or mi > best[0]:
            best = (mi, rc, cc)
    _, row_cuts, col_cuts = best  # type: ignore[misc]
    return GridPartition(
        row_cuts=row_cuts,
        col_cuts=col_cuts,
        rows=len(row_cuts) + 1,
        cols=len(col_cuts) + 1,
    )


def _optimize_one(row_ties, col_ties, col_to_rowgroup, r, max_cols, cap, gtab):
    """Single-resolution optimizer with backpointers (plain numpy)."""
    row_of_group = np.empty(row_ties.shape[0], dtype=np.int64)
    _equipartition_into(row_ties, r, row_of_group)
    labels = row_of_group[col_to_rowgroup]
    row_counts = np.bincount(labels, minlength=r)
    H = -gtab[row_counts].sum()
    # clumps
    glab = np.empty(col_ties.shape[0], dtype=np.int64)
    pos = 0
    for g, size in enumerate(col_ties):
        block = labels[pos : pos + size]
        glab[g] = block[0] if (block == block[0]).all() else -1
        pos += size
    brk = (glab[1:] == -1) | (glab[:-1] == -1) | (glab[1:] != glab[:-1])
    clump_of = np.concatenate(([0], np.cumsum(brk)))
    n_clumps = clump_of[-1] + 1
    clump_sizes = np.bincount(clump_of, weights=col_ties).astype(np.int64)
    if n_clumps > cap:
        atom_of_clump = np.empty(n_clumps, dtype=np.int64)
        _equipartition_into(clump_sizes, cap, atom_of_clump)
    else:
        atom_of_clump = np.arange(n_clumps)
    atom_of_group = atom_of_clump[clump_of]
    m = int(atom_of_group[-1]) + 1
    P = np.zeros((m + 1, r), dtype=np.int64)
    pos = 0
    for g, size in enumerate(col_ties):
        np.add.at(P[atom_of_group[g] + 1], labels[pos : pos + size], 1)
        pos += size
    P = np.cumsum(P, axis=0)
    S = P.sum(axis=1)
    F = np.full((m + 1, m + 1), -np.inf)
    for t in range(1, m + 1):
        seg = P[t] - P[:t]
        F[t, :t] = -gtab[S[t] - S[:t]] + gtab[seg].sum(axis=1)
    D = np.full((m + 1, max_cols + 1), -np.inf)
    back = np.zeros((m + 1, max_cols + 1), dtype=np.int64)
    D[1:, 1] = F[1:, 0]
    for j in range(2, min(max_cols, m) + 1):
        for t in range(j, m + 1):
            cand = D[j - 1 : t, j - 1] + F[t, j - 1 : t]
            s = int(np.argmax(cand))
            D[t, j] = cand[s]
            back[t, j] = s + j - 1
    j_best = int(np.argmax(D[m, 1 : max_cols + 1])) + 1
    bestF = D[m, j_best]
    # walk back atom boundaries -> group bin assignment
    bounds = []
    t, j = m, j_best
    while j > 1:
        s = back[t, j]
        bounds.append(s)
        t, j = s, j - 1
    bounds = sorted(bounds)
    atom_bin = np.zeros(m, dtype=np.int64)
    for b in bounds:
        atom_bin[b:] += 1
    col_bins = atom_bin[atom_of_group]
    return H + bestF, row_of_group, col_bins


def partition_mutual_information(x, y, partition: GridPartition) -> float:
    """Mutual information of (x, y) discretized by an explicit partition."""
    xv, yv = _validate_pair(x, y)
    iy = np.searchsorted(partition.row_cuts, yv, side="right")
    ix = np.searchsorted(partition.col_cuts, xv, side="right")
    r = partition.rows
    c = partition.cols
    counts = np.bincount(iy * c + ix, minlength=r * c).reshape(r, c).astype(np.float64)
    p = counts / counts.sum()
    pi = p.sum(axis=1, keepdims=True)
    pj = p.sum(axis=0, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, p * np.log(p / (pi * pj)), 0.0)
    return float(terms.sum())
