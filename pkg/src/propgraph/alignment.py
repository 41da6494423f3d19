"""Minimum-cost alignment statistics between two state sequences.

For a pair of sequences this module computes the minimum alignment cost, the
exact number of minimum-cost alignments, and the exact total of the time
delays over matched positions across all of those alignments, from which the
average time delay follows.  Alignments map one-to-one onto monotone lattice
paths, so everything reduces to dynamic programming on a (right/down/diagonal)
grid: a cost table, the subgraph of steps that stay optimal, and backward /
forward path counts on that subgraph.  Counts grow exponentially with the
sequence length and are therefore kept as Python integers; only the final
average is converted to a float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .costs import GAP, WARPING, CostModel
from .sequences import StateSequence

Cell = tuple[int, int]


@dataclass(frozen=True)
class AlignmentStats:
    """Aggregate over all minimum-cost alignments of one ordered pair.

    ``delay_sum_total`` is the exact integer sum, over every minimum-cost
    alignment and every matched position in it, of (position in the second
    sequence) - (position in the first sequence).  ``avg_delay`` is that sum
    divided by ``num_alignments``; a positive value means the second sequence
    lags the first.
    """

    min_cost: float
    num_alignments: int
    delay_sum_total: int
    avg_delay: float


@dataclass
class DpTables:
    """Intermediate tables for one pair: costs, optimal-step masks, counts.

    Cells are 0-based array coordinates; in warping mode cell (r, c) stands
    for the sequence positions (r + 1, c + 1), in gap mode row/column 0 are
    the null prefixes and cell (r, c) stands for positions (r, c) directly.
    ``edge_h[r, c]`` marks the horizontal step from (r, c-1) into (r, c) as
    cost-preserving; ``edge_v`` and ``edge_d`` mark the vertical and diagonal
    steps the same way.  ``on_path`` marks cells lying on at least one
    minimum-cost start-to-end path; ``count_back``/``count_fwd`` hold the
    big-integer path counts to the end / from the start, flattened row-major
    and left at 0 off the optimal subgraph.
    """

    mode: str
    shape: tuple[int, int]
    dist: np.ndarray
    step_h: np.ndarray
    step_v: np.ndarray
    step_d: np.ndarray
    tolerance: float
    edge_h: np.ndarray | None = None
    edge_v: np.ndarray | None = None
    edge_d: np.ndarray | None = None
    on_path: np.ndarray | None = None
    path_cells: np.ndarray | None = None
    count_back: list[int] | None = None
    count_fwd: list[int] | None = None
    num_alignments: int | None = None

    @property
    def min_cost(self) -> float:
        return float(self.dist[-1, -1])

    @property
    def position_offset(self) -> int:
        return 1 if self.mode == WARPING else 0

    def estar_edges(self) -> set[tuple[Cell, Cell]]:
        """Directed lattice edges on minimum-cost paths, in sequence-position
        coordinates (1-based positions; gap mode includes the null row 0)."""
        if self.on_path is None:
            raise ValueError("edge graph not built yet")
        off = self.position_offset
        edges: set[tuple[Cell, Cell]] = set()
        assert self.edge_h is not None and self.edge_v is not None and self.edge_d is not None
        for r, c in self.path_cells:
            r, c = int(r), int(c)
            if c > 0 and self.edge_h[r, c] and self.on_path[r, c - 1]:
                edges.add(((r + off, c - 1 + off), (r + off, c + off)))
            if r > 0 and self.edge_v[r, c] and self.on_path[r - 1, c]:
                edges.add(((r - 1 + off, c + off), (r + off, c + off)))
            if r > 0 and c > 0 and self.edge_d[r, c] and self.on_path[r - 1, c - 1]:
                edges.add(((r - 1 + off, c - 1 + off), (r + off, c + off)))
        return edges


def _fill_interior(dist: np.ndarray, step_h: np.ndarray, step_v: np.ndarray, step_d: np.ndarray) -> None:
    """Fill dist[1:, 1:] anti-diagonal by anti-diagonal (borders already set)."""
    rows, cols = dist.shape
    for k in range(2, rows + cols - 1):
        lo = max(1, k - (cols - 1))
        hi = min(k - 1, rows - 1)
        if lo > hi:
            continue
        r = np.arange(lo, hi + 1)
        c = k - r
        best = np.minimum(dist[r - 1, c] + step_v[r, c], dist[r, c - 1] + step_h[r, c])
        np.minimum(best, dist[r - 1, c - 1] + step_d[r, c], out=best)
        dist[r, c] = best


def build_cost_table(s_i: StateSequence, s_j: StateSequence, cost: CostModel) -> DpTables:
    """Fill the minimum prefix-alignment cost table for one ordered pair.

    The bottom-right entry is the minimum alignment cost of the whole pair.
    Gap mode adds row/column 0 for null prefixes; warping mode requires both
    sequences to be non-empty.
    """
    x, y = s_i.array, s_j.array
    if cost.mode == WARPING:
        if len(x) == 0 or len(y) == 0:
            raise ValueError("warping mode requires non-empty sequences")
        step = cost.pair_matrix(x, y)
        if np.isnan(step).any():
            raise ValueError("cost function produced NaN")
        rows, cols = step.shape
        dist = np.full((rows, cols), np.inf)
        dist[0, :] = np.cumsum(step[0, :])
        dist[:, 0] = np.cumsum(step[:, 0])
        _fill_interior(dist, step, step, step)
        return DpTables(WARPING, (rows, cols), dist, step, step, step, cost.equality_tolerance)

    rows, cols = len(x) + 1, len(y) + 1
    pair = cost.pair_matrix(x, y)
    gap_i = cost.gap_vector(x)
    gap_j = cost.gap_vector(y)
    if np.isnan(pair).any() or np.isnan(gap_i).any() or np.isnan(gap_j).any():
        raise ValueError("cost function produced NaN")
    step_d = np.full((rows, cols), np.inf)
    step_d[1:, 1:] = pair
    step_v = np.full((rows, cols), np.inf)
    step_v[1:, :] = gap_i[:, None]
    step_h = np.full((rows, cols), np.inf)
    step_h[:, 1:] = gap_j[None, :]
    dist = np.full((rows, cols), np.inf)
    dist[0, 0] = 0.0
    if cols > 1:
        dist[0, 1:] = np.cumsum(gap_j)
    if rows > 1:
        dist[1:, 0] = np.cumsum(gap_i)
    _fill_interior(dist, step_h, step_v, step_d)
    return DpTables(GAP, (rows, cols), dist, step_h, step_v, step_d, cost.equality_tolerance)


def build_min_edge_graph(tables: DpTables, cost: CostModel | None = None) -> DpTables:
    """Mark the lattice steps that lie on minimum-cost start-to-end paths.

    A step into a cell survives when its source cost plus step cost matches
    the cell's cost within the tolerance; the masks are then restricted to
    cells both forward-reachable from the start and backward-reachable from
    the end, which is exactly the optimal-path subgraph.
    """
    tol = cost.equality_tolerance if cost is not None else tables.tolerance
    dist = tables.dist
    rows, cols = dist.shape
    edge_h = np.zeros((rows, cols), dtype=bool)
    edge_v = np.zeros((rows, cols), dtype=bool)
    edge_d = np.zeros((rows, cols), dtype=bool)
    with np.errstate(invalid="ignore"):
        if cols > 1:
            val = dist[:, :-1] + tables.step_h[:, 1:]
            edge_h[:, 1:] = np.isfinite(val) & (np.abs(dist[:, 1:] - val) <= tol)
        if rows > 1:
            val = dist[:-1, :] + tables.step_v[1:, :]
            edge_v[1:, :] = np.isfinite(val) & (np.abs(dist[1:, :] - val) <= tol)
        if rows > 1 and cols > 1:
            val = dist[:-1, :-1] + tables.step_d[1:, 1:]
            edge_d[1:, 1:] = np.isfinite(val) & (np.abs(dist[1:, 1:] - val) <= tol)

    fwd = np.zeros((rows, cols), dtype=bool)
    fwd[0, 0] = bool(np.isfinite(dist[0, 0]))
    if cols > 1:
        fwd[0, 1:] = fwd[0, 0] & np.logical_and.accumulate(edge_h[0, 1:])
    if rows > 1:
        fwd[1:, 0] = fwd[0, 0] & np.logical_and.accumulate(edge_v[1:, 0])
    for k in range(2, rows + cols - 1):
        lo = max(1, k - (cols - 1))
        hi = min(k - 1, rows - 1)
        if lo > hi:
            continue
        r = np.arange(lo, hi + 1)
        c = k - r
        reach = (edge_h[r, c] & fwd[r, c - 1]) | (edge_v[r, c] & fwd[r - 1, c])
        reach |= edge_d[r, c] & fwd[r - 1, c - 1]
        fwd[r, c] = reach

    back = np.zeros((rows, cols), dtype=bool)
    back[-1, -1] = bool(np.isfinite(dist[-1, -1]))
    if cols > 1:
        back[-1, :-1] = back[-1, -1] & np.logical_and.accumulate(edge_h[-1, :0:-1])[::-1]
    if rows > 1:
        back[:-1, -1] = back[-1, -1] & np.logical_and.accumulate(edge_v[:0:-1, -1])[::-1]
    for k in range(rows + cols - 4, -1, -1):
        lo = max(0, k - (cols - 2))
        hi = min(k, rows - 2)
        if lo > hi:
            continue
        r = np.arange(lo, hi + 1)
        c = k - r
        reach = (edge_h[r, c + 1] & back[r, c + 1]) | (edge_v[r + 1, c] & back[r + 1, c])
        reach |= edge_d[r + 1, c + 1] & back[r + 1, c + 1]
        back[r, c] = reach

    tables.edge_h, tables.edge_v, tables.edge_d = edge_h, edge_v, edge_d
    tables.on_path = fwd & back
    tables.path_cells = np.argwhere(tables.on_path)
    return tables


def count_backward(tables: DpTables) -> int:
    """Count, for each optimal-subgraph cell, the paths from it to the end.

    Returns the count at the start cell: the exact number of minimum-cost
    alignments (0 when no finite-cost alignment exists).
    """
    if tables.on_path is None:
        raise ValueError("edge graph not built yet")
    rows, cols = tables.shape
    counts: list[int] = [0] * (rows * cols)
    eh = tables.edge_h.ravel().tolist()
    ev = tables.edge_v.ravel().tolist()
    ed = tables.edge_d.ravel().tolist()
    on = tables.on_path.ravel().tolist()
    end = rows * cols - 1
    cells = tables.path_cells
    for pos in range(len(cells) - 1, -1, -1):
        r, c = cells[pos]
        idx = int(r) * cols + int(c)
        if idx == end:
            counts[idx] = 1
            continue
        total = 0
        right = idx + 1
        if c + 1 < cols and eh[right] and on[right]:
            total += counts[right]
        down = idx + cols
        if r + 1 < rows and ev[down] and on[down]:
            total += counts[down]
        diag = idx + cols + 1
        if r + 1 < rows and c + 1 < cols and ed[diag] and on[diag]:
            total += counts[diag]
        counts[idx] = total
    tables.count_back = counts
    tables.num_alignments = counts[0] if tables.on_path[0, 0] else 0
    return tables.num_alignments


def count_forward(tables: DpTables) -> DpTables:
    """Count the paths from the start into each optimal-subgraph cell.

    Evaluated only on cells already known to sit on minimum-cost paths; the
    end-cell count equals the backward count at the start.
    """
    if tables.count_back is None:
        raise ValueError("backward counts not computed yet")
    rows, cols = tables.shape
    counts: list[int] = [0] * (rows * cols)
    eh = tables.edge_h.ravel().tolist()
    ev = tables.edge_v.ravel().tolist()
    ed = tables.edge_d.ravel().tolist()
    on = tables.on_path.ravel().tolist()
    for r, c in tables.path_cells:
        idx = int(r) * cols + int(c)
        if idx == 0:
            counts[0] = 1
            continue
        total = 0
        if c > 0 and eh[idx] and on[idx - 1]:
            total += counts[idx - 1]
        if r > 0 and ev[idx] and on[idx - cols]:
            total += counts[idx - cols]
        if r > 0 and c > 0 and ed[idx] and on[idx - cols - 1]:
            total += counts[idx - cols - 1]
        counts[idx] = total
    tables.count_fwd = counts
    return tables


def sum_matched_delays(tables: DpTables) -> int:
    """Exact total delay over matched positions across all optimal alignments.

    Each diagonal step into cell (r, c) matches sequence positions whose delay
    is c - r; it occurs in (paths into its source) x (paths from its target)
    minimum-cost alignments.
    """
    if tables.count_fwd is None:
        raise ValueError("forward counts not computed yet")
    rows, cols = tables.shape
    ed = tables.edge_d.ravel().tolist()
    on = tables.on_path.ravel().tolist()
    back = tables.count_back
    fwd = tables.count_fwd
    total = 0
    for r, c in tables.path_cells:
        r, c = int(r), int(c)
        idx = r * cols + c
        if r > 0 and c > 0 and ed[idx] and on[idx - cols - 1]:
            total += (c - r) * fwd[idx - cols - 1] * back[idx]
    return total


def align_stats(s_i: StateSequence, s_j: StateSequence, cost: CostModel) -> AlignmentStats:
    """Minimum cost, exact alignment count, and exact/average delay sum.

    When no finite-cost alignment exists the count is 0 and the average is
    NaN; otherwise the average is the exact integer ratio rounded once to a
    float.
    """
    tables = build_cost_table(s_i, s_j, cost)
    build_min_edge_graph(tables, cost)
    num = count_backward(tables)
    count_forward(tables)
    delay_total = sum_matched_delays(tables)
    if num == 0:
        return AlignmentStats(math.inf, 0, 0, math.nan)
    return AlignmentStats(tables.min_cost, num, delay_total, delay_total / num)


def optimal_alignment_path(tables: DpTables) -> list[Cell]:
    """One deterministic minimum-cost lattice path, start to end, in array
    coordinates (diagonal preferred, then vertical, then horizontal)."""
    if tables.on_path is None or not tables.on_path[0, 0]:
        raise ValueError("no finite-cost alignment")
    rows, cols = tables.shape
    r, c = rows - 1, cols - 1
    path = [(r, c)]
    on = tables.on_path
    while (r, c) != (0, 0):
        if r > 0 and c > 0 and tables.edge_d[r, c] and on[r - 1, c - 1]:
            r, c = r - 1, c - 1
        elif r > 0 and tables.edge_v[r, c] and on[r - 1, c]:
            r = r - 1
        elif c > 0 and tables.edge_h[r, c] and on[r, c - 1]:
            c = c - 1
        else:  # pragma: no cover - on_path guarantees a predecessor
            raise AssertionError("dead end while backtracking an optimal path")
        path.append((r, c))
    path.reverse()
    return path
