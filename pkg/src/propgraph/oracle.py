"""Brute-force enumeration of every alignment between two short sequences.

Test-support module: it exhaustively lists all shift-function pairs and
evaluates each alignment's cost and matched-position delay straight from the
definitions, with no dynamic programming, no cost table and no notion of an
optimal-step subgraph.  Aggregating the minimum-cost entries gives ground
truth for the fast path in :mod:`propgraph.alignment`.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .costs import GAP, WARPING, CostModel
from .sequences import StateSequence

# column kinds: which sequence(s) advance at one alignment column
_I, _J, _BOTH = 0, 1, 2

DEFAULT_CAP = 10


@dataclass(frozen=True)
class EnumeratedAlignment:
    """One alignment as an explicit pair of strictly increasing shift maps.

    ``pi_1[h]`` is the column (1-based) holding position h+1 of the first
    sequence; matched columns are those in both images.
    """

    pi_1: tuple[int, ...]
    pi_2: tuple[int, ...]
    cost: float
    delay_sum: int

    def lattice_path(self, mode: str) -> list[tuple[int, int]]:
        """Cells (consumed-prefix lengths) visited column by column, matching
        the coordinates of the DP lattice (warping: 1-based positions)."""
        start = (1, 1) if mode == WARPING else (0, 0)
        path = [start]
        cols_1, cols_2 = set(self.pi_1), set(self.pi_2)
        a, b = start
        first = 2 if mode == WARPING else 1
        for k in range(first, max(len(self.pi_1 + self.pi_2) and max(cols_1 | cols_2), 0) + 1):
            a += k in cols_1
            b += k in cols_2
            path.append((a, b))
        return path


def _check_inputs(s_i: StateSequence, s_j: StateSequence, cost: CostModel, cap: int) -> None:
    if max(len(s_i), len(s_j)) > cap:
        raise ValueError(f"sequences longer than the enumeration cap {cap}")
    if cost.mode == WARPING and (len(s_i) == 0 or len(s_j) == 0):
        raise ValueError("warping mode requires non-empty sequences")


def _column_cost(cost: CostModel, x: tuple[float, ...], y: tuple[float, ...], kind: int, a: int, b: int) -> float:
    """Cost of one alignment column, given counts consumed after the column."""
    if kind == _BOTH:
        return cost.pair_cost(x[a - 1], y[b - 1])
    if cost.mode == WARPING:
        # the lagging sequence repeats its most recent state
        return cost.pair_cost(x[a - 1], y[b - 1])
    assert cost.gap_cost is not None
    return cost.gap_cost(x[a - 1] if kind == _I else y[b - 1])


def _walk(s_i: StateSequence, s_j: StateSequence, cost: CostModel) -> Iterator[tuple[float, int, tuple[int, ...]]]:
    """Depth-first over column-kind strings; yields (cost, delay_sum, kinds)."""
    x, y = s_i.values, s_j.values
    t_i, t_j = len(x), len(y)
    if cost.mode == WARPING:
        seed = (cost.pair_cost(x[0], y[0]), 0, 1, 1, (_BOTH,))
    else:
        seed = (0.0, 0, 0, 0, ())
    stack = [seed]
    while stack:
        acc, delay, a, b, kinds = stack.pop()
        if a == t_i and b == t_j:
            yield acc, delay, kinds
            continue
        if a < t_i:
            stack.append((acc + _column_cost(cost, x, y, _I, a + 1, b), delay, a + 1, b, kinds + (_I,)))
        if b < t_j:
            stack.append((acc + _column_cost(cost, x, y, _J, a, b + 1), delay, a, b + 1, kinds + (_J,)))
        if a < t_i and b < t_j:
            step = _column_cost(cost, x, y, _BOTH, a + 1, b + 1)
            stack.append((acc + step, delay + (b - a), a + 1, b + 1, kinds + (_BOTH,)))


def enumerate_alignments(
    s_i: StateSequence, s_j: StateSequence, cost: CostModel, cap: int = DEFAULT_CAP
) -> Iterator[EnumeratedAlignment]:
    """Yield every alignment of the pair exactly once.

    Warping mode enumerates the shift pairs pinned to a shared first column;
    gap mode enumerates the unrestricted set (both sequences may even be
    empty).  Alignments come out in depth-first order over column kinds.
    """
    _check_inputs(s_i, s_j, cost, cap)
    for acc, delay, kinds in _walk(s_i, s_j, cost):
        pi_1 = tuple(k + 1 for k, kind in enumerate(kinds) if kind != _J)
        pi_2 = tuple(k + 1 for k, kind in enumerate(kinds) if kind != _I)
        yield EnumeratedAlignment(pi_1, pi_2, acc, delay)


def alignment_cost(
    s_i: StateSequence, s_j: StateSequence, pi_1: tuple[int, ...], pi_2: tuple[int, ...], cost: CostModel
) -> tuple[float, int]:
    """Evaluate one explicit shift-function pair from the definitions alone.

    Returns (alignment cost, matched-position delay sum).  Used to cross-check
    the enumerator's incremental bookkeeping on sampled alignments.
    """
    x, y = s_i.values, s_j.values
    cols_1 = {k: h + 1 for h, k in enumerate(pi_1)}
    cols_2 = {k: h + 1 for h, k in enumerate(pi_2)}
    top = max(list(pi_1) + list(pi_2), default=0)
    if sorted(set(pi_1) | set(pi_2)) != list(range(1, top + 1)):
        raise ValueError("shift images must jointly cover a contiguous range from 1")
    total = 0.0
    delay = 0
    for k in range(1, top + 1):
        in_1, in_2 = k in cols_1, k in cols_2
        if cost.mode == WARPING:
            a = max(h for h, col in zip(range(1, len(pi_1) + 1), pi_1) if col <= k)
            b = max(h for h, col in zip(range(1, len(pi_2) + 1), pi_2) if col <= k)
            total += cost.pair_cost(x[a - 1], y[b - 1])
        else:
            assert cost.gap_cost is not None
            if in_1 and in_2:
                total += cost.pair_cost(x[cols_1[k] - 1], y[cols_2[k] - 1])
            elif in_1:
                total += cost.gap_cost(x[cols_1[k] - 1])
            else:
                total += cost.gap_cost(y[cols_2[k] - 1])
        if in_1 and in_2:
            delay += cols_2[k] - cols_1[k]
    return total, delay


def oracle_stats(
    s_i: StateSequence, s_j: StateSequence, cost: CostModel, cap: int = DEFAULT_CAP
) -> tuple[float, int, int]:
    """(min cost, count of minimum-cost alignments, their total delay sum).

    Streams over the full enumeration, grouping costs within the model's
    equality tolerance; infinite-cost alignments never win while any finite
    one exists.
    """
    _check_inputs(s_i, s_j, cost, cap)
    tol = cost.equality_tolerance
    best = math.inf
    count = 0
    delay_total = 0
    for acc, delay, _ in _walk(s_i, s_j, cost):
        if acc > best + tol:
            continue
        if acc < best - tol:
            best = acc
            count = 1
            delay_total = delay
        else:
            count += 1
            delay_total += delay
    if math.isinf(best):
        return math.inf, 0, 0
    return best, count, delay_total


def min_cost_delay_multiset(
    s_i: StateSequence, s_j: StateSequence, cost: CostModel, cap: int = DEFAULT_CAP
) -> Counter[int]:
    """Multiset of delay sums over the minimum-cost alignments."""
    _check_inputs(s_i, s_j, cost, cap)
    tol = cost.equality_tolerance
    best = math.inf
    hist: Counter[int] = Counter()
    for acc, delay, _ in _walk(s_i, s_j, cost):
        if acc > best + tol or math.isinf(acc):
            continue
        if acc < best - tol:
            best = acc
            hist = Counter()
        hist[delay] += 1
    return hist


def optimal_lattice_edges(
    s_i: StateSequence, s_j: StateSequence, cost: CostModel, cap: int = DEFAULT_CAP
) -> set[tuple[tuple[int, int], tuple[int, int]]]:
    """Union of lattice edges over all minimum-cost alignments' paths."""
    tol = cost.equality_tolerance
    best = math.inf
    paths: list[list[tuple[int, int]]] = []
    for alignment in enumerate_alignments(s_i, s_j, cost, cap):
        if alignment.cost > best + tol or math.isinf(alignment.cost):
            continue
        path = alignment.lattice_path(cost.mode)
        if alignment.cost < best - tol:
            best = alignment.cost
            paths = [path]
        else:
            paths.append(path)
    edges: set[tuple[tuple[int, int], tuple[int, int]]] = set()
    for path in paths:
        edges.update(zip(path, path[1:]))
    return edges
