"""Minimum-cost bipartite matching and threshold gating."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

PAD_COST = 1e9
_TIE_RTOL = 1e-13


@dataclass
class AssignmentResult:
    matches: list[tuple[int, int, float]] = field(default_factory=list)
    unmatched_tracks: list[int] = field(default_factory=list)
    unmatched_detections: list[int] = field(default_factory=list)


def _hungarian(cost: np.ndarray):
    """Shortest augmenting path Hungarian method on a square matrix.

    Returns (row_to_col, u, v) where u, v are optimal dual potentials, i.e.
    ``cost[i, j] - u[i] - v[j] >= 0`` with equality on the returned matching.
    """
    n = cost.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=int)  # p[j]: row (1-based) matched to column j
    way = np.zeros(n + 1, dtype=int)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used
            free[0] = False
            cur = cost[i0 - 1] - u[i0] - v[1:]
            cols = np.flatnonzero(free[1:]) + 1
            cand = cur[cols - 1]
            better = cand < minv[cols]
            minv[cols[better]] = cand[better]
            way[cols[better]] = j0
            k = int(np.argmin(minv[cols]))
            j1 = int(cols[k])
            delta = minv[j1]
            u[p[used]] += delta
            v[used] -= delta
            minv[free] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    row_to_col = np.empty(n, dtype=int)
    for j in range(1, n + 1):
        row_to_col[p[j] - 1] = j - 1
    return row_to_col, u[1:], v[1:]


def _reroute(tight: np.ndarray, col_owner: np.ndarray, row_to_col: np.ndarray, start: int, first_row: int) -> bool:
    """Find an alternating path in the tight graph that re-matches ``start``.

    Only rows >= ``first_row`` may change partner. On success the matching is
    updated in place.
    """
    n = tight.shape[0]
    free_col = -1
    # After unmatching, exactly one column has no owner.
    for c in range(n):
        if col_owner[c] < 0:
            free_col = c
            break
    parent_col = {}
    seen = np.zeros(n, dtype=bool)
    frontier = [start]
    visited_rows = {start}
    while frontier:
        nxt = []
        for r in frontier:
            for c in np.flatnonzero(tight[r]):
                if seen[c]:
                    continue
                seen[c] = True
                parent_col[c] = r
                if c == free_col:
                    # unwind
                    while True:
                        row = parent_col[c]
                        prev = row_to_col[row]
                        row_to_col[row] = c
                        col_owner[c] = row
                        if row == start:
                            return True
                        c = prev
                owner = col_owner[c]
                if owner >= first_row and owner not in visited_rows:
                    visited_rows.add(owner)
                    nxt.append(owner)
        frontier = nxt
    return False


def _lexicographic_optimum(cost: np.ndarray, row_to_col: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    # Every optimal matching lies in the equality subgraph of any optimal dual,
    # so the lexicographically smallest optimum is the lexicographically
    # smallest perfect matching of that subgraph.
    n = cost.shape[0]
    reduced = cost - u[:, None] - v[None, :]
    scale = float(np.max(np.abs(cost))) if cost.size else 0.0
    tight = reduced <= _TIE_RTOL * scale * n
    tight[np.arange(n), row_to_col] = True
    match = row_to_col.copy()
    owner = np.empty(n, dtype=int)
    owner[match] = np.arange(n)
    for i in range(n):
        for j in np.flatnonzero(tight[i]):
            if j >= match[i]:
                break
            if owner[j] < i:
                continue  # held by a row already fixed
            saved_match, saved_owner = match.copy(), owner.copy()
            r = owner[j]
            owner[match[i]] = -1
            match[i] = j
            owner[j] = i
            # r lost its column; find it another using rows > i only
            owner_tmp = owner.copy()
            if _reroute(tight, owner_tmp, match, r, i + 1):
                owner = owner_tmp
                break
            match, owner = saved_match, saved_owner
    return match


def solve_min_cost(matrix) -> list[tuple[int, int]]:
    """Minimum-total-cost injective pairing of rows to columns.

    Rectangular matrices are padded to square with ``PAD_COST``; pairs that
    land on padding are dropped, so ``min(R, C)`` pairs are returned, sorted
    by row. Among equal-cost optima the lexicographically smallest
    ``(row, col)`` sequence is returned.
    """
    m = np.asarray(matrix, dtype=float)
    if m.size == 0:
        return []
    if m.ndim != 2:
        raise ValueError("cost matrix must be two-dimensional")
    if not np.all(np.isfinite(m)):
        raise ValueError("cost matrix contains non-finite entries")
    if np.any(m < 0):
        raise ValueError("cost matrix entries must be non-negative")
    rows, cols = m.shape
    n = max(rows, cols)
    square = np.full((n, n), PAD_COST)
    square[:rows, :cols] = m
    # Padded lines are constant, so shifting them to zero leaves every
    # optimum unchanged and keeps the dual potentials well scaled.
    square[rows:, :] -= PAD_COST
    square[:, cols:] -= PAD_COST
    row_to_col, u, v = _hungarian(square)
    row_to_col = _lexicographic_optimum(square, row_to_col, u, v)
    return [(i, int(j)) for i, j in enumerate(row_to_col) if i < rows and j < cols]


def gate_and_split(pairing, matrix, t_match: float) -> AssignmentResult:
    """Drop pairs costing more than ``t_match`` and list everything unmatched."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2:
        m = m.reshape(0, 0) if m.size == 0 else m
    rows, cols = m.shape
    result = AssignmentResult()
    used_r, used_c = set(), set()
    for r, c in pairing:
        cost = float(m[r, c])
        if cost > t_match:
            continue
        result.matches.append((r, c, cost))
        used_r.add(r)
        used_c.add(c)
    result.unmatched_tracks = [r for r in range(rows) if r not in used_r]
    result.unmatched_detections = [c for c in range(cols) if c not in used_c]
    return result


def assign(matrix, t_match: float) -> AssignmentResult:
    return gate_and_split(solve_min_cost(matrix), matrix, t_match)
