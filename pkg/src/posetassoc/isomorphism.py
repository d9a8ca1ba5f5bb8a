"""Backtracking isomorphism search for small vertex-colored digraphs.

One engine serves comparability graphs (symmetric rows), posets (directed
rows), and vertex-facet incidence structures (bipartite, two colors).
Instances stay well under a couple hundred vertices, so iterated degree
refinement plus plain backtracking is all that is needed.
"""

from __future__ import annotations

from typing import Sequence

from .posets import iter_bits


def transpose_rows(rows: Sequence[int]) -> tuple[int, ...]:
    n = len(rows)
    out = [0] * n
    for i in range(n):
        for j in iter_bits(rows[i]):
            out[j] |= 1 << i
    return tuple(out)


def _joint_refine(out1, in1, colors1, out2, in2, colors2):
    """Refine both graphs together so color ids stay comparable across them.

    Each round a vertex's color becomes (old color, multiset of out-neighbor
    colors, multiset of in-neighbor colors); new colors are renumbered via a
    table shared by both graphs.  Stops at a stable partition.
    """
    n = len(out1)
    table = {c: i for i, c in enumerate(sorted(set(colors1) | set(colors2)))}
    c1 = [table[c] for c in colors1]
    c2 = [table[c] for c in colors2]
    while True:
        sig1 = [
            (
                c1[i],
                tuple(sorted(c1[j] for j in iter_bits(out1[i]))),
                tuple(sorted(c1[j] for j in iter_bits(in1[i]))),
            )
            for i in range(n)
        ]
        sig2 = [
            (
                c2[i],
                tuple(sorted(c2[j] for j in iter_bits(out2[i]))),
                tuple(sorted(c2[j] for j in iter_bits(in2[i]))),
            )
            for i in range(n)
        ]
        table = {s: i for i, s in enumerate(sorted(set(sig1) | set(sig2)))}
        new1 = [table[s] for s in sig1]
        new2 = [table[s] for s in sig2]
        if len(set(new1) | set(new2)) == len(set(c1) | set(c2)):
            return c1, c2
        c1, c2 = new1, new2


def find_isomorphism(
    out1: Sequence[int],
    out2: Sequence[int],
    colors1: Sequence | None = None,
    colors2: Sequence | None = None,
) -> tuple[int, ...] | None:
    """Map vertices of graph 1 onto graph 2 preserving edges and colors.

    Returns the first witness found when assigning vertex 0, 1, 2, ... of
    graph 1 in order and trying targets in ascending index order, so the
    result is deterministic (lexicographically least over the pruned search).
    Returns None when no isomorphism exists.
    """
    n = len(out1)
    if len(out2) != n:
        return None
    if colors1 is None:
        colors1 = [0] * n
    if colors2 is None:
        colors2 = [0] * n
    in1 = transpose_rows(out1)
    in2 = transpose_rows(out2)
    c1, c2 = _joint_refine(out1, in1, list(colors1), out2, in2, list(colors2))
    if sorted(c1) != sorted(c2):
        return None
    candidates = [[j for j in range(n) if c2[j] == c1[i]] for i in range(n)]

    mapping = [-1] * n
    used = [False] * n

    def consistent(i: int, j: int) -> bool:
        for k in range(i):
            m = mapping[k]
            if bool(out1[k] & (1 << i)) != bool(out2[m] & (1 << j)):
                return False
            if bool(out1[i] & (1 << k)) != bool(out2[j] & (1 << m)):
                return False
        return True

    def search(i: int) -> bool:
        if i == n:
            return True
        for j in candidates[i]:
            if not used[j] and consistent(i, j):
                mapping[i] = j
                used[j] = True
                if search(i + 1):
                    return True
                used[j] = False
        mapping[i] = -1
        return False

    if search(0):
        return tuple(mapping)
    return None
