"""Proper tubes and tubings of a connected poset, with face-count vectors.

A tube is a bitmask over element indices.  A tubing is a frozenset of tube
masks.  Compatibility (nested or disjoint) and convexity reduce to mask
algebra; the inter-tube digraph on each candidate tubing is tiny, so its
acyclicity is simply recomputed on every insertion.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

from .errors import DisconnectedPoset, TooSmall, UnknownElement
from .posets import Poset, as_mask, iter_bits, mask_members

Tubing = frozenset[int]


def _require_usable(P: Poset) -> None:
    if P.n < 2:
        raise TooSmall("need at least two elements")
    if not P.is_connected:
        raise DisconnectedPoset("the Hasse diagram is not connected")


def _connected_in_hasse(P: Poset, mask: int) -> bool:
    low = mask & -mask
    seen = low
    frontier = low
    while frontier:
        reach = 0
        for i in iter_bits(frontier):
            reach |= P.hasse_adj[i] & mask
        frontier = reach & ~seen
        seen |= frontier
    return seen == mask


def is_proper_tube(P: Poset, members: int | Iterable[int]) -> bool:
    """At least 2 elements, a proper subset, convex, Hasse-connected."""
    mask = as_mask(members)
    if mask.bit_count() < 2 or mask == P.full_mask:
        return False
    above = 0
    below = 0
    for i in iter_bits(mask):
        above |= P.up[i]
        below |= P.down[i]
    if above & below & ~mask:
        return False
    return _connected_in_hasse(P, mask)


def enumerate_tubes(P: Poset) -> list[int]:
    """All proper tubes, sorted by (size, member indices)."""
    _require_usable(P)
    tubes = [
        mask
        for mask in range(3, P.full_mask)
        if is_proper_tube(P, mask)
    ]
    tubes.sort(key=lambda m: (m.bit_count(), mask_members(m)))
    return tubes


def _upset_of(P: Poset, mask: int) -> int:
    out = 0
    for i in iter_bits(mask):
        out |= P.up[i]
    return out


def tube_digraph(P: Poset, tubes: Iterable[int]) -> dict[int, tuple[int, ...]]:
    """Successor lists of the inter-tube digraph.

    There is an edge from one tube to another exactly when they are disjoint
    and the first contains an element strictly below one of the second's.
    """
    tubes = list(tubes)
    upsets = {t: _upset_of(P, t) for t in tubes}
    return {
        s: tuple(t for t in tubes if t != s and s & t == 0 and upsets[s] & t)
        for s in tubes
    }


def _digraph_acyclic(succ: dict[int, tuple[int, ...]]) -> bool:
    state = dict.fromkeys(succ, 0)  # 0 new, 1 on stack, 2 done

    def visit(node: int) -> bool:
        state[node] = 1
        for nxt in succ[node]:
            if state[nxt] == 1:
                return False
            if state[nxt] == 0 and not visit(nxt):
                return False
        state[node] = 2
        return True

    return all(state[node] or visit(node) for node in succ)


def _pairwise_compatible(tubes: Sequence[int]) -> bool:
    for a_idx in range(len(tubes)):
        a = tubes[a_idx]
        for b in tubes[a_idx + 1 :]:
            inter = a & b
            if inter and inter != a and inter != b:
                return False
    return True


def is_proper_tubing(P: Poset, tubes: Iterable[int]) -> bool:
    """Every member a proper tube, pairwise nested or disjoint, digraph acyclic."""
    tubes = [as_mask(t) for t in tubes]
    if len(set(tubes)) != len(tubes):
        return False
    if not all(is_proper_tube(P, t) for t in tubes):
        return False
    if not _pairwise_compatible(tubes):
        return False
    return _digraph_acyclic(tube_digraph(P, tubes))


def enumerate_tubings(P: Poset) -> Iterator[Tubing]:
    """Yield every proper tubing exactly once, the empty one first.

    Depth-first search that only ever appends tubes later in the global
    tube order; any subset of a proper tubing is again one, so each tubing
    is reached through its own sorted tube list and no state is missed.
    """
    _require_usable(P)
    tubes = enumerate_tubes(P)
    upset = {t: _upset_of(P, t) for t in tubes}
    chosen: list[int] = []

    def acyclic_with(cand: int) -> bool:
        members = chosen + [cand]
        succ = {
            s: tuple(t for t in members if t != s and s & t == 0 and upset[s] & t)
            for s in members
        }
        return _digraph_acyclic(succ)

    def extend(start: int) -> Iterator[Tubing]:
        yield frozenset(chosen)
        for k in range(start, len(tubes)):
            cand = tubes[k]
            ok = True
            has_disjoint = False
            for t in chosen:
                inter = t & cand
                if not inter:
                    has_disjoint = True
                elif inter != t and inter != cand:
                    ok = False
                    break
            # nested additions create no digraph edges, so no new cycles
            if ok and (not has_disjoint or acyclic_with(cand)):
                chosen.append(cand)
                yield from extend(k + 1)
                chosen.pop()

    yield from extend(0)


def f_vector(P: Poset) -> tuple[int, ...]:
    """Face counts of the tubing complex by dimension.

    Entry i counts tubings with d - i tubes where d = |P| - 2, so the last
    entry is always 1 (the empty tubing, the whole polytope).
    """
    _require_usable(P)
    d = P.n - 2
    counts = [0] * (d + 1)
    for tubing in enumerate_tubings(P):
        counts[d - len(tubing)] += 1
    return tuple(counts)


def h_vector(f: Sequence[int]) -> tuple[int, ...]:
    """Coefficients of the f-polynomial evaluated at z - 1."""
    d = len(f) - 1
    return tuple(
        sum(f[i] * math.comb(i, k) * (-1) ** (i - k) for i in range(k, d + 1))
        for k in range(d + 1)
    )


def maximal_tubings(P: Poset) -> list[Tubing]:
    """All tubings with |P| - 2 tubes; these are the vertices."""
    _require_usable(P)
    want = P.n - 2
    found = [t for t in enumerate_tubings(P) if len(t) == want]
    found.sort(key=lambda t: sorted(t))
    return found


# -- label-level serialization ----------------------------------------------


def tubing_to_labels(P: Poset, tubing: Iterable[int]) -> list[list[str]]:
    """Tubing as sorted lists of element labels, tubes ordered deterministically."""
    tubes = [sorted(P.labels_of(t)) for t in tubing]
    tubes.sort(key=lambda labs: (len(labs), labs))
    return tubes


def tubing_from_labels(P: Poset, tubes: Iterable[Iterable[str]]) -> Tubing:
    """Inverse of tubing_to_labels; unknown labels raise, validity is not checked."""
    out = set()
    for tube in tubes:
        labs = list(tube)
        if not all(isinstance(x, str) for x in labs):
            raise UnknownElement(f"tube {labs!r} must contain element labels")
        out.add(P.mask_of(labs))
    return frozenset(out)
