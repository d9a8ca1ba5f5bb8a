"""Shared corpora and independent brute-force oracles.

The oracles here deliberately avoid the package's bitmask machinery: they
work on label pairs and plain sets, and use networkx for cycle detection,
so a bug in the fast path cannot hide in its own re-check.
"""

from __future__ import annotations

import itertools

import networkx as nx
import pytest

from posetassoc import Poset, connected_posets, mask_members


def corpus(max_n: int, min_n: int = 2) -> list[Poset]:
    """All connected posets with min_n..max_n elements, up to isomorphism."""
    out: list[Poset] = []
    for n in range(min_n, max_n + 1):
        out.extend(connected_posets(n))
    return out


@pytest.fixture(scope="session")
def connected_upto_5() -> list[Poset]:
    return corpus(5)


@pytest.fixture(scope="session")
def connected_upto_4() -> list[Poset]:
    return corpus(4)


# -- oracles ------------------------------------------------------------------


def oracle_is_tube(P: Poset, members: frozenset[int]) -> bool:
    """Tube test from first principles: size, convexity, Hasse connectivity."""
    if len(members) < 2 or len(members) == P.n:
        return False
    for x in members:
        for z in members:
            for y in range(P.n):
                if y not in members and P.less(x, y) and P.less(y, z):
                    return False
    graph = nx.Graph()
    graph.add_nodes_from(members)
    for i, j in P.covers:
        if i in members and j in members:
            graph.add_edge(i, j)
    return nx.is_connected(graph)


def oracle_tubes(P: Poset) -> set[frozenset[int]]:
    found = set()
    for size in range(2, P.n):
        for combo in itertools.combinations(range(P.n), size):
            if oracle_is_tube(P, frozenset(combo)):
                found.add(frozenset(combo))
    return found


def oracle_is_tubing(P: Poset, tubes: list[frozenset[int]]) -> bool:
    """Full tubing test with networkx doing the acyclicity work."""
    if not all(oracle_is_tube(P, t) for t in tubes):
        return False
    for a, b in itertools.combinations(tubes, 2):
        if a & b and not (a <= b or b <= a):
            return False
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(len(tubes)))
    for ai, a in enumerate(tubes):
        for bi, b in enumerate(tubes):
            if ai != bi and not a & b:
                if any(P.less(x, y) for x in a for y in b):
                    digraph.add_edge(ai, bi)
    return nx.is_directed_acyclic_graph(digraph)


def oracle_count_tubings(P: Poset) -> int:
    """Count proper tubings by extending pairwise-compatible families.

    Only the trivially hereditary pairwise condition prunes the search;
    every candidate family then goes through the full oracle test, so the
    count does not depend on the production enumerator's pruning logic.
    """
    tubes = sorted(oracle_tubes(P), key=sorted)
    count = 0
    stack: list[tuple[list[frozenset[int]], int]] = [([], 0)]
    while stack:
        family, start = stack.pop()
        if oracle_is_tubing(P, family):
            count += 1
        for k in range(start, len(tubes)):
            cand = tubes[k]
            if all(not (t & cand) or t <= cand or cand <= t for t in family):
                stack.append((family + [cand], k + 1))
    return count


def oracle_autonomous(P: Poset, members: frozenset[int]) -> bool:
    outside = [z for z in range(P.n) if z not in members]
    for x in members:
        for y in members:
            for z in outside:
                if P.less(x, z) != P.less(y, z):
                    return False
                if P.less(z, x) != P.less(z, y):
                    return False
    return True


def masks_to_sets(tubing) -> set[frozenset[int]]:
    return {frozenset(mask_members(t)) for t in tubing}
