"""Shared random-instance generators and small independent oracles."""

from __future__ import annotations

import random

from voltclust.graph import BACKWARD, FORWARD, Digraph, Walk
from voltclust.group import standard_point_group
from voltclust.voltage import VoltageGraph

_POOL = None


def group_pool():
    """Point groups of order <= 8 in dimensions 1 and 2, built once."""
    global _POOL
    if _POOL is None:
        _POOL = [
            standard_point_group("sign"),
            *(standard_point_group("cyclic", n=n) for n in (2, 3, 4, 5, 6, 7, 8)),
            standard_point_group("dihedral", n=2, v=(1.0, 0.5)),
            standard_point_group("dihedral", n=3, v=(1, 0)),
            standard_point_group("dihedral", n=4, v=(0.0, 1.0)),
        ]
    return _POOL


def random_group(rng: random.Random, max_order: int = 8):
    candidates = [g for g in group_pool() if g.order <= max_order]
    return rng.choice(candidates)


def random_strong_digraph(rng: random.Random, max_n: int = 6) -> Digraph:
    """Random strongly connected digraph: a Hamiltonian cycle plus extras."""
    n = rng.randint(2, max_n)
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    edges = {(perm[i], perm[(i + 1) % n]) for i in range(n)}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and rng.random() < 0.25:
                edges.add((i, j))
    return Digraph(n, sorted(edges))


def random_rooted_digraph(rng: random.Random, max_n: int = 6) -> Digraph:
    """Random rooted digraph: every vertex chains to a later vertex in a
    random order, so the last one is reachable from all; extras keep it rooted."""
    n = rng.randint(2, max_n)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    edges = set()
    for idx in range(n - 1):
        edges.add((order[idx], order[rng.randint(idx + 1, n - 1)]))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and rng.random() < 0.20:
                edges.add((i, j))
    g = Digraph(n, sorted(edges))
    assert g.connectivity.rooted
    return g


def random_weak_digraph(rng: random.Random, max_n: int = 6) -> Digraph:
    """Random weakly connected digraph: randomly oriented spanning tree plus extras."""
    n = rng.randint(2, max_n)
    vertices = list(range(1, n + 1))
    rng.shuffle(vertices)
    edges = set()
    for idx in range(1, n):
        a, b = vertices[idx], vertices[rng.randint(0, idx - 1)]
        edges.add((a, b) if rng.random() < 0.5 else (b, a))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and rng.random() < 0.15:
                edges.add((i, j))
    return Digraph(n, sorted(edges))


def random_tree_digraph(rng: random.Random, max_n: int = 6) -> Digraph:
    n = rng.randint(2, max_n)
    vertices = list(range(1, n + 1))
    rng.shuffle(vertices)
    edges = set()
    for idx in range(1, n):
        a, b = vertices[idx], vertices[rng.randint(0, idx - 1)]
        edges.add((a, b) if rng.random() < 0.5 else (b, a))
    return Digraph(n, sorted(edges))


def random_voltage_graph(rng: random.Random, graph: Digraph, group) -> VoltageGraph:
    return VoltageGraph(graph, group, {e: rng.randrange(group.order) for e in graph.edges})


def random_weights(rng: random.Random, graph: Digraph) -> dict:
    return {e: rng.uniform(0.5, 2.0) for e in graph.edges}


def random_semi_walk(rng: random.Random, g: Digraph, start: int, length: int) -> Walk:
    verts = [start]
    dirs = []
    v = start
    for _ in range(length):
        moves = [(u, FORWARD) for u in g.out_neighbors(v)] + [
            (u, BACKWARD) for u in g.in_neighbors(v)
        ]
        if not moves:
            break
        u, d = moves[rng.randrange(len(moves))]
        verts.append(u)
        dirs.append(d)
        v = u
    return Walk(verts, dirs)


def random_closed_semi_walk(rng: random.Random, g: Digraph, start: int, length: int) -> Walk:
    """Closed semi-walk from ``start``: wander, then retrace back."""
    w = random_semi_walk(rng, g, start, length)
    return w.concat(w.inverse())


def criterion_failing_voltage_graph() -> VoltageGraph:
    """Rooted, not strongly connected, with G*_r a proper subgroup of G_r:
    a 1<->2 two-cycle of net voltage -1 feeding the root 3."""
    sign = standard_point_group("sign")
    g = Digraph(3, [(1, 2), (2, 1), (1, 3), (2, 3)])
    return VoltageGraph(g, sign, {(1, 2): 1, (2, 1): 0, (1, 3): 0, (2, 3): 0})


def spec_tree_voltage_graph() -> VoltageGraph:
    """Two leaves feeding a root with opposite signs (a tree, hence balanced)."""
    sign = standard_point_group("sign")
    g = Digraph(3, [(1, 3), (2, 3)])
    return VoltageGraph(g, sign, {(1, 3): 0, (2, 3): 1})


def set_partitions(items):
    """All set partitions of ``items`` (each a list of lists)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [partition[i] + [first]] + partition[i + 1 :]
        yield [[first]] + partition


def states_by_walk_enumeration(vg: VoltageGraph, start: int, mode: str, max_len: int):
    """(net voltage, endpoint) pairs over all (semi-)walks of length <= max_len,
    enumerated one walk at a time with no memoization.  Exponential; tiny
    instances only."""
    results = set()
    cay, inv = vg.group.cayley, vg.group.inverses
    g = vg.graph

    def rec(ge: int, v: int, remaining: int):
        results.add((ge, v))
        if remaining == 0:
            return
        for u in g.out_neighbors(v):
            rec(cay[ge][vg.rho[(v, u)]], u, remaining - 1)
        if mode == "semi":
            for u in g.in_neighbors(v):
                rec(cay[ge][inv[vg.rho[(u, v)]]], u, remaining - 1)

    rec(0, start, max_len)
    return results
