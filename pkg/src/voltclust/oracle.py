"""Brute-force reference implementations used by the test suite.

These avoid the package's queue-based product-state search: net-voltage
sets are rebuilt by layer-by-layer enumeration of (semi-)walks of bounded
length with a visited-state memo, and existence/counting questions about
balanced nondegenerate assignments by exhausting all ``|G|^|E|`` voltage
maps.  They are meant for desk-scale cross-checks, not performance.
"""

from __future__ import annotations

import itertools
from typing import Iterator, NamedTuple

from .errors import InsufficientBound, TooLarge
from .graph import Digraph
from .group import FiniteGroup
from .voltage import (
    MODES,
    VoltageGraph,
    _check_mode,
    is_nondegenerate,
    is_structurally_balanced,
)


def enumerate_reachable_states(
    vg: VoltageGraph, start: int, mode: str = "semi", max_len: int | None = None
) -> frozenset[tuple[int, int]]:
    """States ``(net voltage, endpoint)`` over all (semi-)walks from ``start``
    of length at most ``max_len``, enumerated layer by layer.

    ``max_len`` defaults to ``|G| * |V|``, which is exhaustive: any reachable
    state is reached by a walk visiting no state twice.
    """
    _check_mode(mode)
    g = vg.graph
    g._check_vertex(start)
    bound = vg.group.order * g.n
    if max_len is None:
        max_len = bound
    if max_len < bound:
        raise InsufficientBound(
            f"max_len = {max_len} cannot be exhaustive; need at least |G|*|V| = {bound}"
        )
    cay = vg.group.cayley
    inv = vg.group.inverses
    semi = mode == "semi"
    seen = {(0, start)}
    frontier = [(0, start)]
    for _ in range(max_len):
        if not frontier:
            break
        layer = []
        for ge, v in frontier:
            moves = [(cay[ge][vg.rho[(v, u)]], u) for u in g.out_neighbors(v)]
            if semi:
                moves += [(cay[ge][inv[vg.rho[(u, v)]]], u) for u in g.in_neighbors(v)]
            for state in moves:
                if state not in seen:
                    seen.add(state)
                    layer.append(state)
        frontier = layer
    return frozenset(seen)


def enumerate_net_sets(
    vg: VoltageGraph, source: int, target: int, mode: str = "semi", max_len: int | None = None
) -> frozenset[int]:
    """Net voltages collected over all enumerated (semi-)walks from ``source``
    to ``target``."""
    vg.graph._check_vertex(target)
    states = enumerate_reachable_states(vg, source, mode, max_len)
    return frozenset(g for g, v in states if v == target)


class VoltageAssignment(NamedTuple):
    rho: dict[tuple[int, int], int]
    balanced: bool
    nondegenerate: bool


def enumerate_voltage_maps(
    g: Digraph, group: FiniteGroup, guard: int = 1_000_000
) -> Iterator[VoltageAssignment]:
    """All ``|G|^|E|`` voltage assignments on ``g`` with exact balance and
    nondegeneracy flags, in lexicographic edge/element order."""
    total = group.order ** len(g.edges)
    if total > guard:
        raise TooLarge(f"{total} assignments exceed the enumeration guard {guard}")
    edges = g.edges
    for combo in itertools.product(range(group.order), repeat=len(edges)):
        rho = dict(zip(edges, combo))
        vg = VoltageGraph(g, group, rho)
        yield VoltageAssignment(
            rho=rho,
            balanced=is_structurally_balanced(vg),
            nondegenerate=is_nondegenerate(vg),
        )


__all__ = [
    "MODES",
    "VoltageAssignment",
    "enumerate_net_sets",
    "enumerate_reachable_states",
    "enumerate_voltage_maps",
]
