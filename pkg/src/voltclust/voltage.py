"""Voltage graphs and their analysis: net voltages, local groups, Net sets,
structural balance, nondegeneracy, the adapted partition, and construction /
counting of balanced nondegenerate assignments.

All set-valued queries run by breadth-first search over product states
``(group element, vertex)``: the states reachable from ``(identity, v)`` are
exactly the pairs ``(net voltage of w, endpoint of w)`` over semi-walks (or
walks, in directed mode) starting at ``v``.  Walks are unbounded but the
states number at most ``|G| * |V|``.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .errors import (
    ForeignElement,
    Infeasible,
    InternalError,
    InvalidSpec,
    InvalidWalk,
    NotSurjective,
    NotWeaklyConnected,
)
from .graph import FORWARD, Digraph, Walk
from .group import FiniteGroup, GroupElement, Subgroup

MODES = ("directed", "semi")


@dataclass(frozen=True, eq=False)
class VoltageGraph:
    """A digraph together with a map from edges to group-element indices."""

    graph: Digraph
    group: FiniteGroup
    rho: Mapping[tuple[int, int], int]

    def __init__(self, graph: Digraph, group: FiniteGroup, rho: Mapping):
        normalized = {}
        for edge, value in rho.items():
            i, j = int(edge[0]), int(edge[1])
            if isinstance(value, GroupElement):
                if value.group is not group:
                    raise ForeignElement(f"voltage on edge ({i}, {j}) belongs to a different group")
                value = value.index
            normalized[(i, j)] = group._check_index(value)
        if set(normalized) != graph.edge_set:
            missing = sorted(graph.edge_set - set(normalized))
            extra = sorted(set(normalized) - graph.edge_set)
            raise InvalidSpec(
                f"voltage map must cover exactly the edge set (missing {missing}, extra {extra})"
            )
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "rho", normalized)

    def voltage(self, i: int, j: int) -> int:
        try:
            return self.rho[(i, j)]
        except KeyError:
            raise InvalidSpec(f"no edge ({i}, {j}) in the graph") from None

    def voltage_element(self, i: int, j: int) -> GroupElement:
        return GroupElement(self.group, self.voltage(i, j))

    @property
    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.rho.values())


def trivial_voltage_graph(graph: Digraph, group: FiniteGroup) -> VoltageGraph:
    """All-identity voltage assignment."""
    return VoltageGraph(graph, group, {e: 0 for e in graph.edges})


@dataclass(frozen=True)
class NetSet:
    """Net voltages realizable between two vertices, as sorted element indices."""

    source: int
    target: int
    mode: str
    elements: tuple[int, ...]

    def __contains__(self, g) -> bool:
        return g in set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise InvalidSpec(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def _require_weak(vg: VoltageGraph) -> None:
    if not vg.graph.connectivity.weak:
        raise NotWeaklyConnected("this operation requires a weakly connected voltage graph")


def net_voltage(vg: VoltageGraph, w: Walk) -> GroupElement:
    """Ordered product of edge voltages along ``w``, inverting backward steps.

    The trivial walk maps to the identity.
    """
    if not vg.graph.is_valid_walk(w):
        raise InvalidWalk(f"{w!r} is not a semi-walk of the graph")
    cay = vg.group.cayley
    inv = vg.group.inverses
    acc = 0
    for u, v, d in w.steps():
        if d == FORWARD:
            acc = cay[acc][vg.rho[(u, v)]]
        else:
            acc = cay[acc][inv[vg.rho[(v, u)]]]
    return GroupElement(vg.group, acc)


def reachable_states(vg: VoltageGraph, start: int, mode: str = "semi") -> frozenset[tuple[int, int]]:
    """All product states ``(g, v)`` reachable from ``(identity, start)``.

    Directed mode follows edges forward only; semi mode additionally steps
    backward across incoming edges, picking up the inverse voltage.
    """
    _check_mode(mode)
    g = vg.graph
    g._check_vertex(start)
    cay = vg.group.cayley
    inv = vg.group.inverses
    rho = vg.rho
    semi = mode == "semi"
    first = (0, start)
    seen = {first}
    queue = deque([first])
    while queue:
        ge, v = queue.popleft()
        row = cay[ge]
        for u in g.out_neighbors(v):
            state = (row[rho[(v, u)]], u)
            if state not in seen:
                seen.add(state)
                queue.append(state)
        if semi:
            for u in g.in_neighbors(v):
                state = (row[inv[rho[(u, v)]]], u)
                if state not in seen:
                    seen.add(state)
                    queue.append(state)
    return frozenset(seen)


def _local_group(vg: VoltageGraph, v: int, mode: str) -> Subgroup:
    states = reachable_states(vg, v, mode)
    members = tuple(sorted(g for g, u in states if u == v))
    try:
        return Subgroup(vg.group, members)
    except InvalidSpec as exc:
        raise InternalError(f"local group at v{v} is not closed: {exc}") from exc


def local_group(vg: VoltageGraph, v: int) -> Subgroup:
    """Net voltages of closed semi-walks based at ``v``."""
    return _local_group(vg, v, "semi")


def directed_local_group(vg: VoltageGraph, v: int) -> Subgroup:
    """Net voltages of closed walks based at ``v``; a subgroup of the local group."""
    return _local_group(vg, v, "directed")


def net_set(vg: VoltageGraph, source: int, target: int, mode: str = "semi") -> NetSet:
    """Net voltages over all (semi-)walks from ``source`` to ``target``."""
    _check_mode(mode)
    vg.graph._check_vertex(target)
    states = reachable_states(vg, source, mode)
    elements = tuple(sorted(g for g, u in states if u == target))
    if mode == "semi" and not elements:
        raise NotWeaklyConnected(
            f"no semi-walk from v{source} to v{target}; the graph is not weakly connected"
        )
    return NetSet(source=source, target=target, mode=mode, elements=elements)


def net_set_all(vg: VoltageGraph, source: int) -> tuple[int, ...]:
    """Net voltages over all semi-walks starting at ``source`` (any endpoint)."""
    _require_weak(vg)
    states = reachable_states(vg, source, "semi")
    return tuple(sorted({g for g, _ in states}))


def is_structurally_balanced(vg: VoltageGraph) -> bool:
    """True iff every closed semi-walk has trivial net voltage.

    Equivalent to all local groups being trivial; checked with a single
    breadth-first search: balance holds iff each vertex carries exactly one
    reachable state.
    """
    _require_weak(vg)
    return len(reachable_states(vg, 1, "semi")) == vg.graph.n


def is_nondegenerate(vg: VoltageGraph) -> bool:
    """True iff the net voltages from one (hence any) vertex exhaust the group."""
    return len(net_set_all(vg, 1)) == vg.group.order


def adapted_partition(vg: VoltageGraph) -> tuple[tuple[int, ...], ...]:
    """Vertex classes under "joined by a semi-walk of trivial net voltage".

    Two vertices are equivalent iff they carry identical reachable-state
    fibers from a fixed base vertex, i.e. iff their Net sets from the base
    coincide.  Blocks are sorted by smallest vertex.
    """
    _require_weak(vg)
    states = reachable_states(vg, 1, "semi")
    fibers: dict[int, set[int]] = {v: set() for v in range(1, vg.graph.n + 1)}
    for g, v in states:
        fibers[v].add(g)
    blocks: dict[frozenset[int], list[int]] = {}
    for v in range(1, vg.graph.n + 1):
        blocks.setdefault(frozenset(fibers[v]), []).append(v)
    return tuple(sorted((tuple(sorted(b)) for b in blocks.values()), key=lambda b: b[0]))


@dataclass(frozen=True)
class AnalysisReport:
    """Bundled voltage-graph analysis.

    ``cluster_count`` is the number of blocks of the adapted partition,
    equal to ``|Net(v, V)| / |G_v|`` for every vertex ``v``.
    ``root_condition_holds`` is true when the graph is rooted and the
    directed local group equals the local group at a root.
    """

    local_groups: tuple[Subgroup, ...]
    directed_local_groups: tuple[Subgroup, ...]
    balanced: bool
    nondegenerate: bool
    adapted_partition: tuple[tuple[int, ...], ...]
    cluster_count: int
    root_condition_holds: bool


def analyze(vg: VoltageGraph) -> AnalysisReport:
    """Compute the full analysis report of a weakly connected voltage graph."""
    _require_weak(vg)
    n = vg.graph.n
    locals_ = tuple(local_group(vg, v) for v in range(1, n + 1))
    directed = tuple(directed_local_group(vg, v) for v in range(1, n + 1))
    balanced = is_structurally_balanced(vg)
    if balanced != all(h.is_trivial for h in locals_):
        raise InternalError("balance flag disagrees with the local groups")
    nondegenerate = is_nondegenerate(vg)
    partition = adapted_partition(vg)
    m = len(net_set_all(vg, 1)) // locals_[0].order
    if m != len(partition):
        raise InternalError("coset count disagrees with the adapted partition")
    conn = vg.graph.connectivity
    root_ok = False
    if conn.rooted:
        r = min(conn.roots)
        root_ok = locals_[r - 1] == directed[r - 1]
    return AnalysisReport(
        local_groups=locals_,
        directed_local_groups=directed,
        balanced=balanced,
        nondegenerate=nondegenerate,
        adapted_partition=partition,
        cluster_count=m,
        root_condition_holds=root_ok,
    )


def construct_balanced_nondegenerate(
    graph: Digraph,
    group: FiniteGroup,
    eta: Mapping[int, int] | str = "random",
    *,
    seed: int | None = None,
) -> VoltageGraph:
    """Voltage assignment ``rho(e_ij) = eta(v_i)^-1 . eta(v_j)`` from a
    surjective vertex-to-group map, yielding a structurally balanced and
    nondegenerate voltage graph.  Feasible iff ``|V| >= |G|``.

    ``eta="random"`` draws maps from ``seed`` and rejection-resamples until
    surjective.
    """
    if not graph.connectivity.weak:
        raise NotWeaklyConnected("the construction requires a weakly connected digraph")
    order = group.order
    if graph.n < order:
        raise Infeasible(
            f"no balanced nondegenerate assignment exists: |V| = {graph.n} < |G| = {order}"
        )
    if isinstance(eta, str):
        if eta != "random":
            raise InvalidSpec(f"eta must be a mapping or 'random', got {eta!r}")
        rng = random.Random(seed)
        while True:
            values = [rng.randrange(order) for _ in range(graph.n)]
            if len(set(values)) == order:
                break
        eta_map = {v: values[v - 1] for v in range(1, graph.n + 1)}
    else:
        eta_map = {}
        for v in range(1, graph.n + 1):
            if v not in eta:
                raise InvalidSpec(f"eta is missing vertex {v}")
            value = eta[v]
            if isinstance(value, GroupElement):
                if value.group is not group:
                    raise ForeignElement(f"eta({v}) belongs to a different group")
                value = value.index
            eta_map[v] = group._check_index(value)
        if len(set(eta_map.values())) != order:
            raise NotSurjective("eta does not cover every group element")
    cay, inv = group.cayley, group.inverses
    rho = {(i, j): cay[inv[eta_map[i]]][eta_map[j]] for i, j in graph.edges}
    vg = VoltageGraph(graph, group, rho)
    if not is_structurally_balanced(vg) or not is_nondegenerate(vg):
        raise InternalError("constructed assignment failed its own postcondition")
    return vg


def stirling(n: int, k: int) -> int:
    """Stirling number of the second kind, by the exact alternating sum."""
    if not isinstance(n, int) or not isinstance(k, int) or n < 0 or k < 0:
        raise InvalidSpec(f"stirling needs non-negative integers, got ({n!r}, {k!r})")
    total = sum((-1) ** (k - i) * math.comb(k, i) * i**n for i in range(k + 1))
    q, r = divmod(total, math.factorial(k))
    if r != 0:
        raise InternalError("alternating sum is not divisible by k!")
    return q


def count_balanced_nondegenerate(nv: int, group_order: int) -> int:
    """Number of voltage maps on a weakly connected digraph with ``nv``
    vertices that are balanced and nondegenerate for a group of the given
    order: ``S(nv, |G|) * (|G| - 1)!``."""
    if not isinstance(nv, int) or not isinstance(group_order, int) or group_order < 1:
        raise InvalidSpec("need integer nv and group_order >= 1")
    if nv < group_order:
        raise Infeasible(f"count requires nv >= group order ({nv} < {group_order})")
    return stirling(nv, group_order) * math.factorial(group_order - 1)
