"""Derived (covering) graphs of voltage graphs: construction, component
decomposition, inter-component isomorphisms, and the root-connectivity
criterion.

The derived graph lives on states ``[g, v]`` for every group element ``g``
and base vertex ``v``, with an edge ``[g, v_i] -> [g . rho(e_ij), v_j]`` per
base edge; it has ``|G| * |V|`` vertices and ``|G| * |E|`` edges and covers
the base graph (every state inherits the degrees of its base vertex).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalError, InvalidSpec, NotRooted, NotWeaklyConnected
from .graph import Digraph, induced_subgraph, weak_components
from .voltage import VoltageGraph, directed_local_group, local_group

State = tuple[int, int]


@dataclass(frozen=True, eq=False)
class DerivedGraph:
    """The covering graph of a voltage graph, with weak components.

    Derived vertices are states ``(g, v)``; the backing :class:`Digraph`
    labels state ``(g, v)`` as ``g * N + v``.  Components are sorted by
    their lexicographically smallest state.
    """

    base: VoltageGraph
    digraph: Digraph
    components: tuple[tuple[State, ...], ...]

    def state_index(self, g: int, v: int) -> int:
        self.base.group._check_index(g)
        self.base.graph._check_vertex(v)
        return g * self.base.graph.n + v

    def state_of(self, index: int) -> State:
        n = self.base.graph.n
        if not 1 <= index <= self.digraph.n:
            raise InvalidSpec(f"derived vertex {index} is out of range")
        return (index - 1) // n, (index - 1) % n + 1

    @property
    def states(self) -> tuple[State, ...]:
        return tuple(self.state_of(i) for i in range(1, self.digraph.n + 1))

    @property
    def state_edges(self) -> tuple[tuple[State, State], ...]:
        return tuple((self.state_of(i), self.state_of(j)) for i, j in self.digraph.edges)

    @staticmethod
    def projection(state: State) -> int:
        return state[1]

    def component_of(self, state: State) -> int:
        for ci, comp in enumerate(self.components):
            if state in comp:
                return ci
        raise InvalidSpec(f"state {state} is not a derived vertex")


def build_derived(vg: VoltageGraph) -> DerivedGraph:
    """Materialize the derived graph and its weak components."""
    n = vg.graph.n
    order = vg.group.order
    cay = vg.group.cayley

    def idx(g: int, v: int) -> int:
        return g * n + v

    edges = []
    for i, j in vg.graph.edges:
        r = vg.rho[(i, j)]
        for g in range(order):
            edges.append((idx(g, i), idx(cay[g][r], j)))
    digraph = Digraph(order * n, edges)
    if len(digraph.edges) != order * len(vg.graph.edges):
        raise InternalError("derived edge count disagrees with |G| * |E|")
    for g in range(order):
        for v in range(1, n + 1):
            k = idx(g, v)
            if len(digraph.out_neighbors(k)) != len(vg.graph.out_neighbors(v)) or len(
                digraph.in_neighbors(k)
            ) != len(vg.graph.in_neighbors(v)):
                raise InternalError("derived graph does not cover the base degrees")
    components = tuple(
        tuple(((w - 1) // n, (w - 1) % n + 1) for w in comp) for comp in weak_components(digraph)
    )
    if vg.graph.connectivity.weak:
        expected = order // local_group(vg, 1).order
        if len(components) != expected:
            raise InternalError(
                f"derived graph has {len(components)} components, expected {expected}"
            )
    return DerivedGraph(base=vg, digraph=digraph, components=components)


def _component_representative(dg: DerivedGraph, ci: int) -> int:
    """Smallest g with state (g, 1) in component ci."""
    for g, v in dg.components[ci]:
        if v == 1:
            return g
    raise NotWeaklyConnected(
        "component has no state over vertex 1; the base graph is not weakly connected"
    )


def component_isomorphism(dg: DerivedGraph, i: int, j: int) -> dict[State, State]:
    """Graph isomorphism from component ``i`` onto component ``j`` by left
    translation ``[g, v] -> [g_j . g_i^-1 . g, v]`` of component
    representatives over vertex 1.  Verified edge-preserving before return."""
    if not (0 <= i < len(dg.components) and 0 <= j < len(dg.components)):
        raise InvalidSpec("component index out of range")
    group = dg.base.group
    cay, inv = group.cayley, group.inverses
    gi = _component_representative(dg, i)
    gj = _component_representative(dg, j)
    shift = cay[gj][inv[gi]]
    mapping = {(g, v): (cay[shift][g], v) for g, v in dg.components[i]}
    if sorted(mapping.values()) != sorted(dg.components[j]):
        raise InternalError("left translation is not a bijection between the components")
    edge_set = dg.digraph.edge_set
    source = set(dg.components[i])
    for a, b in dg.state_edges:
        if a in source:
            sa, sb = mapping[a], mapping[b]
            if (dg.state_index(*sa), dg.state_index(*sb)) not in edge_set:
                raise InternalError("left translation does not preserve edges")
    return mapping


@dataclass(frozen=True)
class RootConnectivityReport:
    """Two independent evaluations of derived-graph rootedness.

    ``criterion_holds`` tests directed-local-group equality at a base root;
    ``components_rooted`` classifies each derived component directly; the two
    must always agree (``consistent``).
    """

    criterion_holds: bool
    components_rooted: tuple[bool, ...]
    consistent: bool


def root_connectivity_report(dg: DerivedGraph) -> RootConnectivityReport:
    """Evaluate the root-connectivity criterion and cross-check it per component."""
    conn = dg.base.graph.connectivity
    if not conn.rooted:
        raise NotRooted("the base voltage graph is not rooted")
    r = min(conn.roots)
    criterion = local_group(dg.base, r) == directed_local_group(dg.base, r)
    rooted_flags = []
    n = dg.base.graph.n
    for comp in dg.components:
        indices = [g * n + v for g, v in comp]
        sub, _ = induced_subgraph(dg.digraph, indices)
        rooted_flags.append(sub.connectivity.rooted)
    flags = tuple(rooted_flags)
    return RootConnectivityReport(
        criterion_holds=criterion,
        components_rooted=flags,
        consistent=criterion == all(flags),
    )


_DOT_COLORS = (
    "dodgerblue",
    "firebrick",
    "forestgreen",
    "darkorange",
    "purple",
    "goldenrod",
    "teal",
    "deeppink",
    "slategray",
    "saddlebrown",
)


def to_dot(dg: DerivedGraph) -> str:
    """DOT rendering of the derived graph with components colored."""
    color_of = {}
    for ci, comp in enumerate(dg.components):
        for state in comp:
            color_of[state] = _DOT_COLORS[ci % len(_DOT_COLORS)]
    lines = ["digraph derived {", "  node [style=filled, fontname=monospace];"]
    for g, v in dg.states:
        lines.append(f'  "g{g}/v{v}" [fillcolor={color_of[(g, v)]}];')
    for (ga, va), (gb, vb) in dg.state_edges:
        lines.append(f'  "g{ga}/v{va}" -> "g{gb}/v{vb}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
