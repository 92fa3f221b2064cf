"""Simple digraphs: storage, connectivity classification, induced subgraphs,
and cycle reduction of closed semi-walks.

Vertices are the integers ``1..n``.  A walk records one direction flag per
step because an unordered pair may carry edges both ways.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import EmptySubset, InvalidSpec, InvalidWalk, NotClosed

FORWARD = 1
BACKWARD = -1


@dataclass(frozen=True)
class Digraph:
    """A simple digraph on vertices ``1..n`` (no self-loops, no multi-edges)."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InvalidSpec(f"vertex count must be a positive integer, got {n!r}")
        normalized = []
        seen = set()
        for e in edges:
            i, j = e
            i, j = int(i), int(j)
            if not (1 <= i <= n and 1 <= j <= n):
                raise InvalidSpec(f"edge ({i}, {j}) has endpoints outside 1..{n}")
            if i == j:
                raise InvalidSpec(f"self-loop at vertex {i} is not allowed")
            if (i, j) in seen:
                raise InvalidSpec(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            normalized.append((i, j))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def _out(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.n + 1)]
        for i, j in self.edges:
            adj[i].append(j)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def _in(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.n + 1)]
        for i, j in self.edges:
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    def _check_vertex(self, v: int) -> int:
        if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= self.n:
            raise InvalidSpec(f"vertex {v!r} is not in 1..{self.n}")
        return v

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[self._check_vertex(v)]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[self._check_vertex(v)]

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edge_set

    def is_valid_walk(self, walk: "Walk") -> bool:
        """Whether every step of ``walk`` uses an edge of this graph in the
        recorded direction."""
        if any(not 1 <= v <= self.n for v in walk.vertices):
            return False
        for u, v, d in walk.steps():
            edge = (u, v) if d == FORWARD else (v, u)
            if edge not in self.edge_set:
                return False
        return True

    @cached_property
    def connectivity(self) -> "ConnectivityReport":
        return classify_connectivity(self)


@dataclass(frozen=True)
class Walk:
    """A semi-walk: a vertex sequence plus a per-step direction flag.

    Step ``j`` goes from ``vertices[j]`` to ``vertices[j+1]``; ``FORWARD``
    means the edge is traversed along its orientation, ``BACKWARD`` against
    it.  A walk proper has every flag ``FORWARD``.
    """

    vertices: tuple[int, ...]
    directions: tuple[int, ...]

    def __init__(self, vertices: Iterable[int], directions: Iterable[int]):
        vs = tuple(int(v) for v in vertices)
        ds = tuple(int(d) for d in directions)
        if len(vs) < 1:
            raise InvalidSpec("a walk needs at least one vertex")
        if len(ds) != len(vs) - 1:
            raise InvalidSpec("need exactly one direction per step")
        if any(d not in (FORWARD, BACKWARD) for d in ds):
            raise InvalidSpec("directions must be FORWARD (1) or BACKWARD (-1)")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "directions", ds)

    @staticmethod
    def trivial(v: int) -> "Walk":
        return Walk((v,), ())

    @property
    def length(self) -> int:
        return len(self.directions)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def is_closed(self) -> bool:
        return self.start == self.end

    @property
    def is_walk(self) -> bool:
        return all(d == FORWARD for d in self.directions)

    @property
    def is_semi_cycle(self) -> bool:
        """Closed, with no vertex repetition besides start == end."""
        if not self.is_closed:
            return False
        interior = self.vertices[:-1] if self.length > 0 else self.vertices
        return len(set(interior)) == len(interior)

    def forward_count(self) -> int:
        return sum(1 for d in self.directions if d == FORWARD)

    def backward_count(self) -> int:
        return sum(1 for d in self.directions if d == BACKWARD)

    def steps(self) -> Iterator[tuple[int, int, int]]:
        for j, d in enumerate(self.directions):
            yield self.vertices[j], self.vertices[j + 1], d

    def concat(self, other: "Walk") -> "Walk":
        if self.end != other.start:
            raise InvalidWalk("concatenation requires matching end/start vertices")
        return Walk(self.vertices + other.vertices[1:], self.directions + other.directions)

    def inverse(self) -> "Walk":
        return Walk(self.vertices[::-1], tuple(-d for d in self.directions[::-1]))

    def __repr__(self) -> str:
        if self.length == 0:
            return f"Walk({self.vertices[0]})"
        arrows = {FORWARD: "->", BACKWARD: "<-"}
        parts = [str(self.vertices[0])]
        for u, v, d in self.steps():
            parts.append(f"{arrows[d]}{v}")
        return f"Walk({''.join(parts)})"


def infer_walk(g: Digraph, vertices: Iterable[int]) -> Walk:
    """Build a semi-walk through ``vertices``, preferring forward steps when a
    pair supports both directions."""
    vs = [int(v) for v in vertices]
    dirs = []
    for u, v in zip(vs, vs[1:]):
        if g.has_edge(u, v):
            dirs.append(FORWARD)
        elif g.has_edge(v, u):
            dirs.append(BACKWARD)
        else:
            raise InvalidWalk(f"no edge between {u} and {v} in either direction")
    return Walk(vs, dirs)


@dataclass(frozen=True)
class ConnectivityReport:
    """Connectivity classification of a digraph.

    ``scc`` lists the strongly connected components sorted by smallest
    vertex; ``condensation`` holds the DAG edges between component indices.
    A digraph is rooted iff the condensation has exactly one sink component,
    whose vertices are then the roots.
    """

    weak: bool
    strong: bool
    rooted: bool
    roots: tuple[int, ...]
    scc: tuple[tuple[int, ...], ...]
    condensation: tuple[tuple[int, int], ...]


def _tarjan_scc(g: Digraph) -> list[list[int]]:
    # Iterative Tarjan; recursion would overflow on long derived-graph chains.
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for start in range(1, g.n + 1):
        if start in index:
            continue
        work = [(start, iter(g.out_neighbors(start)))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.out_neighbors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(sorted(comp))
    return sccs


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n + 1))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def weak_components(g: Digraph) -> tuple[tuple[int, ...], ...]:
    """Weakly connected components, sorted by smallest vertex."""
    uf = _UnionFind(g.n)
    for i, j in g.edges:
        uf.union(i, j)
    groups: dict[int, list[int]] = defaultdict(list)
    for v in range(1, g.n + 1):
        groups[uf.find(v)].append(v)
    return tuple(tuple(sorted(vs)) for _, vs in sorted(groups.items()))


def classify_connectivity(g: Digraph) -> ConnectivityReport:
    """Weak/strong/rooted classification with SCCs and condensation DAG."""
    sccs = sorted(_tarjan_scc(g), key=lambda c: c[0])
    comp_of = {}
    for ci, comp in enumerate(sccs):
        for v in comp:
            comp_of[v] = ci
    cond_edges = set()
    for i, j in g.edges:
        a, b = comp_of[i], comp_of[j]
        if a != b:
            cond_edges.add((a, b))
    out_deg = [0] * len(sccs)
    for a, _ in cond_edges:
        out_deg[a] += 1
    sinks = [ci for ci, d in enumerate(out_deg) if d == 0]
    rooted = len(sinks) == 1
    roots = tuple(sccs[sinks[0]]) if rooted else ()
    weak = len(weak_components(g)) == 1
    return ConnectivityReport(
        weak=weak,
        strong=len(sccs) == 1,
        rooted=rooted,
        roots=roots,
        scc=tuple(tuple(c) for c in sccs),
        condensation=tuple(sorted(cond_edges)),
    )


def induced_subgraph(g: Digraph, vertices: Iterable[int]) -> tuple[Digraph, dict[int, int]]:
    """Subgraph induced by ``vertices`` plus the old-to-new relabeling map.

    Kept vertices are relabeled ``1..m`` in increasing order of old label.
    """
    vs = sorted({int(v) for v in vertices})
    if not vs:
        raise EmptySubset("cannot induce a subgraph on an empty vertex set")
    for v in vs:
        if not 1 <= v <= g.n:
            raise InvalidSpec(f"vertex {v} is not in 1..{g.n}")
    relabel = {old: new for new, old in enumerate(vs, start=1)}
    keep = set(vs)
    edges = [(relabel[i], relabel[j]) for i, j in g.edges if i in keep and j in keep]
    return Digraph(len(vs), edges), relabel


def _first_repetition(w: Walk) -> tuple[int, int] | None:
    """First position pair (j, m), j < m, with ``vertices[j] == vertices[m]``,
    scanning m left to right and skipping the trivial closure pair (0, last).

    Because m is the first repetition endpoint, positions ``0..m-1`` hold
    pairwise distinct vertices, so the segment ``j..m`` is a semi-cycle.
    """
    verts = w.vertices
    last = len(verts) - 1
    seen: dict[int, int] = {verts[0]: 0}
    for m in range(1, len(verts)):
        v = verts[m]
        if v in seen:
            j = seen[v]
            if not (j == 0 and m == last):
                return j, m
        else:
            seen[v] = m
    return None


def cycle_reduction_chain(w: Walk) -> list[tuple[Walk, Walk]]:
    """Chain of cycle reductions of a closed semi-walk.

    Each entry is ``(removed semi-cycle, remaining closed semi-walk)``;
    lengths strictly decrease and the final remaining walk is a semi-cycle.
    Already-semi-cycle input yields an empty chain.
    """
    if not w.is_closed:
        raise NotClosed("cycle reduction needs a closed semi-walk")
    chain: list[tuple[Walk, Walk]] = []
    current = w
    while True:
        rep = _first_repetition(current)
        if rep is None:
            return chain
        j, m = rep
        removed = Walk(current.vertices[j : m + 1], current.directions[j:m])
        remaining = Walk(
            current.vertices[: j + 1] + current.vertices[m + 1 :],
            current.directions[:j] + current.directions[m:],
        )
        chain.append((removed, remaining))
        current = remaining
