"""Cluster-consensus dynamics over a voltage graph.

Each agent ``x_i`` in R^k evolves by
``xdot_i = sum over out-edges (i, j) of a_ij * (theta_ij x_j - x_i)``,
a linear flow whose limits align across edges via the edge voltages.
Integration is classical fixed-step RK4; the step guard ``0.5 / max row
weight`` keeps the explicit scheme stable for this Laplacian-like system.
The lifted route integrates the plain consensus system on the derived graph
with ``y[(g, v)](0) = g . x_v(0)`` and reads the base trajectory off the
identity fiber.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .derived import DerivedGraph, build_derived
from .errors import (
    CriterionNotMet,
    Diverged,
    InvalidSpec,
    ShapeError,
    StepTooLarge,
)
from .voltage import (
    VoltageGraph,
    adapted_partition,
    directed_local_group,
    local_group,
    net_set_all,
)


def resolve_weights(vg: VoltageGraph, weights: Mapping | None) -> dict[tuple[int, int], float]:
    """Full positive edge-weight map; missing edges default to 1.0."""
    full = {e: 1.0 for e in vg.graph.edges}
    if weights is None:
        return full
    for edge, value in weights.items():
        e = (int(edge[0]), int(edge[1]))
        if e not in full:
            raise InvalidSpec(f"weight given for non-edge {e}")
        a = float(value)
        if not math.isfinite(a) or a <= 0:
            raise InvalidSpec(f"weight on edge {e} must be a positive real, got {value!r}")
        full[e] = a
    return full


def _as_configuration(vg: VoltageGraph, p) -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    shape = (vg.graph.n, vg.group.dimension)
    if arr.shape != shape:
        raise ShapeError(f"configuration must have shape {shape}, got {arr.shape}")
    return arr


def derivative(vg: VoltageGraph, p, weights: Mapping | None = None) -> np.ndarray:
    """Velocity of a configuration; vertices without out-neighbors are still."""
    w = resolve_weights(vg, weights)
    x = _as_configuration(vg, p)
    out = np.zeros_like(x)
    for i in range(1, vg.graph.n + 1):
        xi = x[i - 1]
        acc = np.zeros(vg.group.dimension)
        for j in vg.graph.out_neighbors(i):
            acc += w[(i, j)] * (vg.group.matrix(vg.rho[(i, j)]) @ x[j - 1] - xi)
        out[i - 1] = acc
    return out


def _system_matrix(vg: VoltageGraph, w: dict[tuple[int, int], float]) -> np.ndarray:
    n, k = vg.graph.n, vg.group.dimension
    a = np.zeros((n * k, n * k))
    eye = np.eye(k)
    for i, j in vg.graph.edges:
        c = w[(i, j)]
        bi, bj = (i - 1) * k, (j - 1) * k
        a[bi : bi + k, bj : bj + k] += c * vg.group.matrix(vg.rho[(i, j)])
        a[bi : bi + k, bi : bi + k] -= c * eye
    return a


def _max_row_weight(vg: VoltageGraph, w: dict[tuple[int, int], float]) -> float:
    sums = [0.0] * (vg.graph.n + 1)
    for (i, _), c in w.items():
        sums[i] += c
    return max(sums)


def _check_step(step: float, max_row: float) -> None:
    if not math.isfinite(step) or step <= 0:
        raise InvalidSpec(f"step must be a positive real, got {step!r}")
    if max_row > 0 and step > 0.5 / max_row:
        raise StepTooLarge(
            f"step {step} violates the stability guard 0.5 / {max_row} = {0.5 / max_row}"
        )


@dataclass(frozen=True)
class Trajectory:
    """Recorded integration output.

    ``states`` has shape ``(T, N, k)``; ``residuals[t]`` is the maximum
    per-agent velocity norm at the recorded time ``times[t]``.
    ``rate_estimate`` is the least-squares slope of the log residual over the
    tail of the record (diagnostic only).
    """

    times: np.ndarray
    states: np.ndarray
    residuals: np.ndarray
    converged: bool
    residual: float
    rate_estimate: float | None

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def _max_row_norm(v: np.ndarray) -> float:
    with np.errstate(over="ignore"):
        # overflow to inf is fine; the caller reports Diverged on non-finite values
        return float(np.sqrt((v * v).sum(axis=1).max()))


def _integrate(f, y0: np.ndarray, step: float, t_max: float, tol: float, record_every: int):
    if not math.isfinite(t_max) or t_max <= 0:
        raise InvalidSpec(f"t_max must be a positive real, got {t_max!r}")
    if not isinstance(record_every, int) or record_every < 1:
        raise InvalidSpec(f"record_every must be a positive integer, got {record_every!r}")
    if tol < 0 or not math.isfinite(tol):
        raise InvalidSpec(f"tol must be a non-negative real, got {tol!r}")
    y = np.array(y0, dtype=float)
    times: list[float] = []
    states: list[np.ndarray] = []
    residuals: list[float] = []
    count = 0
    while True:
        v = f(y)
        resid = _max_row_norm(v)
        if not math.isfinite(resid):
            raise Diverged(f"non-finite velocity at t = {count * step}")
        stop = resid < tol or count * step >= t_max - 1e-12
        if stop or count % record_every == 0:
            times.append(count * step)
            states.append(y.copy())
            residuals.append(resid)
        if stop:
            return np.array(times), np.stack(states), np.array(residuals), resid < tol
        k1 = v
        k2 = f(y + (0.5 * step) * k1)
        k3 = f(y + (0.5 * step) * k2)
        k4 = f(y + step * k3)
        y = y + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise Diverged(f"non-finite state after the step to t = {(count + 1) * step}")
        count += 1


def _rate_estimate(times: np.ndarray, residuals: np.ndarray) -> float | None:
    if len(times) < 5:
        return None
    m = max(2, len(times) // 5)
    t = times[-m:]
    r = residuals[-m:]
    mask = r > 0
    if mask.sum() < 2 or np.ptp(t[mask]) == 0:
        return None
    return float(np.polyfit(t[mask], np.log(r[mask]), 1)[0])


def simulate(
    vg: VoltageGraph,
    p0,
    *,
    weights: Mapping | None = None,
    step: float,
    t_max: float,
    tol: float = 1e-10,
    record_every: int = 1,
) -> Trajectory:
    """Integrate the clustering dynamics until the maximum agent velocity
    drops below ``tol`` or ``t_max`` is reached."""
    w = resolve_weights(vg, weights)
    x0 = _as_configuration(vg, p0)
    _check_step(step, _max_row_weight(vg, w))
    n, k = vg.graph.n, vg.group.dimension
    a = _system_matrix(vg, w)

    def f(y: np.ndarray) -> np.ndarray:
        return (a @ y.reshape(-1)).reshape(n, k)

    times, states, residuals, converged = _integrate(f, x0, step, t_max, tol, record_every)
    return Trajectory(
        times=times,
        states=states,
        residuals=residuals,
        converged=converged,
        residual=float(residuals[-1]),
        rate_estimate=_rate_estimate(times, residuals) if converged else None,
    )


@dataclass(frozen=True)
class LiftedResult:
    """Lifted integration output: the consensus run on the derived graph and
    its projection back onto the base agents (the identity fiber)."""

    derived: DerivedGraph
    lifted: Trajectory
    projected: Trajectory


def simulate_lifted(
    vg: VoltageGraph,
    p0,
    *,
    weights: Mapping | None = None,
    step: float,
    t_max: float,
    tol: float = 1e-10,
    record_every: int = 1,
) -> LiftedResult:
    """Integrate the standard consensus system on the derived graph with
    initial states ``y[(g, v)] = g . x_v(0)`` and project back.

    The projected trajectory matches :func:`simulate` on the same instance
    up to accumulated floating-point noise (well below 1e-9 at desk scale).
    """
    w = resolve_weights(vg, weights)
    x0 = _as_configuration(vg, p0)
    _check_step(step, _max_row_weight(vg, w))
    dg = build_derived(vg)
    n, k = vg.graph.n, vg.group.dimension
    order = vg.group.order
    m = order * n
    lap = np.zeros((m, m))
    cay = vg.group.cayley
    for i, j in vg.graph.edges:
        c = w[(i, j)]
        r = vg.rho[(i, j)]
        for g in range(order):
            u = dg.state_index(g, i) - 1
            t = dg.state_index(cay[g][r], j) - 1
            lap[u, t] += c
            lap[u, u] -= c
    y0 = np.empty((m, k))
    for g in range(order):
        for v in range(1, n + 1):
            y0[dg.state_index(g, v) - 1] = vg.group.matrix(g) @ x0[v - 1]

    def f(y: np.ndarray) -> np.ndarray:
        return lap @ y

    times, states, residuals, converged = _integrate(f, y0, step, t_max, tol, record_every)
    lifted = Trajectory(
        times=times,
        states=states,
        residuals=residuals,
        converged=converged,
        residual=float(residuals[-1]),
        rate_estimate=_rate_estimate(times, residuals) if converged else None,
    )
    sel = np.array([dg.state_index(0, v) - 1 for v in range(1, n + 1)])
    xstates = states[:, sel, :]
    xres = np.array([_max_row_norm((lap @ y)[sel]) for y in states])
    projected = Trajectory(
        times=times,
        states=xstates,
        residuals=xres,
        converged=converged,
        residual=float(xres[-1]),
        rate_estimate=_rate_estimate(times, xres) if converged else None,
    )
    return LiftedResult(derived=dg, lifted=lifted, projected=projected)


@dataclass(frozen=True)
class LimitReport:
    """Limit-configuration diagnostics against the theory's predictions.

    ``clusters`` groups agents whose limit points coincide within the
    clustering tolerance (single linkage); ``partition_relation`` compares
    them with the adapted partition: ``"equal"``, ``"coarser_than"`` when
    blocks merged because limit points coincide, else ``"mismatch"``.
    """

    edge_alignment_error: float
    norm_spread: float
    fixed_point_error: float
    clusters: tuple[tuple[int, ...], ...]
    adapted_partition: tuple[tuple[int, ...], ...]
    partition_relation: str
    matches_adapted_partition: bool


def _proximity_clusters(points: np.ndarray, tol: float) -> tuple[tuple[int, ...], ...]:
    n = len(points)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if float(np.linalg.norm(points[i] - points[j])) < tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i + 1)
    return tuple(sorted((tuple(sorted(g)) for g in groups.values()), key=lambda b: b[0]))


def verify_limit(vg: VoltageGraph, final, cluster_tol: float = 1e-6) -> LimitReport:
    """Check a limit configuration against the predicted edge alignment,
    norm equality, local-group fixed points, and cluster structure."""
    if not math.isfinite(cluster_tol) or cluster_tol <= 0:
        raise InvalidSpec(f"cluster_tol must be a positive real, got {cluster_tol!r}")
    x = _as_configuration(vg, final)
    edge_err = 0.0
    for i, j in vg.graph.edges:
        err = float(np.linalg.norm(x[i - 1] - vg.group.matrix(vg.rho[(i, j)]) @ x[j - 1]))
        edge_err = max(edge_err, err)
    norms = np.linalg.norm(x, axis=1)
    norm_spread = float(norms.max() - norms.min()) if len(norms) else 0.0
    fixed_err = 0.0
    for v in range(1, vg.graph.n + 1):
        for gidx in local_group(vg, v).members:
            err = float(np.linalg.norm(vg.group.matrix(gidx) @ x[v - 1] - x[v - 1]))
            fixed_err = max(fixed_err, err)
    clusters = _proximity_clusters(x, cluster_tol)
    partition = adapted_partition(vg)
    cluster_of = {}
    for ci, c in enumerate(clusters):
        for v in c:
            cluster_of[v] = ci
    split = any(len({cluster_of[v] for v in block}) > 1 for block in partition)
    if split:
        relation = "mismatch"
    elif clusters == partition:
        relation = "equal"
    else:
        relation = "coarser_than"
    return LimitReport(
        edge_alignment_error=edge_err,
        norm_spread=norm_spread,
        fixed_point_error=fixed_err,
        clusters=clusters,
        adapted_partition=partition,
        partition_relation=relation,
        matches_adapted_partition=relation == "equal",
    )


def predicted_cluster_count(vg: VoltageGraph) -> int:
    """Predicted number of clusters ``|Net(v, V)| / |G_v|``.

    Only valid under the convergence criterion: the graph must be rooted
    with equal local and directed local groups at its roots.
    """
    conn = vg.graph.connectivity
    if not conn.rooted:
        raise CriterionNotMet("the graph is not rooted")
    r = min(conn.roots)
    if local_group(vg, r) != directed_local_group(vg, r):
        raise CriterionNotMet("directed local group differs from the local group at the roots")
    g1 = local_group(vg, 1)
    return len(net_set_all(vg, 1)) // g1.order
