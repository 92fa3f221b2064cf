"""Reading and writing voltage-graph instance files.

An instance file is JSON of the form::

    {
      "group": {"type": "cyclic", "n": 6},
      "vertices": 8,
      "edges": [
        {"from": 1, "to": 2, "voltage": "rot"},
        {"from": 8, "to": 1, "voltage": "rot~", "weight": 2.0}
      ]
    }

Group specs: ``{"type": "sign"}``, ``{"type": "cyclic", "n": 6}``,
``{"type": "dihedral", "n": 6, "v": [1, 0]}``, or
``{"type": "generators", "dimension": 2, "matrices": [[[...]]],
"names": ["rot", "ref"]}``.  Voltage words are whitespace-separated
generator names, each optionally suffixed ``~`` for the inverse; the empty
word is the identity.  Weights default to 1.0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError, VoltClustError
from .graph import Digraph
from .group import FiniteGroup, generate_closure, standard_point_group
from .voltage import VoltageGraph


@dataclass(frozen=True)
class Instance:
    """A parsed instance: voltage graph, edge weights, and the original
    group spec (kept for lossless re-serialization)."""

    voltage_graph: VoltageGraph
    weights: dict[tuple[int, int], float]
    group_spec: dict


def group_from_spec(spec) -> FiniteGroup:
    """Build the finite group described by a JSON group spec."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise ParseError("group spec must be an object with a 'type' field")
    kind = spec["type"]
    try:
        if kind == "sign":
            return standard_point_group("sign")
        if kind == "cyclic":
            return standard_point_group("cyclic", n=_require_int(spec, "n"))
        if kind == "dihedral":
            return standard_point_group(
                "dihedral", n=_require_int(spec, "n"), v=spec.get("v")
            )
        if kind == "generators":
            dimension = _require_int(spec, "dimension")
            matrices = spec.get("matrices")
            if not isinstance(matrices, list):
                raise ParseError("group spec 'matrices' must be a list of matrices")
            names = spec.get("names")
            return generate_closure(matrices, dimension=dimension, names=names)
    except ParseError:
        raise
    except VoltClustError as exc:
        raise ParseError(f"invalid group spec: {exc}") from exc
    raise ParseError(f"unknown group type {kind!r}")


def _require_int(obj: dict, field: str) -> int:
    value = obj.get(field)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"group spec field {field!r} must be an integer, got {value!r}")
    return value


def instance_from_dict(data) -> Instance:
    """Validate and build an :class:`Instance` from parsed JSON data."""
    if not isinstance(data, dict):
        raise ParseError("instance must be a JSON object")
    if "group" not in data:
        raise ParseError("instance is missing the 'group' field")
    group = group_from_spec(data["group"])
    n = data.get("vertices")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"'vertices' must be a positive integer, got {n!r}")
    raw_edges = data.get("edges")
    if not isinstance(raw_edges, list):
        raise ParseError("'edges' must be a list of edge objects")
    edges = []
    rho = {}
    weights = {}
    for pos, entry in enumerate(raw_edges):
        where = f"edges[{pos}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{where}: edge must be an object")
        try:
            i = int(entry["from"])
            j = int(entry["to"])
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"{where}: edge needs integer 'from' and 'to' fields") from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"{where}: edge {i}->{j} has endpoints outside 1..{n}")
        if i == j:
            raise ParseError(f"{where}: self-loop at vertex {i} is not allowed")
        if (i, j) in rho:
            raise ParseError(f"{where}: duplicate edge {i}->{j}")
        word = entry.get("voltage", "")
        if not isinstance(word, str):
            raise ParseError(f"{where}: edge {i}->{j}: 'voltage' must be a string word")
        try:
            rho[(i, j)] = group.parse_word(word)
        except VoltClustError as exc:
            raise ParseError(f"{where}: edge {i}->{j}: bad voltage word {word!r}: {exc}") from exc
        weight = entry.get("weight", 1.0)
        if isinstance(weight, bool) or not isinstance(weight, (int, float)):
            raise ParseError(f"{where}: edge {i}->{j}: 'weight' must be a number")
        weight = float(weight)
        if not math.isfinite(weight) or weight <= 0:
            raise ParseError(f"{where}: edge {i}->{j}: weight must be positive, got {weight}")
        weights[(i, j)] = weight
        edges.append((i, j))
    try:
        digraph = Digraph(n, edges)
        vg = VoltageGraph(digraph, group, rho)
    except VoltClustError as exc:
        raise ParseError(str(exc)) from exc
    return Instance(voltage_graph=vg, weights=weights, group_spec=dict(data["group"]))


def instance_from_text(text: str, source: str = "<string>") -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    try:
        return instance_from_dict(data)
    except ParseError as exc:
        raise ParseError(f"{source}: {exc}") from exc


def load_instance(path) -> Instance:
    """Load an instance from a JSON file path (or any object with
    ``read_text``)."""
    if hasattr(path, "read_text"):
        text = path.read_text()
        name = str(path)
    else:
        p = Path(path)
        try:
            text = p.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {p}: {exc}") from exc
        name = str(p)
    return instance_from_text(text, source=name)


def instance_to_dict(instance: Instance) -> dict:
    """Serialize an instance back to the JSON schema (voltages as words)."""
    vg = instance.voltage_graph
    edges = []
    for i, j in vg.graph.edges:
        entry = {"from": i, "to": j, "voltage": _word_for(vg.group, vg.rho[(i, j)])}
        weight = instance.weights.get((i, j), 1.0)
        if weight != 1.0:
            entry["weight"] = weight
        edges.append(entry)
    return {"group": dict(instance.group_spec), "vertices": vg.graph.n, "edges": edges}


def _word_for(group: FiniteGroup, index: int) -> str:
    word = group.word(index)
    return "" if word == "1" else word


def save_instance(instance: Instance, path) -> None:
    Path(path).write_text(dumps_canonical(instance_to_dict(instance)))


def dumps_canonical(obj) -> str:
    """Deterministic JSON rendering (sorted keys, fixed layout, newline-terminated)."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def graph_from_dict(data) -> tuple[Digraph, dict[tuple[int, int], float]]:
    """Parse a bare digraph file ``{"vertices": n, "edges": [{"from", "to"
    (, "weight")}]}`` used by the construct command."""
    if not isinstance(data, dict):
        raise ParseError("graph must be a JSON object")
    n = data.get("vertices")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"'vertices' must be a positive integer, got {n!r}")
    raw_edges = data.get("edges")
    if not isinstance(raw_edges, list):
        raise ParseError("'edges' must be a list of edge objects")
    edges = []
    weights = {}
    for pos, entry in enumerate(raw_edges):
        where = f"edges[{pos}]"
        if not isinstance(entry, dict) or "from" not in entry or "to" not in entry:
            raise ParseError(f"{where}: edge needs 'from' and 'to' fields")
        i, j = int(entry["from"]), int(entry["to"])
        edges.append((i, j))
        weight = float(entry.get("weight", 1.0))
        if not math.isfinite(weight) or weight <= 0:
            raise ParseError(f"{where}: weight must be positive")
        weights[(i, j)] = weight
    try:
        return Digraph(n, edges), weights
    except VoltClustError as exc:
        raise ParseError(str(exc)) from exc


def eta_from_dict(data, group: FiniteGroup, n: int) -> dict[int, int]:
    """Parse a vertex-to-group map ``{"1": "word", ...}`` for construct."""
    if not isinstance(data, dict):
        raise ParseError("eta must be a JSON object mapping vertices to words")
    eta = {}
    for key, word in data.items():
        try:
            v = int(key)
        except (TypeError, ValueError):
            raise ParseError(f"eta key {key!r} is not a vertex number") from None
        if not 1 <= v <= n:
            raise ParseError(f"eta vertex {v} is outside 1..{n}")
        if not isinstance(word, str):
            raise ParseError(f"eta[{v}] must be a voltage word string")
        try:
            eta[v] = group.parse_word(word)
        except VoltClustError as exc:
            raise ParseError(f"eta[{v}]: bad word {word!r}: {exc}") from exc
    return eta
