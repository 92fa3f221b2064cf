"""Finite matrix groups generated by orthogonal matrices.

A group is stored as an explicit element table: ``matrices[i]`` holds the
orthogonal matrix of element ``i``, element 0 is always the identity, and
products and inverses are integer lookups in a Cayley table.  Matrices are
identified up to floating-point noise by rounding their entries to a fixed
grid (:func:`canonical_key`); this is reliable here because every matrix in
scope is a short product of exact-angle rotations and reflections, whose
accumulated error stays many orders of magnitude below the grid spacing.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ClosureBoundExceeded,
    ForeignElement,
    InternalError,
    InvalidMatrix,
    InvalidSpec,
)

ORTHOGONALITY_TOL = 1e-9
KEY_TOL = 1e-9
DEFAULT_MAX_ORDER = 10_000


def canonical_key(matrix, tol: float = KEY_TOL) -> str:
    """Deterministic string key of ``matrix``, entries rounded to a grid of
    spacing ``tol``.

    Two matrices whose entries sit well inside the same grid cells (in
    particular, sub-tolerance perturbations of the exact point-group
    matrices used here) map to the same key.
    """
    if not isinstance(tol, (int, float)) or tol <= 0 or not math.isfinite(tol):
        raise InvalidSpec(f"tol must be a positive finite number, got {tol!r}")
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2:
        raise InvalidMatrix(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidMatrix("matrix has non-finite entries")
    if np.any(np.abs(m) / tol > 9e18):
        raise InvalidMatrix("matrix entries too large for the tolerance grid")
    cells = np.rint(m / tol).astype(np.int64)
    body = ";".join(",".join(map(str, row)) for row in cells.tolist())
    return f"{m.shape[0]}x{m.shape[1]}:{body}"


def rotation_matrix(n: int) -> np.ndarray:
    """2-d counterclockwise rotation by ``2*pi/n``."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidSpec(f"rotation order must be a positive integer, got {n!r}")
    a = 2.0 * math.pi / n
    return np.array([[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]])


def reflection_matrix(v) -> np.ndarray:
    """2-d reflection across the line spanned by the nonzero vector ``v``."""
    u = np.asarray(v, dtype=float).reshape(-1)
    if u.shape != (2,):
        raise InvalidMatrix(f"reflection axis must be a 2-vector, got {v!r}")
    if not np.all(np.isfinite(u)) or not np.any(u):
        raise InvalidMatrix("reflection axis must be a finite nonzero vector")
    return 2.0 * np.outer(u, u) / float(u @ u) - np.eye(2)


def _orthogonality_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m.T @ m - np.eye(m.shape[0]))))


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element of a :class:`FiniteGroup`, identified by its table index."""

    group: "FiniteGroup"
    index: int

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and other.group is self.group
            and other.index == self.index
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.index))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.multiply(self, other)

    def inverse(self) -> "GroupElement":
        return self.group.inverse(self)

    @property
    def matrix(self) -> np.ndarray:
        return self.group.matrix(self.index)

    @property
    def word(self) -> str:
        return self.group.word(self.index)

    def __repr__(self) -> str:
        return f"GroupElement({self.index}: {self.word!r})"


class FiniteGroup:
    """A finite group of ``k``-by-``k`` orthogonal matrices with full tables.

    Immutable after construction; safe to share across threads.  Use
    :func:`generate_closure` or :func:`standard_point_group` to build one.
    """

    def __init__(
        self,
        dimension: int,
        matrices: Sequence[np.ndarray],
        cayley: Sequence[Sequence[int]],
        inverses: Sequence[int],
        generator_names: Sequence[str] = (),
        generator_indices: Sequence[int] = (),
        words: Sequence[tuple[int, ...]] | None = None,
        key_tol: float = KEY_TOL,
    ):
        order = len(matrices)
        if order < 1:
            raise InvalidSpec("a group needs at least the identity element")
        mats = []
        for m in matrices:
            arr = np.array(m, dtype=float)
            if arr.shape != (dimension, dimension):
                raise InvalidMatrix(f"element matrix has shape {arr.shape}, expected {(dimension, dimension)}")
            if _orthogonality_defect(arr) > ORTHOGONALITY_TOL:
                raise InvalidMatrix("element matrix is not orthogonal within 1e-9")
            arr.setflags(write=False)
            mats.append(arr)
        if not np.allclose(mats[0], np.eye(dimension), atol=ORTHOGONALITY_TOL):
            raise InvalidSpec("element 0 must be the identity")
        self.dimension = dimension
        self.matrices: tuple[np.ndarray, ...] = tuple(mats)
        self.cayley: tuple[tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in cayley)
        self.inverses: tuple[int, ...] = tuple(int(x) for x in inverses)
        if len(self.cayley) != order or any(len(row) != order for row in self.cayley):
            raise InvalidSpec("cayley table shape does not match the element count")
        if any(not 0 <= x < order for row in self.cayley for x in row):
            raise InvalidSpec("cayley table entry out of range")
        if len(self.inverses) != order:
            raise InvalidSpec("inverse table length does not match the element count")
        for a in range(order):
            if self.cayley[0][a] != a or self.cayley[a][0] != a:
                raise InvalidSpec("cayley table is inconsistent with identity at index 0")
            b = self.inverses[a]
            if not 0 <= b < order or self.cayley[a][b] != 0 or self.cayley[b][a] != 0:
                raise InvalidSpec("inverse table is inconsistent with the cayley table")
        self.generator_names: tuple[str, ...] = tuple(generator_names)
        self.generator_indices: tuple[int, ...] = tuple(int(i) for i in generator_indices)
        if len(self.generator_names) != len(self.generator_indices):
            raise InvalidSpec("generator names and indices must align")
        self._name_to_generator = dict(zip(self.generator_names, self.generator_indices))
        if len(self._name_to_generator) != len(self.generator_names):
            raise InvalidSpec("generator names must be unique")
        self._words: tuple[tuple[int, ...], ...] = tuple(words) if words is not None else tuple(
            () for _ in range(order)
        )
        if len(self._words) != order:
            raise InvalidSpec("word table length does not match the element count")
        self.key_tol = key_tol
        self._index_by_key = {canonical_key(m, key_tol): i for i, m in enumerate(self.matrices)}

    # -- basic queries ----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.matrices)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, dimension={self.dimension})"

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, 0)

    def element(self, index: int) -> GroupElement:
        return GroupElement(self, self._check_index(index))

    def elements(self) -> tuple[GroupElement, ...]:
        return tuple(GroupElement(self, i) for i in range(self.order))

    def matrix(self, index: int) -> np.ndarray:
        return self.matrices[self._check_index(index)]

    def _check_index(self, index: int) -> int:
        try:
            index = operator.index(index)
        except TypeError:
            raise ForeignElement(f"element index {index!r} is not an integer") from None
        if not 0 <= index < self.order:
            raise ForeignElement(f"element index {index} is not in 0..{self.order - 1}")
        return index

    def _index_of(self, g) -> int:
        if isinstance(g, GroupElement):
            if g.group is not self:
                raise ForeignElement("element belongs to a different group")
            return self._check_index(g.index)
        return self._check_index(g)

    # -- arithmetic --------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.cayley[self._check_index(a)][self._check_index(b)]

    def inv(self, a: int) -> int:
        return self.inverses[self._check_index(a)]

    def multiply(self, g, h) -> GroupElement:
        return GroupElement(self, self.cayley[self._index_of(g)][self._index_of(h)])

    def inverse(self, g) -> GroupElement:
        return GroupElement(self, self.inverses[self._index_of(g)])

    def find(self, matrix) -> GroupElement:
        """Element whose matrix matches ``matrix`` up to the key tolerance."""
        key = canonical_key(matrix, self.key_tol)
        idx = self._index_by_key.get(key)
        if idx is None:
            raise ForeignElement("no group element has this matrix")
        return GroupElement(self, idx)

    # -- words ---------------------------------------------------------------

    def word(self, index: int) -> str:
        """Shortest generator word found for the element; ``"1"`` for identity."""
        w = self._words[self._check_index(index)]
        if not w:
            return "1"
        return " ".join(self.generator_names[g] for g in w)

    def parse_word(self, word: str) -> int:
        """Resolve a whitespace-separated generator word to an element index.

        A ``~`` suffix inverts the named generator; the empty word and the
        literal ``1`` are the identity.
        """
        idx = 0
        for token in word.split():
            if token == "1":
                continue
            name, invert = (token[:-1], True) if token.endswith("~") else (token, False)
            gen = self._name_to_generator.get(name)
            if gen is None:
                raise InvalidSpec(f"unknown generator name {name!r}")
            step = self.inverses[gen] if invert else gen
            idx = self.cayley[idx][step]
        return idx

    # -- subgroups and cosets -----------------------------------------------

    def subgroup_generated(self, generators: Iterable) -> "Subgroup":
        """Smallest subgroup containing ``generators`` (and the identity)."""
        gens = sorted({self._index_of(g) for g in generators})
        members = {0}
        queue = [0]
        while queue:
            a = queue.pop()
            row = self.cayley[a]
            for s in gens:
                b = row[s]
                if b not in members:
                    members.add(b)
                    queue.append(b)
        return Subgroup(self, tuple(sorted(members)))

    def cosets(self, subgroup: "Subgroup", side: str = "left") -> tuple[tuple[int, ...], ...]:
        """Partition of the element set into left- or right-cosets of ``subgroup``,
        sorted by smallest member."""
        if side not in ("left", "right"):
            raise InvalidSpec(f"side must be 'left' or 'right', got {side!r}")
        if subgroup.parent is not self:
            raise ForeignElement("subgroup belongs to a different group")
        assigned: set[int] = set()
        out = []
        for rep in range(self.order):
            if rep in assigned:
                continue
            if side == "left":
                coset = sorted(self.cayley[rep][h] for h in subgroup.members)
            else:
                coset = sorted(self.cayley[h][rep] for h in subgroup.members)
            assigned.update(coset)
            out.append(tuple(coset))
        return tuple(out)

    def conjugate_subgroup(self, subgroup: "Subgroup", g) -> "Subgroup":
        """The subgroup ``g^-1 . H . g``."""
        if subgroup.parent is not self:
            raise ForeignElement("subgroup belongs to a different group")
        gi = self._index_of(g)
        ginv = self.inverses[gi]
        members = sorted(self.cayley[self.cayley[ginv][h]][gi] for h in subgroup.members)
        return Subgroup(self, tuple(members))


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of a parent :class:`FiniteGroup`, as sorted member indices."""

    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted({self.parent._check_index(i) for i in self.members}))
        object.__setattr__(self, "members", members)
        if 0 not in members:
            raise InvalidSpec("a subgroup must contain the identity")
        member_set = set(members)
        cay, inv = self.parent.cayley, self.parent.inverses
        for a in members:
            if inv[a] not in member_set:
                raise InvalidSpec("member set is not closed under inversion")
            row = cay[a]
            for b in members:
                if row[b] not in member_set:
                    raise InvalidSpec("member set is not closed under multiplication")
        if self.parent.order % len(members) != 0:
            raise InternalError("subgroup order does not divide the group order")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.members == self.members
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __contains__(self, g) -> bool:
        try:
            return self.parent._index_of(g) in set(self.members)
        except ForeignElement:
            return False

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def elements(self) -> tuple[GroupElement, ...]:
        return tuple(GroupElement(self.parent, i) for i in self.members)

    def words(self) -> tuple[str, ...]:
        return tuple(self.parent.word(i) for i in self.members)

    def __repr__(self) -> str:
        return f"Subgroup({{{', '.join(self.words())}}})"


def generate_closure(
    generators: Sequence,
    max_order: int = DEFAULT_MAX_ORDER,
    *,
    dimension: int | None = None,
    names: Sequence[str] | None = None,
    key_tol: float = KEY_TOL,
) -> FiniteGroup:
    """Close a set of orthogonal generator matrices into a :class:`FiniteGroup`.

    Elements are discovered breadth first over right-products with the
    generators (in input order), so indices are deterministic: 0 is the
    identity and the rest follow discovery order.  Raises
    :class:`ClosureBoundExceeded` once more than ``max_order`` elements are
    found, which signals an infinite (e.g. irrational-angle) generated group.
    """
    if not isinstance(max_order, int) or max_order < 1:
        raise InvalidSpec(f"max_order must be a positive integer, got {max_order!r}")
    gens = [np.asarray(g, dtype=float) for g in generators]
    for g in gens:
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise InvalidMatrix(f"generator must be square, got shape {g.shape}")
        if not np.all(np.isfinite(g)):
            raise InvalidMatrix("generator has non-finite entries")
        if _orthogonality_defect(g) > ORTHOGONALITY_TOL:
            raise InvalidMatrix("generator is not orthogonal within 1e-9")
    if gens:
        k = gens[0].shape[0]
        if any(g.shape[0] != k for g in gens):
            raise InvalidMatrix("generators have mixed dimensions")
        if dimension is not None and dimension != k:
            raise InvalidSpec(f"dimension {dimension} does not match generator shape {k}")
    else:
        if dimension is None:
            raise InvalidSpec("dimension is required when there are no generators")
        k = dimension
    if names is None:
        names = tuple(f"g{i + 1}" for i in range(len(gens)))
    else:
        names = tuple(names)
        if len(names) != len(gens):
            raise InvalidSpec("one name per generator is required")
        for name in names:
            if not name or name != name.strip() or "~" in name or any(c.isspace() for c in name):
                raise InvalidSpec(f"invalid generator name {name!r}")

    identity = np.eye(k)
    matrices: list[np.ndarray] = [identity]
    words: list[tuple[int, ...]] = [()]
    index_by_key = {canonical_key(identity, key_tol): 0}
    cursor = 0
    while cursor < len(matrices):
        base = matrices[cursor]
        for gi, gmat in enumerate(gens):
            prod = base @ gmat
            key = canonical_key(prod, key_tol)
            if key not in index_by_key:
                if len(matrices) >= max_order:
                    raise ClosureBoundExceeded(
                        f"closure exceeded max_order={max_order}; the generated group "
                        "is infinite or larger than allowed"
                    )
                index_by_key[key] = len(matrices)
                matrices.append(prod)
                words.append(words[cursor] + (gi,))
        cursor += 1

    order = len(matrices)
    cayley = [[0] * order for _ in range(order)]
    for a in range(order):
        for b in range(order):
            key = canonical_key(matrices[a] @ matrices[b], key_tol)
            idx = index_by_key.get(key)
            if idx is None:
                raise InternalError("closure is not closed under multiplication")
            cayley[a][b] = idx
    inverses = [0] * order
    for a in range(order):
        inverses[a] = cayley[a].index(0)

    generator_indices = [index_by_key[canonical_key(g, key_tol)] for g in gens]
    return FiniteGroup(
        dimension=k,
        matrices=matrices,
        cayley=cayley,
        inverses=inverses,
        generator_names=names,
        generator_indices=generator_indices,
        words=words,
        key_tol=key_tol,
    )


def standard_point_group(kind: str, n: int | None = None, v=None) -> FiniteGroup:
    """Build one of the named point groups.

    ``"sign"``        -> {1, -1} in dimension 1 (generator name ``neg``).
    ``"cyclic"``      -> rotations by multiples of ``2*pi/n`` (generator ``rot``).
    ``"dihedral"``    -> rotations plus the reflection across ``v`` (``rot``, ``ref``).
    """
    if kind == "sign":
        return generate_closure([np.array([[-1.0]])], names=("neg",), dimension=1)
    if kind == "cyclic":
        if n is None:
            raise InvalidSpec("cyclic groups need the order n")
        return generate_closure([rotation_matrix(n)], names=("rot",))
    if kind == "dihedral":
        if n is None:
            raise InvalidSpec("dihedral groups need the rotation order n")
        if v is None:
            raise InvalidSpec("dihedral groups need the reflection axis v")
        return generate_closure(
            [rotation_matrix(n), reflection_matrix(v)], names=("rot", "ref")
        )
    raise InvalidSpec(f"unknown point-group kind {kind!r}")
