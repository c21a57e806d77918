"""Finite rotation groups with explicit composition tables.

Elements are canonical indices ``0 .. n-1`` with ``0`` the identity, so
tables and pdfs over a group serialize as plain integer arrays.  Every
supported kind (cyclic, dihedral, tetrahedral, octahedral, icosahedral)
is realized as a subgroup of the 3D rotation group, and the composition
table is derived from the matrix products themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .rigid import rotation_about_axis

_KIND_ORDERS = {"tetrahedral": 12, "octahedral": 24, "icosahedral": 60}
_MATCH_TOL = 1e-8
_ASSOC_CHECK_MAX = 60


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group given by its composition table (and a rotation representation).

    ``table[i, j]`` is the index of ``g_i * g_j``.  Construction verifies
    closure, identity at index 0, inverses, associativity (exhaustively up
    to order 60), and consistency of the matrix representation with the
    table.
    """

    name: str
    table: np.ndarray
    matrices: np.ndarray | None = None
    inverses: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        table = np.array(self.table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError("composition table must be square")
        n = table.shape[0]
        if n == 0:
            raise ValueError("group must have at least the identity")
        if table.min() < 0 or table.max() >= n:
            raise ValueError("closure violated: table entry outside 0..n-1")
        ids = np.arange(n)
        if not (table[0] == ids).all() or not (table[:, 0] == ids).all():
            raise ValueError("element 0 is not an identity")
        inverses = np.full(n, -1, dtype=np.int64)
        for g in range(n):
            hs = np.where(table[g] == 0)[0]
            if len(hs) != 1 or table[hs[0], g] != 0:
                raise ValueError(f"element {g} has no two-sided inverse")
            inverses[g] = hs[0]
        if n <= _ASSOC_CHECK_MAX:
            if not (table[table] == table[:, table]).all():
                raise ValueError("associativity violated")
        table.setflags(write=False)
        inverses.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "inverses", inverses)
        if self.matrices is not None:
            mats = np.array(self.matrices, dtype=float)
            if mats.shape != (n, 3, 3):
                raise ValueError(f"matrix representation must be ({n}, 3, 3)")
            eye = np.eye(3)
            for i, m in enumerate(mats):
                if np.max(np.abs(m @ m.T - eye)) > 1e-10 or abs(np.linalg.det(m) - 1) > 1e-10:
                    raise ValueError(f"element {i} matrix is not a proper rotation")
            prod = np.einsum("iab,jbc->ijac", mats, mats)
            if np.max(np.abs(prod - mats[table])) > _MATCH_TOL:
                raise ValueError("matrix products disagree with the composition table")
            mats.setflags(write=False)
            object.__setattr__(self, "matrices", mats)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return int(self.inverses[i])

    def element_order(self, i: int) -> int:
        k, o = i, 1
        while k != 0:
            k = int(self.table[k, i])
            o += 1
        return o


def _closure(generators: list[np.ndarray], bound: int) -> np.ndarray:
    mats = [np.eye(3)]
    frontier = [np.eye(3)]
    while frontier:
        fresh = []
        for m in frontier:
            for g in generators:
                p = m @ g
                if not any(np.max(np.abs(p - q)) < _MATCH_TOL for q in mats):
                    mats.append(p)
                    fresh.append(p)
                    if len(mats) > bound:
                        raise RuntimeError("group closure exceeded expected order")
        frontier = fresh
    return np.stack(mats)


def _table_from_matrices(mats: np.ndarray) -> np.ndarray:
    n = mats.shape[0]
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        prod = mats[i] @ mats
        diff = np.abs(prod[:, None, :, :] - mats[None, :, :, :]).max(axis=(2, 3))
        idx = diff.argmin(axis=1)
        if diff[np.arange(n), idx].max() > _MATCH_TOL:
            raise RuntimeError("matrix product did not match any group element")
        table[i] = idx
    return table


def construct_finite_group(kind: str, n: int | None = None) -> FiniteGroup:
    """Build a finite rotation group.

    ``kind`` is one of ``cyclic``, ``dihedral`` (order parameter ``n``
    required, n >= 1) or ``tetrahedral``, ``octahedral``, ``icosahedral``
    (``n`` ignored).  Cyclic groups rotate about the z-axis; dihedral
    groups add the n two-fold axes in the xy-plane so that every kind
    embeds in the 3D rotation group.
    """
    kind = kind.lower()
    if kind == "cyclic":
        if n is None or n < 1:
            raise ValueError("cyclic group needs an order parameter n >= 1")
        mats = np.stack([rotation_about_axis((0, 0, 1), 2 * math.pi * k / n) for k in range(n)])
        table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
        return FiniteGroup(f"C{n}", table, mats)
    if kind == "dihedral":
        if n is None or n < 1:
            raise ValueError("dihedral group needs an order parameter n >= 1")
        rots = [rotation_about_axis((0, 0, 1), 2 * math.pi * k / n) for k in range(n)]
        flips = [
            rotation_about_axis((math.cos(math.pi * k / n), math.sin(math.pi * k / n), 0), math.pi)
            for k in range(n)
        ]
        mats = np.stack(rots + flips)
        return FiniteGroup(f"D{n}", _table_from_matrices(mats), mats)
    if kind in _KIND_ORDERS:
        phi = (1 + math.sqrt(5)) / 2
        generators = {
            "tetrahedral": [
                rotation_about_axis((0, 0, 1), math.pi),
                rotation_about_axis((1, 1, 1), 2 * math.pi / 3),
            ],
            "octahedral": [
                rotation_about_axis((0, 0, 1), math.pi / 2),
                rotation_about_axis((1, 0, 0), math.pi / 2),
            ],
            "icosahedral": [
                rotation_about_axis((0, 1, phi), 2 * math.pi / 5),
                rotation_about_axis((0, 0, 1), math.pi),
            ],
        }[kind]
        expected = _KIND_ORDERS[kind]
        mats = _closure(generators, expected)
        if mats.shape[0] != expected:
            raise RuntimeError(f"{kind} closure produced {mats.shape[0]} elements, expected {expected}")
        return FiniteGroup(kind[0].upper() + kind[1:], _table_from_matrices(mats), mats)
    raise ValueError(f"unknown group kind: {kind!r}")


def check_subgroup(group: FiniteGroup, ids) -> np.ndarray:
    """Validate that ``ids`` is a subgroup; return the sorted id array."""
    ids = np.unique(np.asarray(ids, dtype=np.int64))
    if len(ids) == 0:
        raise ValueError("subgroup cannot be empty")
    if ids.min() < 0 or ids.max() >= group.order:
        raise ValueError("subgroup ids outside the group")
    member = np.zeros(group.order, dtype=bool)
    member[ids] = True
    if not member[0]:
        raise ValueError("subgroup does not contain the identity")
    for a in ids:
        for b in ids:
            if not member[group.table[a, b]]:
                raise ValueError(f"subgroup not closed: pair ({a}, {b}) leaves the set")
    for a in ids:
        if not member[group.inverses[a]]:
            raise ValueError(f"subgroup not closed under inversion: element {a}")
    return ids


def subgroup_generated(group: FiniteGroup, generators) -> np.ndarray:
    """Sorted element ids of the subgroup generated by the given elements."""
    todo = list(dict.fromkeys(int(g) for g in generators))
    seen = {0}
    frontier = [0]
    while frontier:
        fresh = []
        for a in frontier:
            for g in todo:
                b = group.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    fresh.append(b)
        frontier = fresh
    return np.array(sorted(seen), dtype=np.int64)


def cyclic_subgroup(group: FiniteGroup, generator: int) -> np.ndarray:
    return subgroup_generated(group, [generator])


def find_cyclic_subgroup(group: FiniteGroup, order: int, within=None) -> np.ndarray:
    """First cyclic subgroup of the given order, scanning element ids upward.

    If ``within`` is given, only generators inside that id set are
    considered, so e.g. an order-2 subgroup nested in a chosen C4 can be
    requested deterministically.
    """
    pool = range(group.order) if within is None else [int(i) for i in np.asarray(within)]
    for i in pool:
        if group.element_order(i) == order:
            return cyclic_subgroup(group, i)
    raise ValueError(f"no element of order {order} in {group.name}")


def subgroup_as_group(group: FiniteGroup, ids) -> tuple[FiniteGroup, dict[int, int]]:
    """Restrict the group to a subgroup, renumbering elements from 0.

    Returns the subgroup as its own FiniteGroup plus the map from old ids
    to new ids.  Ordering: identity first, then ascending old id.
    """
    ids = check_subgroup(group, ids)
    ordered = [0] + [int(i) for i in ids if i != 0]
    remap = {old: new for new, old in enumerate(ordered)}
    k = len(ordered)
    table = np.empty((k, k), dtype=np.int64)
    for a_new, a_old in enumerate(ordered):
        for b_new, b_old in enumerate(ordered):
            table[a_new, b_new] = remap[group.mul(a_old, b_old)]
    mats = group.matrices[ordered] if group.matrices is not None else None
    return FiniteGroup(f"{group.name}|sub{k}", table, mats), remap


def group_to_json(group: FiniteGroup) -> dict:
    out = {
        "name": group.name,
        "order": group.order,
        "table": [int(v) for v in group.table.reshape(-1)],
    }
    if group.matrices is not None:
        out["matrices"] = group.matrices.tolist()
    return out


def group_from_json(data: dict) -> FiniteGroup:
    n = int(data["order"])
    table = np.array(data["table"], dtype=np.int64).reshape(n, n)
    mats = np.array(data["matrices"], dtype=float) if "matrices" in data else None
    return FiniteGroup(str(data.get("name", f"G{n}")), table, mats)
