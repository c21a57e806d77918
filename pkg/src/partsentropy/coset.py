"""Coset and double-coset decompositions and the entropy subadditivity bounds.

A pdf on a finite group splits into a marginal over a (double) coset
space and marginals over the subgroup factors, and the group entropy is
bounded by the sum of the marginal entropies.  For double cosets the
map (k, coset, h) -> k*c*h overcounts each element of the coset KcH by
the fiber size |K||H|/|KcH|, so the coset-space marginal must be read
as a density against that weight; with the weight in place the bound
holds with equality at the uniform pdf.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy.pdfs import DiscretePdf, GridPdf, shannon_entropy, zfun
from .entropy.quadrature import ProductGrid
from .groups.finite import FiniteGroup, check_subgroup, subgroup_as_group


@dataclass(frozen=True)
class CosetDecomposition:
    """Partition of a group into left cosets gH or right cosets Hg.

    Representatives are the minimal element id in each coset; together
    they form a fundamental domain for the coset space.
    """

    group: FiniteGroup
    subgroup: tuple[int, ...]
    side: str
    cosets: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    """Partition of a group into double cosets K g H (sizes may differ)."""

    group: FiniteGroup
    left_subgroup: tuple[int, ...]
    right_subgroup: tuple[int, ...]
    cosets: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]


def coset_partition(group: FiniteGroup, subgroup_ids, side: str = "left") -> CosetDecomposition:
    """Decompose the group into cosets of a verified subgroup."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    h = check_subgroup(group, subgroup_ids)
    n = group.order
    assigned = np.full(n, -1, dtype=np.int64)
    cosets: list[tuple[int, ...]] = []
    reps: list[int] = []
    for g in range(n):
        if assigned[g] >= 0:
            continue
        members = group.table[g, h] if side == "left" else group.table[h, g]
        members = np.sort(members)
        assigned[members] = len(cosets)
        reps.append(g)  # g is minimal in its coset: smaller members were already assigned
        cosets.append(tuple(int(m) for m in members))
    if len(cosets) * len(h) != n:
        raise RuntimeError("cosets do not partition the group")  # unreachable for true subgroups
    return CosetDecomposition(group, tuple(int(i) for i in h), side, tuple(cosets), tuple(reps))


def double_coset_partition(group: FiniteGroup, left_ids, right_ids) -> DoubleCosetDecomposition:
    """Decompose the group into orbits K g H of two verified subgroups."""
    k = check_subgroup(group, left_ids)
    h = check_subgroup(group, right_ids)
    n = group.order
    assigned = np.full(n, -1, dtype=np.int64)
    cosets: list[tuple[int, ...]] = []
    reps: list[int] = []
    for g in range(n):
        if assigned[g] >= 0:
            continue
        kg = group.table[k, g]
        members = np.unique(group.table[kg][:, h])
        assigned[members] = len(cosets)
        reps.append(g)
        cosets.append(tuple(int(m) for m in members))
    return DoubleCosetDecomposition(
        group, tuple(int(i) for i in k), tuple(int(i) for i in h), tuple(cosets), tuple(reps)
    )


@dataclass(frozen=True)
class CosetMarginals:
    """Marginal pdfs of a group pdf: over the coset space and over the subgroup."""

    coset_pdf: DiscretePdf
    subgroup_pdf: DiscretePdf


def marginals(f: DiscretePdf, dec: CosetDecomposition) -> CosetMarginals:
    """Sum a group pdf over each coset and over the fundamental-domain shifts."""
    group = dec.group
    if len(f) != group.order:
        raise ValueError("pdf size does not match the group order")
    h = np.asarray(dec.subgroup, dtype=np.int64)
    reps = np.asarray(dec.representatives, dtype=np.int64)
    if dec.side == "left":
        block = f.probs[group.table[reps[:, None], h[None, :]]]  # [coset, h]
    else:
        block = f.probs[group.table[h[None, :], reps[:, None]]]
    return CosetMarginals(
        coset_pdf=DiscretePdf(block.sum(axis=1)),
        subgroup_pdf=DiscretePdf(block.sum(axis=0)),
    )


def _double_coset_terms(f: DiscretePdf, dec: DoubleCosetDecomposition):
    """Subgroup marginals and the weighted coset-space entropy term."""
    group = dec.group
    k = np.asarray(dec.left_subgroup, dtype=np.int64)
    h = np.asarray(dec.right_subgroup, dtype=np.int64)
    f_k = np.zeros(k.size)
    f_h = np.zeros(h.size)
    s_space = 0.0
    for rep, members in zip(dec.representatives, dec.cosets):
        fiber = k.size * h.size / len(members)  # each element of KcH hit this many times
        kc = group.table[k, rep]
        block = f.probs[group.table[kc[:, None], h[None, :]]]  # [k, h]
        f_k += block.sum(axis=1) / fiber
        f_h += block.sum(axis=0) / fiber
        mass = block.sum() / fiber
        if mass > 0:
            # density against the coset-space weight 1/fiber is fiber * mass
            s_space += -mass * np.log(fiber * mass)
    return DiscretePdf(f_k), DiscretePdf(f_h), float(s_space)


def subadditivity_slack(
    f: DiscretePdf,
    group: FiniteGroup,
    variant: str,
    h_ids,
    k_ids=None,
) -> float:
    """(Sum of marginal entropies) minus the group entropy; nonnegative.

    Variants: ``coset`` bounds S(f) by the G/H and H marginals of the
    left-coset split; ``double_coset`` uses two subgroups K, H and the
    K\\G/H space; ``nested`` applies the coset bound twice for H < K < G.
    """
    if len(f) != group.order:
        raise ValueError("pdf size does not match the group order")
    s_g = shannon_entropy(f)
    if variant == "coset":
        m = marginals(f, coset_partition(group, h_ids))
        return shannon_entropy(m.coset_pdf) + shannon_entropy(m.subgroup_pdf) - s_g
    if variant == "double_coset":
        if k_ids is None:
            raise ValueError("double_coset variant needs the left subgroup k_ids")
        dec = double_coset_partition(group, k_ids, h_ids)
        f_k, f_h, s_space = _double_coset_terms(f, dec)
        return shannon_entropy(f_k) + s_space + shannon_entropy(f_h) - s_g
    if variant == "nested":
        if k_ids is None:
            raise ValueError("nested variant needs the middle subgroup k_ids")
        k_arr = check_subgroup(group, k_ids)
        h_arr = check_subgroup(group, h_ids)
        if not set(int(i) for i in h_arr) <= set(int(i) for i in k_arr):
            raise ValueError("nested variant requires H to be a subgroup of K")
        m_g = marginals(f, coset_partition(group, k_arr))
        k_group, remap = subgroup_as_group(group, k_arr)
        h_in_k = [remap[int(i)] for i in h_arr]
        m_k = marginals(m_g.subgroup_pdf, coset_partition(k_group, h_in_k))
        return (
            shannon_entropy(m_g.coset_pdf)
            + shannon_entropy(m_k.coset_pdf)
            + shannon_entropy(m_k.subgroup_pdf)
            - s_g
        )
    raise ValueError(f"unknown variant {variant!r}")


def symmetrize_pdf(f: DiscretePdf, group: FiniteGroup, k_ids, side: str = "right") -> DiscretePdf:
    """Average a pdf over a subgroup: (1/|K|) sum_k f(g k).

    The result is constant on the corresponding cosets (a coset function)
    and its entropy can only grow; the map is linear and idempotent.
    """
    if len(f) != group.order:
        raise ValueError("pdf size does not match the group order")
    k = check_subgroup(group, k_ids)
    if side == "right":
        return DiscretePdf(f.probs[group.table[:, k]].mean(axis=1))
    if side == "left":
        return DiscretePdf(f.probs[group.table[k, :]].mean(axis=0))
    raise ValueError("side must be 'left' or 'right'")


def lie_factor_marginals(grid: ProductGrid, values: np.ndarray) -> tuple[GridPdf, GridPdf]:
    """Rotation and translation marginals of a density on an SE(n) product grid.

    This is the continuous rotation/translation split of the motion
    group: the marginal entropies bound the full entropy the same way
    the finite coset marginals do.
    """
    values = np.asarray(values, dtype=float).reshape(
        grid.rot_weights.size, grid.trans_weights.size
    )
    rot_values = values @ grid.trans_weights
    trans_values = values.T @ grid.rot_weights
    return (
        GridPdf(grid.rot_nodes, grid.rot_weights, rot_values, label="rotation-marginal"),
        GridPdf(grid.trans_nodes, grid.trans_weights, trans_values, label="translation-marginal"),
    )


def decomposition_to_json(dec) -> dict:
    """Serializable dump of a (double) coset decomposition."""
    out = {
        "group": dec.group.name,
        "cosets": [list(c) for c in dec.cosets],
        "representatives": list(dec.representatives),
    }
    if isinstance(dec, CosetDecomposition):
        out["subgroup"] = list(dec.subgroup)
        out["side"] = dec.side
    else:
        out["left_subgroup"] = list(dec.left_subgroup)
        out["right_subgroup"] = list(dec.right_subgroup)
    return out
