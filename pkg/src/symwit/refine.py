"""Color refinement (1-WL): stable partitions and distinguishing queries.

The heavy lifting runs in a worklist kernel (compiled when available, see
``_kernels``) over an ordered-partition encoding; this module wraps it in
canonical ``Partition`` values.  Classes are ordered by (size, smallest
member), which makes partitions reproducible and independent of the
arbitrary numbering of the input colors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import refine_ordered
from .errors import InputError
from .graphs import ColoredGraph


@dataclass(frozen=True)
class Partition:
    """Ordered partition of {0..n-1}; class ids are contiguous from 0."""

    class_of: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        total = sum(len(c) for c in self.classes)
        if total != len(self.class_of):
            raise InputError("classes do not partition the vertex set")

    @property
    def n(self):
        return len(self.class_of)

    def is_discrete(self):
        return all(len(c) == 1 for c in self.classes)


@dataclass(frozen=True)
class TopoPath:
    """Maximal path whose endpoints have degree != 2 and interior degree 2."""

    endpoint_a: int
    endpoint_b: int
    interior: tuple[int, ...]

    def length(self):
        return len(self.interior) + 1


def partition_from_labels(labels) -> Partition:
    """Canonical Partition from an arbitrary vertex -> class labeling."""
    groups: dict[int, list[int]] = {}
    for v, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(v)
    ordered = sorted(groups.values(), key=lambda c: (len(c), c[0]))
    class_of = [0] * len(labels)
    for cid, cls in enumerate(ordered):
        for v in cls:
            class_of[v] = cid
    return Partition(tuple(class_of), tuple(tuple(c) for c in ordered))


def initial_ordered(g: ColoredGraph) -> tuple[np.ndarray, np.ndarray]:
    """Ordered-partition encoding of the input vertex coloring.

    Cells follow the lexicographic order of the color values, so the
    encoding depends only on which vertices share a color.
    """
    order = sorted(range(g.n), key=lambda v: (g.colors[v], v))
    elems = np.asarray(order, dtype=np.int32)
    cut = np.zeros(g.n + 1, dtype=np.uint8)
    cut[0] = 1
    cut[g.n] = 1
    for p in range(1, g.n):
        if g.colors[order[p]] != g.colors[order[p - 1]]:
            cut[p] = 1
    return elems, cut


def cell_starts(cut: np.ndarray) -> np.ndarray:
    n = len(cut) - 1
    return np.flatnonzero(cut[:n]).astype(np.int32)


def labels_from_ordered(elems: np.ndarray, cut: np.ndarray) -> np.ndarray:
    """Vertex -> cell index (in segment order) for an ordered partition."""
    n = len(elems)
    labels = np.empty(n, dtype=np.int32)
    cell = -1
    for p in range(n):
        if cut[p]:
            cell += 1
        labels[elems[p]] = cell
    return labels


def _stable_ordered(g: ColoredGraph):
    elems, cut = initial_ordered(g)
    if g.n == 0:
        return elems, cut
    indptr, indices = g.csr
    return refine_ordered(indptr, indices, elems, cut, cell_starts(cut))


def stable_refinement(g: ColoredGraph) -> Partition:
    """Coarsest equitable partition refining the vertex coloring of g."""
    elems, cut = _stable_ordered(g)
    if g.n == 0:
        return Partition((), ())
    return partition_from_labels(labels_from_ordered(elems, cut))


def refine_step(g: ColoredGraph, p: Partition) -> Partition:
    """One refinement round: group by (class, multiset of neighbor classes).

    Independent of the worklist kernel; iterating it reaches the same
    fixed point as ``stable_refinement``.
    """
    if len(p.class_of) != g.n:
        raise InputError("partition does not match the vertex set")
    sigs = {}
    for v in range(g.n):
        sig = (p.class_of[v], tuple(sorted(p.class_of[u] for u in g.adjacency[v])))
        sigs.setdefault(sig, []).append(v)
    ordered = [cls for _, cls in sorted(sigs.items())]
    labels = [0] * g.n
    for cid, cls in enumerate(ordered):
        for v in cls:
            labels[v] = cid
    return partition_from_labels(labels)


def distinguished(g: ColoredGraph, u: int, v: int) -> bool:
    """True iff u and v end up in different stable-refinement classes."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise InputError("vertex out of range")
    part = stable_refinement(g)
    return part.class_of[u] != part.class_of[v]


def is_equitable(g: ColoredGraph, p: Partition) -> bool:
    """Every vertex of class A has the same neighbor count in each class B."""
    for cls in p.classes:
        profiles = set()
        for v in cls:
            row = {}
            for u in g.adjacency[v]:
                row[p.class_of[u]] = row.get(p.class_of[u], 0) + 1
            profiles.add(tuple(sorted(row.items())))
            if len(profiles) > 1:
                return False
    return True


def topological_paths(g: ColoredGraph) -> list[TopoPath]:
    """All maximal degree-2 paths between endpoints of degree != 2.

    Each path is reported once, endpoints ordered with the smaller id
    first; degree-2 vertices on closed degree-2 cycles lie on no path and
    walks that return to their startpoint are discarded.
    """
    seen = set()
    out = []
    for a in range(g.n):
        if g.degree(a) == 2:
            continue
        for first in g.adjacency[a]:
            interior = []
            prev, cur = a, first
            while g.degree(cur) == 2:
                interior.append(cur)
                nxt = [w for w in g.adjacency[cur] if w != prev]
                prev, cur = cur, nxt[0]
            if cur == a:
                continue
            if a <= cur:
                key = (a, cur, tuple(interior))
            else:
                key = (cur, a, tuple(reversed(interior)))
            if key in seen:
                continue
            seen.add(key)
            out.append(TopoPath(key[0], key[1], key[2]))
    out.sort(key=lambda t: (t.endpoint_a, t.endpoint_b, t.interior))
    return out


def partition_dump(p: Partition) -> str:
    """Golden-file text form: one ``class <id>: v1 v2 ...`` line per class."""
    lines = [
        f"class {cid}: " + " ".join(map(str, cls))
        for cid, cls in enumerate(p.classes)
    ]
    return "\n".join(lines) + "\n"
