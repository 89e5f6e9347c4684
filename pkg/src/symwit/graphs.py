"""Colored-graph model and every graph builder in the toolkit.

Vertex ids are dense integers in construction order; the structured label
string preserves each vertex's origin (variable assignment, equation
assignment, subset, chain position, ...) for debugging and serialization.
All builders are deterministic: equal inputs give identical graphs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

import numpy as np

from .errors import InputError
from .f2 import LinSystem
from .groups import FiniteGroup

Color = tuple[int, int]


@dataclass(frozen=True)
class Assignment:
    """A sign function on a sorted variable-index support."""

    support: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.support) != len(self.signs):
            raise InputError("support and signs differ in length")
        if list(self.support) != sorted(set(self.support)):
            raise InputError("support must be sorted and duplicate-free")
        if any(s not in (1, -1) for s in self.signs):
            raise InputError("signs must be +1 or -1")

    def value_at(self, i: int) -> int:
        return self.signs[self.support.index(i)]

    def parity(self) -> int:
        """0 if the signs multiply to +1, else 1."""
        return 1 if sum(1 for s in self.signs if s == -1) % 2 else 0

    def sign_string(self) -> str:
        return "".join("+" if s == 1 else "-" for s in self.signs)


def enumerate_assignments(support, parity: int) -> list[Assignment]:
    """All sign functions on the support with the given product parity.

    Ordered lexicographically with +1 before -1; there are 2^(|S|-1) of
    them.  An empty support is rejected.
    """
    support = tuple(sorted(support))
    if not support:
        raise InputError("support must be nonempty")
    if parity not in (0, 1):
        raise InputError("parity must be 0 or 1")
    out = []
    for signs in product((1, -1), repeat=len(support)):
        neg = sum(1 for s in signs if s == -1)
        if neg % 2 == parity:
            out.append(Assignment(support, signs))
    return out


def triangle(a: Assignment, b: Assignment) -> Assignment:
    """Pointwise product of two assignments on their common support."""
    common = tuple(sorted(set(a.support) & set(b.support)))
    if not common:
        raise InputError("assignments have disjoint supports")
    signs = tuple(a.value_at(i) * b.value_at(i) for i in common)
    return Assignment(common, signs)


@dataclass(frozen=True)
class ColoredGraph:
    """Simple undirected graph with vertex colors and optional edge colors."""

    n: int
    colors: tuple[Color, ...]
    labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    edge_colors: dict[tuple[int, int], Assignment] | None = None

    def __post_init__(self):
        if len(self.colors) != self.n or len(self.labels) != self.n:
            raise InputError("colors/labels must cover every vertex")
        prev = None
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise InputError(f"bad edge ({u}, {v})")
            if prev is not None and (u, v) <= prev:
                raise InputError("edges must be sorted and duplicate-free")
            prev = (u, v)
        if self.edge_colors is not None:
            if set(self.edge_colors) != set(self.edges):
                raise InputError("edge_colors must cover exactly the edge set")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        for u, v in self.edges:
            indptr[u + 1] += 1
            indptr[v + 1] += 1
        indptr = np.cumsum(indptr, dtype=np.int32)
        indices = np.empty(2 * len(self.edges), dtype=np.int32)
        fill = indptr[:-1].copy()
        for u, v in self.edges:
            indices[fill[u]] = v
            fill[u] += 1
            indices[fill[v]] = u
            fill[v] += 1
        for v in range(self.n):
            indices[indptr[v] : indptr[v + 1]].sort()
        return indptr, indices

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def color_classes(self) -> dict[Color, tuple[int, ...]]:
        out: dict[Color, list[int]] = {}
        for v, c in enumerate(self.colors):
            out.setdefault(c, []).append(v)
        return {c: tuple(vs) for c, vs in out.items()}


def _finish(n, colors, labels, raw_edges, edge_colors=None):
    edges = tuple(sorted({(min(u, v), max(u, v)) for u, v in raw_edges}))
    return ColoredGraph(n, tuple(colors), tuple(labels), edges, edge_colors)


def build_g(sys: LinSystem) -> ColoredGraph:
    """Variable/equation assignment graph of the system Mx = b.

    Two vertices per variable (color (i, 0)) and one vertex per satisfying
    assignment of each equation (color (k, 1)); an assignment vertex is
    adjacent to the variable values it agrees with.  Zero columns are
    allowed and yield isolated variable pairs; an empty row is rejected
    because it constrains nothing.
    """
    m = sys.matrix
    colors, labels = [], []
    var_id = {}
    for i in range(m.cols):
        for s in (1, -1):
            var_id[(i, s)] = len(colors)
            colors.append((i, 0))
            labels.append(f"v:{i}:{'+' if s == 1 else '-'}")
    edges = []
    for k in range(m.rows):
        sup = m.row_support(k)
        if not sup:
            raise InputError(f"row {k} has empty support")
        for alpha in enumerate_assignments(sup, sys.rhs_bit(k)):
            vid = len(colors)
            colors.append((k, 1))
            labels.append(f"q:{k}:{alpha.sign_string()}")
            for i in sup:
                edges.append((vid, var_id[(i, alpha.value_at(i))]))
    return _finish(len(colors), colors, labels, edges)


def build_ghat(sys: LinSystem) -> ColoredGraph:
    """Equation-assignment graph with edge colors.

    One vertex per satisfying assignment of each equation; equations with
    intersecting supports are completely joined (each equation class is a
    clique) and every edge carries the pointwise difference of its two
    assignments.  Rows with empty support and zero columns are rejected.
    """
    m = sys.matrix
    supports = []
    for k in range(m.rows):
        sup = m.row_support(k)
        if not sup:
            raise InputError(f"row {k} has empty support")
        supports.append(sup)
    for j in range(m.cols):
        if not m.col_support(j):
            raise InputError(f"column {j} is zero; every variable must occur")
    colors, labels, verts = [], [], []
    by_eq = []
    for k in range(m.rows):
        ids = []
        for alpha in enumerate_assignments(supports[k], sys.rhs_bit(k)):
            vid = len(colors)
            colors.append((k, 0))
            labels.append(f"q:{k}:{alpha.sign_string()}")
            verts.append(alpha)
            ids.append(vid)
        by_eq.append(ids)
    edges = []
    edge_colors = {}
    for k in range(m.rows):
        for u, v in combinations(by_eq[k], 2):
            edges.append((u, v))
            edge_colors[(u, v)] = triangle(verts[u], verts[v])
    for l in range(m.rows):
        for k in range(l + 1, m.rows):
            if not set(supports[l]) & set(supports[k]):
                continue
            for u in by_eq[l]:
                for v in by_eq[k]:
                    a, b = min(u, v), max(u, v)
                    edges.append((a, b))
                    edge_colors[(a, b)] = triangle(verts[u], verts[v])
    return _finish(len(colors), colors, labels, edges, edge_colors)


def kneser(n: int, ell: int) -> ColoredGraph:
    """Kneser graph: ell-subsets of an n-set, adjacent iff disjoint."""
    if not (1 <= ell <= n):
        raise InputError("need 1 <= ell <= n")
    subsets = list(combinations(range(n), ell))
    colors = [(0, 0)] * len(subsets)
    labels = ["s:" + ",".join(map(str, s)) for s in subsets]
    edges = []
    for a in range(len(subsets)):
        sa = set(subsets[a])
        for b in range(a + 1, len(subsets)):
            if not sa & set(subsets[b]):
                edges.append((a, b))
    return _finish(len(subsets), colors, labels, edges)


def frucht_graph(g: FiniteGroup) -> ColoredGraph:
    """Chain-gadget graph whose automorphism group realizes g.

    For each ordered pair of distinct element indices (i, j) the graph
    carries a q-chain of length 2m-2 hanging off p_i and an r-chain of
    length 2m-1 reaching p_j, joined at their heads, where m = 1 + the
    canonical index of the quotient element g_i g_j^{-1} (so m >= 2 and
    equal quotients get equal chain lengths).  Groups of order 1 or 2
    degenerate to complete graphs.
    """
    n = len(g)
    if n <= 2:
        colors = [(0, 0)] * n
        labels = [f"p:{i}" for i in range(n)]
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
        return _finish(n, colors, labels, edges)
    colors, labels = [], []
    for i in range(n):
        colors.append((0, 0))
        labels.append(f"p:{i}")
    edges = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m_ij = 1 + g.mult(i, g.inv(j))
            q_ids = []
            for k in range(1, 2 * m_ij - 1):
                q_ids.append(len(colors))
                colors.append((0, 0))
                labels.append(f"q:{i}:{j}:{k}")
            r_ids = []
            for l in range(1, 2 * m_ij):
                r_ids.append(len(colors))
                colors.append((0, 0))
                labels.append(f"r:{i}:{j}:{l}")
            edges.append((i, q_ids[0]))
            edges.append((j, r_ids[0]))
            edges.append((q_ids[0], r_ids[0]))
            for a, b in zip(q_ids, q_ids[1:]):
                edges.append((a, b))
            for a, b in zip(r_ids, r_ids[1:]):
                edges.append((a, b))
    return _finish(len(colors), colors, labels, edges)


def disjoint_union(a: ColoredGraph, b: ColoredGraph) -> ColoredGraph:
    """Vertex-disjoint union; colors are preserved unchanged and the
    component is recorded only in the labels."""
    colors = list(a.colors) + list(b.colors)
    labels = [f"0:{s}" for s in a.labels] + [f"1:{s}" for s in b.labels]
    edges = list(a.edges) + [(u + a.n, v + a.n) for u, v in b.edges]
    edge_colors = None
    if a.edge_colors is not None or b.edge_colors is not None:
        edge_colors = dict(a.edge_colors or {})
        for (u, v), val in (b.edge_colors or {}).items():
            edge_colors[(u + a.n, v + a.n)] = val
        # only legal when every edge is covered
        if set(edge_colors) != {(min(u, v), max(u, v)) for u, v in edges}:
            raise InputError("cannot union an edge-colored graph with a plain one")
    return _finish(a.n + b.n, colors, labels, edges, edge_colors)


def add_isolated(g: ColoredGraph, color: Color) -> ColoredGraph:
    """Add one isolated vertex in a color that does not occur yet."""
    color = tuple(color)
    if color in g.colors:
        raise InputError("color already occurs in the graph")
    return ColoredGraph(
        g.n + 1,
        g.colors + (color,),
        g.labels + (f"iso:{g.n}",),
        g.edges,
        g.edge_colors,
    )


def join_classes(g: ColoredGraph, s_colors, t_colors) -> ColoredGraph:
    """Add all edges between the union of the S classes and of the T classes.

    Requires S and T disjoint (disjoint color lists) and S union T
    independent, so every added edge is new.
    """
    s_set = {tuple(c) for c in s_colors}
    t_set = {tuple(c) for c in t_colors}
    if s_set & t_set:
        raise InputError("S and T share a color class")
    s_verts = [v for v in range(g.n) if g.colors[v] in s_set]
    t_verts = [v for v in range(g.n) if g.colors[v] in t_set]
    both = set(s_verts) | set(t_verts)
    for u, v in g.edges:
        if u in both and v in both:
            raise InputError("S union T is not an independent set")
    if g.edge_colors is not None:
        raise InputError("cannot add uncolored edges to an edge-colored graph")
    new_edges = list(g.edges) + [(s, t) for s in s_verts for t in t_verts]
    return _finish(g.n, g.colors, g.labels, new_edges)


def recolor_class(g: ColoredGraph, vertices, fresh_color: Color) -> ColoredGraph:
    """Move a monochromatic, refinement-closed vertex set to a new color.

    The set must be a union of classes of the stable refinement of g; the
    target color must not occur yet.
    """
    from .refine import stable_refinement

    vset = set(vertices)
    if not vset:
        raise InputError("vertex set is empty")
    if any(not (0 <= v < g.n) for v in vset):
        raise InputError("vertex out of range")
    fresh_color = tuple(fresh_color)
    if fresh_color in g.colors:
        raise InputError("fresh color already occurs in the graph")
    if len({g.colors[v] for v in vset}) != 1:
        raise InputError("vertex set is not monochromatic")
    part = stable_refinement(g)
    for cls in part.classes:
        inside = sum(1 for v in cls if v in vset)
        if inside not in (0, len(cls)):
            raise InputError("vertex set is not a union of stable refinement classes")
    colors = tuple(fresh_color if v in vset else g.colors[v] for v in range(g.n))
    return ColoredGraph(g.n, colors, g.labels, g.edges, g.edge_colors)


def graph_to_json(g: ColoredGraph) -> str:
    """Canonical JSON serialization (byte-identical for equal graphs)."""
    doc = {
        "vertices": [
            {"id": v, "color": list(g.colors[v]), "label": g.labels[v]}
            for v in range(g.n)
        ],
        "edges": [[u, v] for u, v in g.edges],
    }
    if g.edge_colors is not None:
        doc["edge_colors"] = [
            [u, v, {"support": list(a.support), "signs": list(a.signs)}]
            for (u, v), a in sorted(g.edge_colors.items())
        ]
    return json.dumps(doc, separators=(",", ":")) + "\n"


def graph_from_json(text: str) -> ColoredGraph:
    try:
        doc = json.loads(text)
        verts = doc["vertices"]
        n = len(verts)
        colors = [None] * n
        labels = [None] * n
        for rec in verts:
            colors[rec["id"]] = (int(rec["color"][0]), int(rec["color"][1]))
            labels[rec["id"]] = str(rec.get("label", rec["id"]))
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in doc["edges"]))
        edge_colors = None
        if "edge_colors" in doc:
            edge_colors = {}
            for u, v, a in doc["edge_colors"]:
                edge_colors[(min(u, v), max(u, v))] = Assignment(
                    tuple(a["support"]), tuple(a["signs"])
                )
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"malformed graph JSON: {exc}") from exc
    if any(c is None for c in colors):
        raise InputError("vertex ids must cover 0..n-1")
    return ColoredGraph(n, tuple(colors), tuple(labels), edges, edge_colors)


def to_dimacs(g: ColoredGraph) -> tuple[str, str]:
    """DIMACS-like edge list plus a sidecar color file, both 1-based."""
    lines = [f"p edge {g.n} {len(g.edges)}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    colors = [f"v {v + 1} {g.colors[v][0]} {g.colors[v][1]}" for v in range(g.n)]
    return "\n".join(lines) + "\n", "\n".join(colors) + "\n"


def graph_digest(g: ColoredGraph) -> str:
    """SHA-256 of the canonical JSON form."""
    return hashlib.sha256(graph_to_json(g).encode()).hexdigest()
