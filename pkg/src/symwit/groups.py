"""Explicit finite permutation groups and their involution systems.

Permutations are tuples of images on the domain {0, ..., d-1}, composed
as (g * h)(x) = g(h(x)).  A group's elements are kept sorted by image
tuple; the identity is always element 0, and every downstream index
(involutions, triples, matrix rows) inherits that canonical order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InputError, SizeError
from .f2 import F2Matrix, LinSystem

CLOSURE_CAP = 10**6

Perm = tuple[int, ...]


def identity_perm(d: int) -> Perm:
    return tuple(range(d))


def compose(g: Perm, h: Perm) -> Perm:
    """(g * h)(x) = g(h(x))."""
    return tuple(g[h[x]] for x in range(len(g)))


def inverse(g: Perm) -> Perm:
    inv = [0] * len(g)
    for i, j in enumerate(g):
        inv[j] = i
    return tuple(inv)


def perm_from_cycles(cycles, d: int) -> Perm:
    images = list(range(d))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:]):
            images[a] = b
        if cyc:
            images[cyc[-1]] = cyc[0]
    return tuple(images)


def cycle_notation(g: Perm) -> str:
    """One-based cycle form, '()' for the identity."""
    seen = set()
    parts = []
    for i in range(len(g)):
        if i in seen or g[i] == i:
            continue
        cyc = [i]
        j = g[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = g[j]
        parts.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(parts) if parts else "()"


@dataclass(frozen=True)
class FiniteGroup:
    """A permutation group as an explicit, canonically ordered element list."""

    degree: int
    elements: tuple[Perm, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {g: i for i, g in enumerate(self.elements)}
        )
        inv = tuple(self._index[inverse(g)] for g in self.elements)
        object.__setattr__(self, "inverse_table", inv)

    def __len__(self):
        return len(self.elements)

    def index_of(self, g: Perm) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise InputError("permutation is not a group element") from None

    def mult(self, i: int, j: int) -> int:
        """Index of elements[i] * elements[j]."""
        return self._index[compose(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self.inverse_table[i]

    @property
    def identity_index(self) -> int:
        return 0


@dataclass(frozen=True)
class InvolutionSet:
    """Order-2 elements of a group and their commuting triples.

    ``members`` holds element indices; each entry of ``triples`` is a
    sorted 3-tuple of element indices whose elements commute pairwise and
    multiply to the identity.
    """

    members: tuple[int, ...]
    triples: tuple[tuple[int, int, int], ...] = ()


def group_closure(generators, cap: int = CLOSURE_CAP) -> FiniteGroup:
    """Group generated by the given permutations, canonically ordered."""
    gens = [tuple(g) for g in generators]
    if not gens:
        raise InputError("need at least one generator (use the identity)")
    d = len(gens[0])
    for g in gens:
        if len(g) != d:
            raise InputError("generators act on different domain sizes")
        if sorted(g) != list(range(d)):
            raise InputError("generator is not a permutation")
    seen = {identity_perm(d)}
    frontier = [identity_perm(d)]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                p = compose(g, h)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
                    if len(seen) > cap:
                        raise SizeError(f"closure exceeds cap of {cap} elements")
        frontier = nxt
    return FiniteGroup(d, tuple(sorted(seen)))


_FAMILY_RE = re.compile(r"^([ASZ])(\d+)$")


def _family_generators(name: str):
    m = _FAMILY_RE.match(name)
    if not m:
        raise InputError(f"unknown group name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise InputError("group degree must be positive")
    if kind == "Z":
        return [perm_from_cycles([list(range(n))], n)], n
    if kind == "S":
        if n == 1:
            return [identity_perm(1)], 1
        return [
            perm_from_cycles([[0, 1]], n),
            perm_from_cycles([list(range(n))], n),
        ], n
    # alternating: trivial below degree 3
    if n < 3:
        return [identity_perm(n)], n
    long_cycle = (
        perm_from_cycles([list(range(n))], n)
        if n % 2 == 1
        else perm_from_cycles([list(range(1, n))], n)
    )
    return [perm_from_cycles([[0, 1, 2]], n), long_cycle], n


def _parse_cycle_gens(spec: str):
    body = spec.split(":", 1)[1].strip()
    if not body:
        raise InputError("empty generator list")
    perm_texts = [t.strip() for t in body.split(",")]
    cycle_re = re.compile(r"\(([^()]*)\)")
    parsed = []
    maxpt = 0
    for text in perm_texts:
        if not re.fullmatch(r"(\s*\([^()]*\)\s*)+", text):
            raise InputError(f"cannot parse permutation {text!r}")
        cycles = []
        for mm in cycle_re.finditer(text):
            pts = mm.group(1).split()
            if not pts:
                continue
            try:
                cyc = [int(p) - 1 for p in pts]
            except ValueError as exc:
                raise InputError(f"bad cycle point in {text!r}") from exc
            if any(p < 0 for p in cyc) or len(set(cyc)) != len(cyc):
                raise InputError(f"bad cycle in {text!r}")
            cycles.append(cyc)
        if not cycles:
            raise InputError(f"cannot parse permutation {text!r}")
        maxpt = max(maxpt, max(max(c) for c in cycles) + 1)
        parsed.append(cycles)
    return [perm_from_cycles(cycles, maxpt) for cycles in parsed], maxpt


def named_group(spec: str, cap: int = CLOSURE_CAP) -> FiniteGroup:
    """Resolve the group mini-language.

    Accepts family names (``A7``, ``S3``, ``Z5``), direct products joined
    with ``x`` (``Z2xZ2``), or explicit generators in one-based cycle
    notation (``gens: (1 2)(3 4), (1 2 3)``).
    """
    spec = spec.strip()
    if spec.startswith("gens:"):
        gens, _ = _parse_cycle_gens(spec)
        return group_closure(gens, cap)
    factors = [f.strip() for f in spec.split("x")]
    if not all(factors):
        raise InputError(f"malformed group spec {spec!r}")
    gen_lists = []
    sizes = []
    for f in factors:
        gens, d = _family_generators(f)
        gen_lists.append(gens)
        sizes.append(d)
    total = sum(sizes)
    combined = []
    offset = 0
    for gens, d in zip(gen_lists, sizes):
        for g in gens:
            images = list(range(total))
            for x in range(d):
                images[offset + x] = offset + g[x]
            combined.append(tuple(images))
        offset += d
    return group_closure(combined, cap)


def involutions(g: FiniteGroup) -> InvolutionSet:
    """All non-identity elements of order 2, in canonical order."""
    members = []
    for idx, p in enumerate(g.elements):
        if idx == 0:
            continue
        if all(p[p[x]] == x for x in range(g.degree)):
            members.append(idx)
    return InvolutionSet(tuple(members))


def commuting_triples(g: FiniteGroup) -> InvolutionSet:
    """Involution triples that commute pairwise and multiply to identity.

    Every such triple is {h, k, hk} for a commuting pair of distinct
    involutions, so enumerating pairs and closing with the product is
    exhaustive.  Triples are deduplicated as unordered index sets and
    sorted lexicographically.
    """
    inv = involutions(g)
    members = inv.members
    seen = set()
    for a in range(len(members)):
        pa = g.elements[members[a]]
        for b in range(a + 1, len(members)):
            pb = g.elements[members[b]]
            ab = compose(pa, pb)
            if ab != compose(pb, pa):
                continue
            c = g.index_of(ab)
            seen.add(tuple(sorted((members[a], members[b], c))))
    return InvolutionSet(members, tuple(sorted(seen)))


def build_mh(g: FiniteGroup) -> LinSystem:
    """Homogeneous system with one variable per involution and one
    equation per commuting triple (ones at the triple's three members)."""
    inv = commuting_triples(g)
    col_of = {m: j for j, m in enumerate(inv.members)}
    bits = []
    for tri in inv.triples:
        row = 0
        for m in tri:
            row |= 1 << col_of[m]
        bits.append(row)
    matrix = F2Matrix(len(inv.triples), len(inv.members), tuple(bits))
    return LinSystem(matrix, 0)


def natural_hom_check(g: FiniteGroup) -> bool:
    """Evaluate the defining relations of the involution system in g itself.

    Checks order-2 relations for every member, commutation for every
    commuting pair, and the triple product relations; all hold by
    construction, so this is a consistency harness.
    """
    inv = commuting_triples(g)
    ident = identity_perm(g.degree)
    for m in inv.members:
        p = g.elements[m]
        if compose(p, p) != ident:
            return False
    for i, a in enumerate(inv.members):
        pa = g.elements[a]
        for b in inv.members[i + 1 :]:
            pb = g.elements[b]
            if compose(pa, pb) == compose(pb, pa):
                # relation [x_a, x_b] = 1 must evaluate to identity
                lhs = compose(compose(pa, pb), compose(pa, pb))
                if lhs != ident:
                    return False
    for tri in inv.triples:
        prod = ident
        for m in tri:
            prod = compose(prod, g.elements[m])
        if prod != ident:
            return False
    return True


@dataclass(frozen=True)
class Presentation:
    """Finitely presented group data for a linear system.

    Each relation is a (kind, word) pair whose word multiplies to the
    identity; kinds are 'order2', 'commute', 'product', 'gamma2', and
    'central'.  The homogeneous case has no gamma generator.
    """

    generators: tuple[str, ...]
    relations: tuple[tuple[str, tuple[str, ...]], ...]

    def text(self) -> str:
        gens = ",".join(self.generators)
        rels = ", ".join("".join(word) for _, word in self.relations)
        return f"<{gens} | {rels}>"

    def machine(self) -> str:
        """One relator word per line, letters separated by spaces."""
        lines = [" ".join(self.generators)]
        lines += [" ".join(word) for _, word in self.relations]
        return "\n".join(lines) + "\n"


def presentation_of(sys: LinSystem) -> Presentation:
    """Presentation of the solution group of Mx = b.

    For b != 0 the generators are x1..xn plus the central g with g^2 = 1,
    and each equation contributes the relator (prod of its variables) *
    g^{b_k}.  For b = 0 the central generator is eliminated and equations
    become plain product relators.
    """
    m = sys.matrix
    names = tuple(f"x{i + 1}" for i in range(m.cols))
    rels = []
    for i in range(m.cols):
        rels.append(("order2", (names[i], names[i])))
    pairs = set()
    for k in range(m.rows):
        sup = m.row_support(k)
        for a in range(len(sup)):
            for b in range(a + 1, len(sup)):
                pairs.add((sup[a], sup[b]))
    for i, j in sorted(pairs):
        rels.append(("commute", (names[i], names[j], names[i], names[j])))
    if sys.rhs == 0:
        for k in range(m.rows):
            word = tuple(names[i] for i in m.row_support(k))
            rels.append(("product", word))
        return Presentation(names, tuple(rels))
    for k in range(m.rows):
        word = tuple(names[i] for i in m.row_support(k))
        if sys.rhs_bit(k):
            word = word + ("g",)
        rels.append(("product", word))
    rels.append(("gamma2", ("g", "g")))
    for i in range(m.cols):
        rels.append(("central", (names[i], "g", names[i], "g")))
    return Presentation(names + ("g",), tuple(rels))
