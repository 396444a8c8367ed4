"""Monodromy elements: reduced edge paths out of the identity vertex.

Each object x contributes a tree of reduced paths starting at the identity
vertex of its star; an element is one such path.  Composition translates the
second path to the endpoint of the first, concatenates and reduces; the
projection sends a path to its endpoint morphism and is a groupoid morphism
back to the ambient groupoid.  Stars with graph cycles yield infinitely many
elements, so everything here is element-wise: enumeration is explicitly
bounded, nothing materialises the whole structure.

Over a product ambient the canonical representative of an element moves the
first factor and then the second; normalisation projects a walk to the two
factors, reduces each, and re-interleaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .report import AXIOM, MALFORMED, Report, ValidationFailed
from .stars import EdgePath, StarredGroupoid, edge, star_connected


@dataclass(frozen=True)
class MonMor:
    """One monodromy element: a reduced path from the identity vertex of base."""

    base: str
    path: EdgePath


def mon_identity(sg: StarredGroupoid, x: str) -> MonMor:
    return MonMor(x, EdgePath((sg.gpd.ident[x],)))


def mon_endpoint(a: MonMor) -> str:
    return a.path.end


def mon_target(sg: StarredGroupoid, a: MonMor) -> str:
    return sg.gpd.tgt[a.path.end]


def mon_project(sg: StarredGroupoid, a: MonMor) -> str:
    """Endpoint morphism; composition-preserving projection to the ambient groupoid."""
    return a.path.end


def _dedup(vertices: Iterable[str]) -> tuple[str, ...]:
    out: list[str] = []
    for v in vertices:
        if not out or out[-1] != v:
            out.append(v)
    return tuple(out)


def _reduce(vertices: Iterable[str]) -> tuple[str, ...]:
    out: list[str] = []
    for v in vertices:
        if len(out) >= 2 and out[-2] == v:
            out.pop()
        else:
            out.append(v)
    return tuple(out)


def _require_product(sg: StarredGroupoid) -> None:
    if sg.product_tag is None:
        raise ValueError("ambient is not a product")


def canonical_mon(sg: StarredGroupoid, base: str, vertices: Iterable[str]) -> MonMor:
    """Canonical element represented by a walk (not necessarily reduced)."""
    vs = tuple(vertices)
    if sg.product_tag is not None:
        f1, f2 = sg.product_tag
        b1, b2 = sg.obj_pairs[base]
        a1 = canonical_mon(f1, b1, _dedup(sg.mor_pairs[v][0] for v in vs))
        a2 = canonical_mon(f2, b2, _dedup(sg.mor_pairs[v][1] for v in vs))
        return mon_product_join(sg, a1, a2)
    return MonMor(base, EdgePath(_reduce(vs)))


def mon_compose(sg: StarredGroupoid, a: MonMor, b: MonMor) -> MonMor:
    """Translate b to the endpoint of a, concatenate, reduce."""
    t = mon_target(sg, a)
    if t != b.base:
        raise ValueError(f"not composable: target {t} != base {b.base}")
    e = a.path.end
    comp = sg.gpd.comp
    translated = tuple(comp[(e, v)] for v in b.path.vertices)
    return canonical_mon(sg, a.base, a.path.vertices + translated[1:])


def mon_inverse(sg: StarredGroupoid, a: MonMor) -> MonMor:
    """Reverse the path and translate it back by the inverse of the endpoint."""
    e = a.path.end
    ie = sg.gpd.inv[e]
    comp = sg.gpd.comp
    verts = tuple(comp[(ie, v)] for v in reversed(a.path.vertices))
    return canonical_mon(sg, mon_target(sg, a), verts)


def mon_group_mul(sg: StarredGroupoid, a: MonMor, b: MonMor) -> MonMor:
    """Canonical representative of the pointwise group product.

    Moves a first (multiplied by the identity at b's base), then b (multiplied
    by a's endpoint); the two simultaneous-move variants are homotopic, and
    this one stays inside the edge-path model.
    """
    if not sg.is_group:
        raise ValueError("ambient has no group structure")
    gg = sg.group
    eb = sg.gpd.ident[b.base]
    ea = a.path.end
    seg1 = [gg.mor_mul[(v, eb)] for v in a.path.vertices]
    seg2 = [gg.mor_mul[(ea, w)] for w in b.path.vertices]
    base = gg.obj_mul[(a.base, b.base)]
    return canonical_mon(sg, base, seg1 + seg2[1:])


def mon_enumerate(sg: StarredGroupoid, x: str, max_len: int) -> list[MonMor]:
    """All elements based at x with path length at most max_len.

    Deterministic: breadth first, neighbours in name order.  Over a product,
    the bound applies to each factor and elements are canonical forms of
    factor pairs.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    if sg.product_tag is not None:
        f1, f2 = sg.product_tag
        x1, x2 = sg.obj_pairs[x]
        return [
            mon_product_join(sg, a1, a2)
            for a1 in mon_enumerate(f1, x1, max_len)
            for a2 in mon_enumerate(f2, x2, max_len)
        ]
    root = sg.gpd.ident[x]
    adj = sg.adjacency(x)
    out = [MonMor(x, EdgePath((root,)))]
    frontier = [(root,)]
    for _ in range(max_len):
        nxt = []
        for vs in frontier:
            prev = vs[-2] if len(vs) >= 2 else None
            for v in adj[vs[-1]]:
                if v != prev:
                    grown = vs + (v,)
                    nxt.append(grown)
                    out.append(MonMor(x, EdgePath(grown)))
        frontier = nxt
    return out


def mon_product_split(sg: StarredGroupoid, a: MonMor) -> tuple[MonMor, MonMor]:
    """Project an element of a product to its two factors."""
    _require_product(sg)
    f1, f2 = sg.product_tag
    b1, b2 = sg.obj_pairs[a.base]
    a1 = canonical_mon(f1, b1, _dedup(sg.mor_pairs[v][0] for v in a.path.vertices))
    a2 = canonical_mon(f2, b2, _dedup(sg.mor_pairs[v][1] for v in a.path.vertices))
    return a1, a2


def mon_product_join(sg: StarredGroupoid, a1: MonMor, a2: MonMor) -> MonMor:
    """Canonical element of the product with the given factor projections."""
    _require_product(sg)
    base = sg.pair_obj[(a1.base, a2.base)]
    anchor = a2.path.start
    seg1 = [sg.pair_mor[(u, anchor)] for u in a1.path.vertices]
    end1 = a1.path.end
    seg2 = [sg.pair_mor[(end1, w)] for w in a2.path.vertices[1:]]
    return MonMor(base, EdgePath(tuple(seg1 + seg2)))


@dataclass(frozen=True)
class StarredMorphism:
    """A structure-preserving map whose star restrictions are graph morphisms."""

    dom: StarredGroupoid
    cod: StarredGroupoid
    obj_map: dict[str, str]
    mor_map: dict[str, str]


def validate_starred_morphism(f: StarredMorphism) -> Report:
    report = Report()
    dg, cg = f.dom.gpd, f.cod.gpd
    for x in dg.objects:
        if f.obj_map.get(x) not in set(cg.objects):
            report.flag(MALFORMED, "object-map", (x,))
    for m in dg.morphisms:
        if f.mor_map.get(m) not in set(cg.morphisms):
            report.flag(MALFORMED, "morphism-map", (m,))
    if not report.ok:
        return report

    for m in dg.morphisms:
        fm = f.mor_map[m]
        if cg.src[fm] != f.obj_map[dg.src[m]] or cg.tgt[fm] != f.obj_map[dg.tgt[m]]:
            report.flag(AXIOM, "endpoint-compat", (m, fm))
    for x in dg.objects:
        if f.mor_map[dg.ident[x]] != cg.ident[f.obj_map[x]]:
            report.flag(AXIOM, "identity-compat", (x,))
    for (a, b), c in sorted(dg.comp.items()):
        got = cg.comp.get((f.mor_map[a], f.mor_map[b]))
        if got != f.mor_map[c]:
            report.flag(AXIOM, "composition-compat", (a, b))
    for x in dg.objects:
        cod_edges = f.cod.star_graph(f.obj_map[x]).edges
        for (u, v) in sorted(f.dom.star_graph(x).edges):
            fu, fv = f.mor_map[u], f.mor_map[v]
            if fu == fv or edge(fu, fv) not in cod_edges:
                report.flag(AXIOM, "star-graph-compat", (x, u, v))
    if f.dom.is_group and f.cod.is_group:
        dgg, cgg = f.dom.group, f.cod.group
        for a in dg.morphisms:
            for b in dg.morphisms:
                if f.mor_map[dgg.mor_mul[(a, b)]] != cgg.mor_mul[(f.mor_map[a], f.mor_map[b])]:
                    report.flag(AXIOM, "group-product-compat", (a, b))
        for x in dg.objects:
            for y in dg.objects:
                if f.obj_map[dgg.obj_mul[(x, y)]] != cgg.obj_mul[(f.obj_map[x], f.obj_map[y])]:
                    report.flag(AXIOM, "object-product-compat", (x, y))
    return report


def mon_map(f: StarredMorphism, a: MonMor, check: bool = False) -> MonMor:
    """Image of an element under the induced map: apply f vertexwise, reduce."""
    if check:
        validate_starred_morphism(f).raise_if_failed("starred morphism")
    verts = (f.mor_map[v] for v in a.path.vertices)
    return canonical_mon(f.cod, f.obj_map[a.base], verts)


class MonGroupoid:
    """Element-wise view of the monodromy construction over one ambient.

    Stars may be infinite, so the groupoid is intensional: it carries the
    ambient plus the element operations, and enumeration is bounded.  The
    ambient must be star connected; anything else is rejected up front.
    """

    def __init__(self, ambient: StarredGroupoid, max_len: int | None = None):
        bad = sorted(x for x, ok in star_connected(ambient).items() if not ok)
        if bad:
            report = Report()
            for x in bad:
                report.flag(AXIOM, "star-not-connected", (x,))
            raise ValidationFailed("monodromy ambient", report)
        self.ambient = ambient
        self.max_len = max_len

    @property
    def objects(self) -> tuple[str, ...]:
        return self.ambient.objects

    def identity(self, x: str) -> MonMor:
        return mon_identity(self.ambient, x)

    def compose(self, a: MonMor, b: MonMor) -> MonMor:
        return mon_compose(self.ambient, a, b)

    def inverse(self, a: MonMor) -> MonMor:
        return mon_inverse(self.ambient, a)

    def project(self, a: MonMor) -> str:
        return mon_project(self.ambient, a)

    def target(self, a: MonMor) -> str:
        return mon_target(self.ambient, a)

    def group_mul(self, a: MonMor, b: MonMor) -> MonMor:
        return mon_group_mul(self.ambient, a, b)

    def elements(self, x: str, max_len: int | None = None) -> list[MonMor]:
        bound = self.max_len if max_len is None else max_len
        if bound is None:
            raise ValueError("an enumeration bound is required")
        return mon_enumerate(self.ambient, x, bound)


def format_mon(a: MonMor) -> str:
    return "[" + ",".join(a.path.vertices) + "]"


def split_bracketed(text: str) -> list[str]:
    """Split a bracket literal at top-level commas (parentheses nest)."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"expected a [...] literal, got {text!r}")
    inner = text[1:-1]
    if not inner:
        return []
    items, depth, cur = [], 0, []
    for ch in inner:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            items.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    items.append("".join(cur))
    if any(not item for item in items):
        raise ValueError(f"empty item in {text!r}")
    return items


def parse_mon(sg: StarredGroupoid, text: str) -> MonMor:
    """Parse a path literal: all vertices, e.g. ``[(0,0),(0,1)]``, or ``[@x]``."""
    items = split_bracketed(text)
    if len(items) == 1 and items[0].startswith("@"):
        x = items[0][1:]
        if x not in sg.gpd.ident:
            raise ValueError(f"unknown object: {x}")
        return mon_identity(sg, x)
    if not items:
        raise ValueError("a path literal needs at least one vertex (or [@x])")
    for v in items:
        if v not in sg.gpd.src:
            raise ValueError(f"unknown morphism in path: {v}")
    base = sg.gpd.src[items[0]]
    if items[0] != sg.gpd.ident[base]:
        raise ValueError(f"path must start at the identity vertex of {base}")
    if sg.product_tag is None:
        adj = sg.adjacency(base)
        for u, v in zip(items, items[1:]):
            if sg.gpd.src[v] != base:
                raise ValueError(f"path leaves the star of {base}: {v}")
            if v not in adj[u]:
                raise ValueError(f"not a star-graph edge: {u} -- {v}")
    return canonical_mon(sg, base, items)
