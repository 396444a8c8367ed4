"""Star graphs: a finite simple graph on each star of a groupoid.

The graph on a star plays the role of a topology; a structure is accepted
only when every left translation (and, for group-groupoids, every group
translation and group inversion) acts by graph isomorphisms between stars.
Edge paths inside a star carry the homotopy data consumed by the monodromy
construction: reduction deletes immediate backtracks and is confluent, so
every path has a unique reduced representative.

Products of starred groupoids are special.  The factors are recorded in
``product_tag`` and star graphs are only realised on demand (as the graph
whose steps move one factor at a time); homotopy over a product is always
computed componentwise, because a materialised graph product would turn
fillable squares into spurious cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .group_groupoid import GroupGroupoid, product_group_groupoid, validate_group_groupoid
from .groupoid import Groupoid, pair_name, product_groupoid, validate_groupoid
from .report import AXIOM, MALFORMED, Report


def edge(u: str, v: str) -> tuple[str, str]:
    """Normalised undirected edge."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class StarGraph:
    base: str
    edges: frozenset[tuple[str, str]]

    @classmethod
    def from_pairs(cls, base: str, pairs: Iterable[tuple[str, str]]) -> "StarGraph":
        return cls(base, frozenset(edge(u, v) for u, v in pairs))


@dataclass(frozen=True)
class EdgePath:
    """A walk along star-graph edges, stored as its vertex sequence."""

    vertices: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("a path needs at least its start vertex")

    @property
    def start(self) -> str:
        return self.vertices[0]

    @property
    def end(self) -> str:
        return self.vertices[-1]

    @property
    def steps(self) -> tuple[str, ...]:
        return self.vertices[1:]

    def nsteps(self) -> int:
        return len(self.vertices) - 1


class StarredGroupoid:
    """A groupoid (or group-groupoid) together with one graph per star.

    Immutable by convention; the caches populated lazily are derived data
    only, so concurrent readers are safe.
    """

    def __init__(
        self,
        gpd: Groupoid | None = None,
        group: GroupGroupoid | None = None,
        stars: Mapping[str, StarGraph] | None = None,
        product_tag: tuple["StarredGroupoid", "StarredGroupoid"] | None = None,
        obj_pairs: Mapping[str, tuple[str, str]] | None = None,
        mor_pairs: Mapping[str, tuple[str, str]] | None = None,
    ):
        if group is not None:
            gpd = group.base
        if gpd is None:
            raise ValueError("a groupoid or a group-groupoid is required")
        self.gpd = gpd
        self.group = group
        self.product_tag = product_tag
        self._stars = dict(stars) if stars is not None else None
        if self._stars is None and product_tag is None:
            raise ValueError("star graphs are required unless this is a product")
        self.obj_pairs = dict(obj_pairs) if obj_pairs else {}
        self.mor_pairs = dict(mor_pairs) if mor_pairs else {}
        self.pair_obj = {v: k for k, v in self.obj_pairs.items()}
        self.pair_mor = {v: k for k, v in self.mor_pairs.items()}
        self._members: dict[str, tuple[str, ...]] = {}
        self._adj: dict[str, dict[str, tuple[str, ...]]] = {}
        self._graph_cache: dict[str, StarGraph] = {}

    @property
    def is_group(self) -> bool:
        return self.group is not None

    @property
    def objects(self) -> tuple[str, ...]:
        return self.gpd.objects

    @property
    def morphisms(self) -> tuple[str, ...]:
        return self.gpd.morphisms

    def star_members(self, x: str) -> tuple[str, ...]:
        got = self._members.get(x)
        if got is None:
            got = tuple(m for m in self.gpd.morphisms if self.gpd.src[m] == x)
            self._members[x] = got
        return got

    def star_graph(self, x: str) -> StarGraph:
        if self._stars is not None:
            if x not in self._stars:
                raise KeyError(f"no star graph for object {x}")
            return self._stars[x]
        got = self._graph_cache.get(x)
        if got is None:
            got = self._product_star_graph(x)
            self._graph_cache[x] = got
        return got

    def _product_star_graph(self, x: str) -> StarGraph:
        f1, f2 = self.product_tag
        x1, x2 = self.obj_pairs[x]
        edges: set[tuple[str, str]] = set()
        for (u, v) in f1.star_graph(x1).edges:
            for w in f2.star_members(x2):
                edges.add(edge(self.pair_mor[(u, w)], self.pair_mor[(v, w)]))
        for u in f1.star_members(x1):
            for (w, z) in f2.star_graph(x2).edges:
                edges.add(edge(self.pair_mor[(u, w)], self.pair_mor[(u, z)]))
        return StarGraph(x, frozenset(edges))

    def adjacency(self, x: str) -> dict[str, tuple[str, ...]]:
        got = self._adj.get(x)
        if got is None:
            nbrs: dict[str, set[str]] = {m: set() for m in self.star_members(x)}
            for (u, v) in self.star_graph(x).edges:
                if u in nbrs and v in nbrs:
                    nbrs[u].add(v)
                    nbrs[v].add(u)
            got = {m: tuple(sorted(s)) for m, s in nbrs.items()}
            self._adj[x] = got
        return got


def product_starred(a: StarredGroupoid, b: StarredGroupoid) -> StarredGroupoid:
    """Product of two starred groupoids, tagged so monodromy runs componentwise."""
    if a.is_group and b.is_group:
        group = product_group_groupoid(a.group, b.group)
        gpd = group.base
    else:
        group = None
        gpd = product_groupoid(a.gpd, b.gpd)
    obj_pairs = {pair_name(x, y): (x, y) for x in a.objects for y in b.objects}
    mor_pairs = {pair_name(m, n): (m, n) for m in a.morphisms for n in b.morphisms}
    return StarredGroupoid(
        gpd=gpd,
        group=group,
        stars=None,
        product_tag=(a, b),
        obj_pairs=obj_pairs,
        mor_pairs=mor_pairs,
    )


def validate_star_structure(sg: StarredGroupoid) -> Report:
    """Check that every structural map acts by star-graph isomorphisms.

    Edge preservation is checked for every morphism; since inverses are
    themselves morphisms this implies each translation is an isomorphism.
    """
    g = sg.gpd
    report = validate_group_groupoid(sg.group) if sg.is_group else validate_groupoid(g)
    if not report.ok:
        return report

    if sg._stars is not None:
        for x in sorted(set(sg._stars) - set(g.objects)):
            report.flag(MALFORMED, "star-graph", (x,), "unknown object")
        for x in sorted(set(g.objects) - set(sg._stars)):
            report.flag(MALFORMED, "star-graph", (x,), "missing graph")
        if not report.ok:
            return report

    for x in g.objects:
        graph = sg.star_graph(x)
        members = set(sg.star_members(x))
        if graph.base != x:
            report.flag(MALFORMED, "star-graph-base", (x, graph.base))
        for (u, v) in sorted(graph.edges):
            if u == v:
                report.flag(AXIOM, "star-self-loop", (x, u))
            if u not in members or v not in members:
                report.flag(AXIOM, "edge-outside-star", (x, u, v))
    if not report.ok:
        return report

    for m in g.morphisms:
        x, y = g.src[m], g.tgt[m]
        target_edges = sg.star_graph(x).edges
        for (u, v) in sorted(sg.star_graph(y).edges):
            if edge(g.comp[(m, u)], g.comp[(m, v)]) not in target_edges:
                report.flag(AXIOM, "left-translation", (m, u, v), "edge not preserved")

    if sg.is_group:
        gg = sg.group
        for k in g.morphisms:
            sk = g.src[k]
            for x in g.objects:
                right_edges = sg.star_graph(gg.obj_mul[(x, sk)]).edges
                left_edges = sg.star_graph(gg.obj_mul[(sk, x)]).edges
                for (u, v) in sorted(sg.star_graph(x).edges):
                    if edge(gg.mor_mul[(u, k)], gg.mor_mul[(v, k)]) not in right_edges:
                        report.flag(AXIOM, "right-group-translation", (k, u, v))
                    if edge(gg.mor_mul[(k, u)], gg.mor_mul[(k, v)]) not in left_edges:
                        report.flag(AXIOM, "left-group-translation", (k, u, v))
        for x in g.objects:
            inv_edges = sg.star_graph(gg.obj_inv[x]).edges
            for (u, v) in sorted(sg.star_graph(x).edges):
                if edge(gg.mor_inv[u], gg.mor_inv[v]) not in inv_edges:
                    report.flag(AXIOM, "group-inversion", (x, u, v))
    return report


def check_edge_path(sg: StarredGroupoid, p: EdgePath) -> None:
    """Raise if the vertex sequence is not a walk in a single star graph."""
    g = sg.gpd
    for v in p.vertices:
        if v not in g.src:
            raise ValueError(f"unknown morphism in path: {v}")
    x = g.src[p.start]
    for v in p.vertices:
        if g.src[v] != x:
            raise ValueError(f"path leaves the star of {x}: {v} starts at {g.src[v]}")
    adj = sg.adjacency(x)
    for u, v in zip(p.vertices, p.vertices[1:]):
        if v not in adj[u]:
            raise ValueError(f"not a star-graph edge: {u} -- {v}")


def reduce_path(p: EdgePath) -> EdgePath:
    """Delete immediate backtracks (u,v,u -> u) until none remain.

    Deletion order does not matter: this is free reduction on the edge word,
    so the result is the unique reduced representative.
    """
    out: list[str] = []
    for v in p.vertices:
        if len(out) >= 2 and out[-2] == v:
            out.pop()
        else:
            out.append(v)
    return EdgePath(tuple(out))


def left_translate_path(sg: StarredGroupoid, m: str, p: EdgePath) -> EdgePath:
    """Compose every vertex with `m` on the left, moving the path between stars."""
    g = sg.gpd
    y = g.tgt[m]
    for v in p.vertices:
        if g.src[v] != y:
            raise ValueError(f"path vertex {v} is not in the star of tgt({m})={y}")
    return EdgePath(tuple(g.comp[(m, v)] for v in p.vertices))


def _components(adj: dict[str, tuple[str, ...]], root: str) -> set[str]:
    seen = {root}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen


def star_connected(sg: StarredGroupoid) -> dict[str, bool]:
    out = {}
    for x in sg.objects:
        members = sg.star_members(x)
        reached = _components(sg.adjacency(x), sg.gpd.ident[x])
        out[x] = len(reached) == len(members)
    return out


def is_tree(sg: StarredGroupoid) -> dict[str, bool]:
    """Connected and acyclic, star by star."""
    connected = star_connected(sg)
    out = {}
    for x in sg.objects:
        nedges = len(sg.star_graph(x).edges)
        out[x] = connected[x] and nedges == len(sg.star_members(x)) - 1
    return out
