"""Words over a generating set and the exact equality oracle.

A word is a composable sequence of non-identity generators.  Two words are
equal in the presented groupoid (free groupoid on the generators modulo the
merge relations) exactly when their images in the monodromy construction
coincide; the image of a generator is its unique lift into the tree induced
by the covering set on each star.  Folding is a normalisation heuristic
only: the merge rewriting system is not confluent, so equality is always
decided through the lift, never through rewriting.

The hypotheses that make the oracle exact are checkable and checked: the
generating set contains the identities, is closed under inversion, is
connected on every star and generates; the covering set contains all
products of two generators and induces a tree on every star.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groupoid import subgroupoid_generated
from .monodromy import MonMor, canonical_mon, mon_compose, mon_identity, split_bracketed
from .report import AXIOM, MALFORMED, Report
from .stars import EdgePath, StarredGroupoid


@dataclass(frozen=True)
class Word:
    """Composable sequence of non-identity generator names, with its source object."""

    source: str
    letters: tuple[str, ...]


def make_word(sg: StarredGroupoid, letters: Sequence[str], source: str | None = None) -> Word:
    """Build a word, dropping identity letters eagerly.

    The source may be omitted when there is at least one letter.
    """
    g = sg.gpd
    for u in letters:
        if u not in g.src:
            raise ValueError(f"unknown morphism: {u}")
    for u, v in zip(letters, letters[1:]):
        if g.tgt[u] != g.src[v]:
            raise ValueError(f"letters not composable: tgt({u})={g.tgt[u]} != src({v})={g.src[v]}")
    if letters:
        first = g.src[letters[0]]
        if source is None:
            source = first
        elif source != first:
            raise ValueError(f"source {source} does not match first letter source {first}")
    elif source is None:
        raise ValueError("an empty word needs an explicit source object")
    if source not in g.ident:
        raise ValueError(f"unknown object: {source}")
    return Word(source, tuple(u for u in letters if not g.is_identity(u)))


def word_target(sg: StarredGroupoid, w: Word) -> str:
    return sg.gpd.tgt[w.letters[-1]] if w.letters else w.source


def concat_words(sg: StarredGroupoid, w1: Word, w2: Word) -> Word:
    if word_target(sg, w1) != w2.source:
        raise ValueError("words not composable")
    return make_word(sg, w1.letters + w2.letters, source=w1.source)


def letter_product(sg: StarredGroupoid, w: Word) -> str:
    """Image of the word in the ambient groupoid: the composite of its letters."""
    g = sg.gpd
    acc = g.ident[w.source]
    for u in w.letters:
        acc = g.comp[(acc, u)]
    return acc


def free_reduce(sg: StarredGroupoid, w: Word) -> Word:
    """Delete identity letters and adjacent mutually-inverse pairs; confluent."""
    g = sg.gpd
    out: list[str] = []
    for u in w.letters:
        if g.is_identity(u):
            continue
        if out and out[-1] == g.inv[u]:
            out.pop()
        else:
            out.append(u)
    return Word(w.source, tuple(out))


def fold(sg: StarredGroupoid, wset: Iterable[str], w: Word) -> Word:
    """Greedy left-to-right merge of adjacent letters whose composite is a generator.

    A normalisation heuristic, not a decision procedure: merged identities are
    deleted and the result is freely reduced.
    """
    g = sg.gpd
    members = frozenset(wset)
    out: list[str] = []
    for u in w.letters:
        if out:
            merged = g.comp.get((out[-1], u))
            if merged is not None and merged in members:
                if g.is_identity(merged):
                    out.pop()
                else:
                    out[-1] = merged
                continue
        out.append(u)
    return free_reduce(sg, Word(w.source, tuple(out)))


def generator_square(sg: StarredGroupoid, wset: Iterable[str]) -> frozenset[str]:
    """All composites of two generators."""
    g = sg.gpd
    members = sorted(set(wset))
    out = set()
    for u in members:
        for v in members:
            c = g.comp.get((u, v))
            if c is not None:
                out.add(c)
    return frozenset(out)


def default_cover(sg: StarredGroupoid, wset: Iterable[str]) -> frozenset[str]:
    """The minimal covering set: the generators together with their pairwise composites."""
    members = frozenset(wset)
    return members | generator_square(sg, members)


def _induced_adjacency(sg: StarredGroupoid, x: str, allowed: frozenset[str]) -> dict[str, tuple[str, ...]]:
    full = sg.adjacency(x)
    return {
        u: tuple(v for v in nbrs if v in allowed)
        for u, nbrs in full.items()
        if u in allowed
    }


def _find_cycle(adj: dict[str, tuple[str, ...]], root: str) -> list[str] | None:
    """Return the vertices of one cycle reachable from root, if any."""
    parent: dict[str, str | None] = {root: None}
    order = [root]
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in parent:
                    parent[v] = u
                    order.append(v)
                    nxt.append(v)
                elif parent[u] != v:
                    up, vp = u, v
                    seen_u = []
                    while up is not None:
                        seen_u.append(up)
                        up = parent[up]
                    chain = []
                    while vp not in seen_u:
                        chain.append(vp)
                        vp = parent[vp]
                    return seen_u[: seen_u.index(vp) + 1] + chain[::-1]
        frontier = nxt
    return None


def check_hypotheses(
    sg: StarredGroupoid,
    wset: Iterable[str],
    cover: Iterable[str] | None = None,
) -> Report:
    """Verify everything the equality oracle relies on.

    With no covering set supplied, the default (generators plus pairwise
    composites) is used.  Cycle failures carry the offending cycle as
    witnesses.
    """
    g = sg.gpd
    report = Report()
    members = frozenset(wset)
    for u in sorted(members - set(g.morphisms)):
        report.flag(MALFORMED, "generators", (u,), "unknown morphism")
    if not report.ok:
        return report

    for x in g.objects:
        if g.ident[x] not in members:
            report.flag(AXIOM, "missing-identity", (x, g.ident[x]))
    for u in sorted(members):
        if g.inv[u] not in members:
            report.flag(AXIOM, "not-symmetric", (u, g.inv[u]))

    for x in g.objects:
        star_w = members & set(sg.star_members(x))
        if g.ident[x] not in star_w:
            continue
        adj = _induced_adjacency(sg, x, frozenset(star_w))
        seen = {g.ident[x]}
        frontier = [g.ident[x]]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        for u in sorted(star_w - seen):
            report.flag(AXIOM, "star-disconnected", (x, u))

    if not subgroupoid_generated(g, members).generates:
        report.flag(AXIOM, "does-not-generate", ())

    used_cover = frozenset(cover) if cover is not None else default_cover(sg, members)
    for u in sorted(used_cover - set(g.morphisms)):
        report.flag(MALFORMED, "cover", (u,), "unknown morphism")
    if not report.ok:
        return report
    needed = members | generator_square(sg, members)
    for u in sorted(needed - used_cover):
        report.flag(AXIOM, "cover-missing", (u,), "generator square not covered")

    for x in g.objects:
        star_v = used_cover & set(sg.star_members(x))
        if g.ident[x] not in star_v:
            report.flag(AXIOM, "cover-missing-identity", (x,))
            continue
        adj = _induced_adjacency(sg, x, frozenset(star_v))
        cycle = _find_cycle(adj, g.ident[x])
        if cycle is not None:
            report.flag(AXIOM, "cover-cycle", (x, *cycle), "induced subgraph is not a tree")
        seen = {g.ident[x]}
        frontier = [g.ident[x]]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        for u in sorted(star_v - seen):
            report.flag(AXIOM, "cover-disconnected", (x, u))
    return report


class Presentation:
    """Validated presentation context with cached generator lifts.

    Use this for bulk queries; the module-level functions rebuild the context
    on every call.
    """

    def __init__(
        self,
        sg: StarredGroupoid,
        wset: Iterable[str],
        cover: Iterable[str] | None = None,
        validate: bool = True,
    ):
        self.sg = sg
        self.wset = frozenset(wset)
        self.cover = frozenset(cover) if cover is not None else default_cover(sg, self.wset)
        if validate:
            check_hypotheses(sg, self.wset, self.cover).raise_if_failed("presentation hypotheses")
        self._lifts: dict[str, EdgePath] = {}

    def lift(self, u: str) -> EdgePath:
        """Unique path from the identity vertex to u inside the cover tree."""
        got = self._lifts.get(u)
        if got is not None:
            return got
        if u not in self.wset:
            raise ValueError(f"not a generator: {u}")
        g = self.sg.gpd
        x = g.src[u]
        root = g.ident[x]
        star_v = frozenset(self.cover & set(self.sg.star_members(x)))
        adj = _induced_adjacency(self.sg, x, star_v)
        parent: dict[str, str | None] = {root: None}
        frontier = [root]
        while frontier and u not in parent:
            nxt = []
            for p in frontier:
                for v in adj[p]:
                    if v not in parent:
                        parent[v] = p
                        nxt.append(v)
            frontier = nxt
        if u not in parent:
            raise ValueError(f"generator {u} unreachable inside the cover of star {x}")
        back = [u]
        while parent[back[-1]] is not None:
            back.append(parent[back[-1]])
        path = EdgePath(tuple(reversed(back)))
        self._lifts[u] = path
        return path

    def to_mon(self, w: Word) -> MonMor:
        acc = mon_identity(self.sg, w.source)
        for u in w.letters:
            acc = mon_compose(self.sg, acc, MonMor(self.sg.gpd.src[u], self.lift(u)))
        return acc

    def equal(self, w1: Word, w2: Word) -> bool:
        if w1.source != w2.source:
            return False
        return self.to_mon(w1) == self.to_mon(w2)


def mgw_to_mon(
    sg: StarredGroupoid,
    wset: Iterable[str],
    cover: Iterable[str] | None,
    w: Word,
) -> MonMor:
    """Image of a word under the equality oracle; hypotheses are re-checked."""
    return Presentation(sg, wset, cover).to_mon(w)


def mgw_equal(
    sg: StarredGroupoid,
    wset: Iterable[str],
    cover: Iterable[str] | None,
    w1: Word,
    w2: Word,
) -> bool:
    return Presentation(sg, wset, cover).equal(w1, w2)


def enumerate_words(
    sg: StarredGroupoid,
    wset: Iterable[str],
    max_len: int,
    source: str | None = None,
) -> list[Word]:
    """All words over the non-identity generators up to the length bound.

    Deterministic: sources in name order, then by length, letters in name
    order.
    """
    g = sg.gpd
    letters = sorted(u for u in set(wset) if not g.is_identity(u))
    by_src: dict[str, list[str]] = {}
    for u in letters:
        by_src.setdefault(g.src[u], []).append(u)
    sources = [source] if source is not None else list(g.objects)
    out: list[Word] = []
    for x in sources:
        level = [()]
        out.append(Word(x, ()))
        cursor = {(): x}
        for _ in range(max_len):
            nxt = []
            for seq in level:
                end = cursor[seq]
                for u in by_src.get(end, ()):
                    grown = seq + (u,)
                    cursor[grown] = g.tgt[u]
                    nxt.append(grown)
                    out.append(Word(x, grown))
            level = nxt
    return out


def format_word(w: Word) -> str:
    if not w.letters:
        return f"[@{w.source}]"
    return "[" + ",".join(w.letters) + "]"


def parse_word(sg: StarredGroupoid, text: str) -> Word:
    """Parse a word literal: ``[(0,1),(1,2)]``, or ``[@x]`` for the empty word at x."""
    items = split_bracketed(text)
    if len(items) == 1 and items[0].startswith("@"):
        return make_word(sg, (), source=items[0][1:])
    if not items:
        raise ValueError("empty word literals must name their source: [@x]")
    return make_word(sg, items)
