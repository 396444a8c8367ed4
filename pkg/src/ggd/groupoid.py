"""Finite groupoids as explicit tables.

A groupoid is stored as plain dictionaries: source/target tables, one
identity morphism per object, a partial composition table defined exactly on
composable pairs, and an inversion table.  Everything is immutable after
construction and all operations are pure, so values can be shared freely
between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .report import AXIOM, MALFORMED, Report


@dataclass(frozen=True)
class Groupoid:
    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    src: dict[str, str]
    tgt: dict[str, str]
    ident: dict[str, str]
    comp: dict[tuple[str, str], str]
    inv: dict[str, str]
    _idents: frozenset[str] = field(init=False, repr=False, compare=False, default=frozenset())

    def __post_init__(self) -> None:
        object.__setattr__(self, "_idents", frozenset(self.ident.values()))

    @classmethod
    def from_tables(cls, objects, morphisms, src, tgt, ident, comp, inv) -> "Groupoid":
        return cls(
            objects=tuple(sorted(objects)),
            morphisms=tuple(sorted(morphisms)),
            src=dict(src),
            tgt=dict(tgt),
            ident=dict(ident),
            comp=dict(comp),
            inv=dict(inv),
        )

    def is_identity(self, m: str) -> bool:
        return m in self._idents

    def identity_morphisms(self) -> frozenset[str]:
        return self._idents


@dataclass(frozen=True)
class Star:
    """All morphisms with a common source, in name order."""

    base: str
    members: tuple[str, ...]


def star_of(g: Groupoid, x: str) -> Star:
    if x not in g.ident:
        raise KeyError(f"unknown object: {x}")
    return Star(x, tuple(m for m in g.morphisms if g.src[m] == x))


def compose(g: Groupoid, a: str, b: str) -> str:
    """Composite of two morphisms; the target of `a` must be the source of `b`."""
    if g.tgt[a] != g.src[b]:
        raise ValueError(f"not composable: tgt({a})={g.tgt[a]} != src({b})={g.src[b]}")
    return g.comp[(a, b)]


def inverse(g: Groupoid, a: str) -> str:
    return g.inv[a]


def difference(g: Groupoid, a: str, b: str) -> str:
    """inv(a) composed with b: the unique k with a∘k = b.

    Defined only for morphisms sharing a source.
    """
    if g.src[a] != g.src[b]:
        raise ValueError(
            f"difference needs a common source: src({a})={g.src[a]} != src({b})={g.src[b]}"
        )
    return g.comp[(g.inv[a], b)]


def _token_ok(name: str) -> bool:
    return bool(name) and not any(c.isspace() for c in name)


def validate_groupoid(g: Groupoid) -> Report:
    """Check every groupoid axiom exhaustively.

    Table malformations (dangling names, missing entries) are reported as
    ``malformed`` and suppress the axiom pass, since the axiom checks assume
    well-formed tables.
    """
    report = Report()
    obs, mors = set(g.objects), set(g.morphisms)

    for x in g.objects:
        if not _token_ok(x):
            report.flag(MALFORMED, "object-name", (repr(x),))
    for m in g.morphisms:
        if not _token_ok(m):
            report.flag(MALFORMED, "morphism-name", (repr(m),))

    for table, rule in ((g.src, "source-table"), (g.tgt, "target-table"), (g.inv, "inversion-table")):
        for m in sorted(mors - set(table)):
            report.flag(MALFORMED, rule, (m,), "missing entry")
        for m in sorted(set(table) - mors):
            report.flag(MALFORMED, rule, (m,), "unknown morphism")
    for m in g.morphisms:
        if m in g.src and g.src[m] not in obs:
            report.flag(MALFORMED, "source-table", (m, g.src[m]), "unknown object")
        if m in g.tgt and g.tgt[m] not in obs:
            report.flag(MALFORMED, "target-table", (m, g.tgt[m]), "unknown object")
        if m in g.inv and g.inv[m] not in mors:
            report.flag(MALFORMED, "inversion-table", (m, g.inv[m]), "unknown morphism")
    for x in sorted(obs - set(g.ident)):
        report.flag(MALFORMED, "identity-table", (x,), "missing entry")
    for x in sorted(set(g.ident) - obs):
        report.flag(MALFORMED, "identity-table", (x,), "unknown object")
    for x in g.objects:
        if x in g.ident and g.ident[x] not in mors:
            report.flag(MALFORMED, "identity-table", (x, g.ident[x]), "unknown morphism")
    for (a, b), c in sorted(g.comp.items()):
        if a not in mors or b not in mors or c not in mors:
            report.flag(MALFORMED, "composition-table", (a, b, c), "unknown morphism")
    if not report.ok:
        return report

    for x in g.objects:
        e = g.ident[x]
        if g.src[e] != x or g.tgt[e] != x:
            report.flag(AXIOM, "identity-endpoints", (x, e), f"src={g.src[e]} tgt={g.tgt[e]}")
    seen: dict[str, str] = {}
    for x in g.objects:
        e = g.ident[x]
        if e in seen:
            report.flag(AXIOM, "identity-distinct", (seen[e], x, e))
        seen[e] = x

    required = {(a, b) for a in g.morphisms for b in g.morphisms if g.tgt[a] == g.src[b]}
    have = set(g.comp)
    for a, b in sorted(required - have):
        report.flag(AXIOM, "composition-totality", (a, b), "composable pair missing")
    for a, b in sorted(have - required):
        report.flag(AXIOM, "composition-domain", (a, b), "non-composable pair present")
    if {"composition-totality", "composition-domain"} & report.rules():
        return report

    by_src = {x: [m for m in g.morphisms if g.src[m] == x] for x in g.objects}

    for (a, b) in sorted(g.comp):
        c = g.comp[(a, b)]
        if g.src[c] != g.src[a] or g.tgt[c] != g.tgt[b]:
            report.flag(AXIOM, "composition-endpoints", (a, b, c))

    for a in g.morphisms:
        for b in by_src[g.tgt[a]]:
            ab = g.comp[(a, b)]
            for c in by_src[g.tgt[b]]:
                lhs = g.comp.get((ab, c))
                rhs = g.comp.get((a, g.comp[(b, c)]))
                if lhs is None or rhs is None or lhs != rhs:
                    report.flag(AXIOM, "associativity", (a, b, c))

    for m in g.morphisms:
        if g.comp.get((g.ident[g.src[m]], m)) != m or g.comp.get((m, g.ident[g.tgt[m]])) != m:
            report.flag(AXIOM, "identity-law", (m,))

    for m in g.morphisms:
        k = g.inv[m]
        if g.src[k] != g.tgt[m] or g.tgt[k] != g.src[m]:
            report.flag(AXIOM, "inverse-endpoints", (m, k))
        if g.comp.get((m, k)) != g.ident[g.src[m]] or g.comp.get((k, m)) != g.ident[g.tgt[m]]:
            report.flag(AXIOM, "inverse-law", (m, k))
    return report


def pair_name(a: str, b: str) -> str:
    return f"({a},{b})"


def product_groupoid(g: Groupoid, h: Groupoid) -> Groupoid:
    """Componentwise product; objects and morphisms are name pairs."""
    objects = [pair_name(x, y) for x in g.objects for y in h.objects]
    pairs = {pair_name(a, b): (a, b) for a in g.morphisms for b in h.morphisms}
    src = {n: pair_name(g.src[a], h.src[b]) for n, (a, b) in pairs.items()}
    tgt = {n: pair_name(g.tgt[a], h.tgt[b]) for n, (a, b) in pairs.items()}
    ident = {
        pair_name(x, y): pair_name(g.ident[x], h.ident[y])
        for x in g.objects
        for y in h.objects
    }
    inv = {n: pair_name(g.inv[a], h.inv[b]) for n, (a, b) in pairs.items()}
    comp = {}
    for (a1, a2), a12 in g.comp.items():
        for (b1, b2), b12 in h.comp.items():
            comp[(pair_name(a1, b1), pair_name(a2, b2))] = pair_name(a12, b12)
    return Groupoid.from_tables(objects, pairs, src, tgt, ident, comp, inv)


class GeneratedSubgroupoid(NamedTuple):
    members: tuple[str, ...]
    generates: bool


def subgroupoid_generated(g: Groupoid, seed: Iterable[str]) -> GeneratedSubgroupoid:
    """Closure of the seed (plus all identities) under composition and inversion."""
    members = set(g.ident.values())
    seed = set(seed)
    unknown = seed - set(g.morphisms)
    if unknown:
        raise ValueError(f"unknown morphisms: {sorted(unknown)}")
    members |= seed
    members |= {g.inv[m] for m in members}
    changed = True
    while changed:
        changed = False
        for a in list(members):
            for b in list(members):
                c = g.comp.get((a, b))
                if c is not None and c not in members:
                    members.add(c)
                    changed = True
        fresh = {g.inv[m] for m in members} - members
        if fresh:
            members |= fresh
            changed = True
    return GeneratedSubgroupoid(tuple(sorted(members)), len(members) == len(g.morphisms))
