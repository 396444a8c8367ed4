"""Admissible local sections, their inverse semigroup, and the holonomy quotient.

A section picks one outgoing morphism per object of its domain, injectively
on targets; sections multiply by following the target of the first into the
domain of the second, and every section has a semigroup inverse, so the set
of all sections is an inverse semigroup.  Object sets are discrete here, so
a germ is determined by its point and its value and the holonomy quotient of
germs of generator-valued products degenerates to the subgroupoid generated
by the generators; the construction is still carried out literally (germs,
kernel germs, quotient classes) so the degeneracy is computed, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping

from .groupoid import Groupoid, subgroupoid_generated
from .report import AXIOM, MALFORMED, Report, ValidationFailed
from .stars import StarredGroupoid


class Section:
    """An admissible local section: object -> outgoing morphism."""

    __slots__ = ("values",)

    def __init__(self, values: Mapping[str, str]):
        self.values = {x: values[x] for x in sorted(values)}

    @property
    def domain(self) -> tuple[str, ...]:
        return tuple(self.values)

    def _key(self) -> tuple[tuple[str, str], ...]:
        return tuple(self.values.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, Section) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        inner = ",".join(f"{x}->{m}" for x, m in self.values.items())
        return f"Section({inner})"


def validate_section(sg: StarredGroupoid, s: Section) -> Report:
    g = sg.gpd
    report = Report()
    for x, m in s.values.items():
        if x not in set(g.objects):
            report.flag(MALFORMED, "section-domain", (x,), "unknown object")
        elif m not in set(g.morphisms):
            report.flag(MALFORMED, "section-value", (x, m), "unknown morphism")
        elif g.src[m] != x:
            report.flag(AXIOM, "section-source", (x, m), f"src={g.src[m]}")
    if not report.ok:
        return report
    seen: dict[str, str] = {}
    for x, m in s.values.items():
        y = g.tgt[m]
        if y in seen:
            report.flag(AXIOM, "section-target-injective", (seen[y], x, y))
        seen[y] = x
    return report


def identity_section(sg: StarredGroupoid, objs: Iterable[str]) -> Section:
    return Section({x: sg.gpd.ident[x] for x in objs})


def section_product(sg: StarredGroupoid, s: Section, t: Section) -> Section:
    """Follow s, then t at the target of s; defined where the chain exists."""
    g = sg.gpd
    out = {}
    for x, m in s.values.items():
        y = g.tgt[m]
        if y in t.values:
            out[x] = g.comp[(m, t.values[y])]
    return Section(out)


def section_composable(sg: StarredGroupoid, s: Section, t: Section) -> bool:
    """True when the product keeps all of s's domain."""
    g = sg.gpd
    return all(g.tgt[m] in t.values for m in s.values.values())


def section_inverse(sg: StarredGroupoid, s: Section) -> Section:
    g = sg.gpd
    return Section({g.tgt[m]: g.inv[m] for m in s.values.values()})


def all_sections(sg: StarredGroupoid, max_domain: int) -> list[Section]:
    """Every admissible section with domain size up to the bound, empty included."""
    g = sg.gpd
    out = [Section({})]
    for size in range(1, max_domain + 1):
        for objs in combinations(g.objects, size):
            stars = [sg.star_members(x) for x in objs]
            for choice in product(*stars):
                targets = [g.tgt[m] for m in choice]
                if len(set(targets)) == len(targets):
                    out.append(Section(dict(zip(objs, choice))))
    return out


@dataclass(frozen=True)
class Germ:
    """Germ of a section at a point; with discrete objects this is just (point, value)."""

    at: str
    value: str


def psi(germ: Germ) -> str:
    return germ.value


def section_germs(sg: StarredGroupoid, s: Section) -> list[Germ]:
    return [Germ(x, s.values[x]) for x in s.domain]


def germ_product(sg: StarredGroupoid, g1: Germ, g2: Germ) -> Germ:
    g = sg.gpd
    if g2.at != g.tgt[g1.value]:
        raise ValueError(f"germs not composable: {g.tgt[g1.value]} != {g2.at}")
    return Germ(g1.at, g.comp[(g1.value, g2.value)])


def germ_identity(sg: StarredGroupoid, x: str) -> Germ:
    return Germ(x, sg.gpd.ident[x])


def enough_sections(sg: StarredGroupoid, wset: Iterable[str]) -> dict[str, Section]:
    """A generator-valued section through every generator: the singleton at its source."""
    g = sg.gpd
    return {w: Section({g.src[w]: w}) for w in sorted(set(wset))}


def _check_generating_set(sg: StarredGroupoid, members: frozenset[str]) -> Report:
    g = sg.gpd
    report = Report()
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
    return report


@dataclass(frozen=True)
class Holonomy:
    """Quotient of generator-product germs by the identity-valued kernel germs."""

    groupoid: Groupoid
    phi: dict[str, str]
    generates: bool
    kernel_germs: tuple[Germ, ...]

    def quotient_map(self, germ: Germ) -> str:
        name = f"<{germ.value}>"
        if name not in self.phi:
            raise ValueError(f"germ value {germ.value} is not a generator product")
        return name


def holonomy(sg: StarredGroupoid, wset: Iterable[str]) -> Holonomy:
    """Build the holonomy groupoid over a discrete object set.

    The generators must contain the identities and be inversion-closed
    (failures raise with the offending element).  Whether they generate the
    whole ambient groupoid is recorded on the result; the construction itself
    lives on the subgroupoid they do generate.
    """
    g = sg.gpd
    members = frozenset(wset)
    _check_generating_set(sg, members).raise_if_failed("holonomy generators")

    reachable = set(subgroupoid_generated(g, members).members)
    germs = [Germ(g.src[m], m) for m in sorted(reachable)]
    kernel = tuple(
        germ for germ in germs if germ.value in members and g.is_identity(germ.value)
    )

    kernel_at: dict[str, list[Germ]] = {}
    for germ in kernel:
        kernel_at.setdefault(germ.at, []).append(germ)

    def germ_class(germ: Germ) -> frozenset[Germ]:
        left = kernel_at.get(germ.at, [germ_identity(sg, germ.at)])
        right = kernel_at.get(g.tgt[germ.value], [germ_identity(sg, g.tgt[germ.value])])
        return frozenset(
            germ_product(sg, germ_product(sg, a, germ), b) for a in left for b in right
        )

    classes: dict[str, frozenset[Germ]] = {}
    phi: dict[str, str] = {}
    for germ in germs:
        name = f"<{germ.value}>"
        classes[name] = germ_class(germ)
        phi[name] = germ.value

    names = sorted(classes)
    src = {n: g.src[phi[n]] for n in names}
    tgt = {n: g.tgt[phi[n]] for n in names}
    ident = {x: f"<{g.ident[x]}>" for x in g.objects}
    comp = {}
    for a in names:
        for b in names:
            if tgt[a] == src[b]:
                comp[(a, b)] = f"<{g.comp[(phi[a], phi[b])]}>"
    inv = {n: f"<{g.inv[phi[n]]}>" for n in names}
    quotient = Groupoid.from_tables(g.objects, names, src, tgt, ident, comp, inv)
    return Holonomy(quotient, phi, len(reachable) == len(g.morphisms), kernel)


def check_extendibility(sg: StarredGroupoid, wset: Iterable[str], max_len: int = 3) -> Report:
    """Restriction condition on identity-valued products of generator sections.

    Every product of singleton generator-valued sections whose value at its
    point is the identity must restrict, at that point, to a generator-valued
    section; over discrete objects the restriction is the identity singleton,
    so this passes as long as the generators contain the identities.  The
    report records how many products were examined.
    """
    g = sg.gpd
    members = frozenset(wset)
    report = _check_generating_set(sg, members)
    if not report.ok:
        return report
    by_src: dict[str, list[str]] = {}
    for u in sorted(members):
        by_src.setdefault(g.src[u], []).append(u)

    checked = 0
    identity_valued = 0
    chains: list[tuple[str, str]] = [(u, g.tgt[u]) for u in sorted(members)]
    for _ in range(max_len):
        for value, end in chains:
            checked += 1
            x = g.src[value]
            if g.is_identity(value):
                identity_valued += 1
                if g.ident[x] not in members:
                    report.flag(AXIOM, "extendibility", (x, value), "restriction escapes generators")
        chains = [
            (g.comp[(value, u)], g.tgt[u])
            for value, end in chains
            for u in by_src.get(end, ())
        ]
    report.diagnostic(
        "extendibility-checked",
        f"{checked} products up to length {max_len}, {identity_valued} identity-valued",
    )
    return report
