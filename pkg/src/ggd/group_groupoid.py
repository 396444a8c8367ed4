"""Group-groupoids: compatible group structures on objects and morphisms.

The compatibility condition between the groupoid composition and the two
group products is the interchange identity

    (g·h) ∘ (k·l)  =  (g∘k) · (h∘l)

whenever tgt(g)=src(k) and tgt(h)=src(l).  The validator checks it
exhaustively over all pairs of composable pairs, which is exact at the table
sizes this package targets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groupoid import Groupoid, pair_name, product_groupoid, validate_groupoid
from .report import AXIOM, MALFORMED, Report


@dataclass(frozen=True)
class GroupGroupoid:
    base: Groupoid
    obj_mul: dict[tuple[str, str], str]
    obj_inv: dict[str, str]
    obj_unit: str
    mor_mul: dict[tuple[str, str], str]
    mor_inv: dict[str, str]
    mor_unit: str


def _check_group_table(report: Report, prefix: str, elems: tuple[str, ...], mul, invmap, unit) -> None:
    """Exhaustive group-axiom check for one multiplication table."""
    universe = set(elems)
    if unit not in universe:
        report.flag(MALFORMED, f"{prefix}-group-unit", (unit,), "unknown element")
        return
    total = True
    for a in elems:
        for b in elems:
            c = mul.get((a, b))
            if c is None:
                report.flag(AXIOM, f"{prefix}-group-closure", (a, b), "missing entry")
                total = False
            elif c not in universe:
                report.flag(MALFORMED, f"{prefix}-group-closure", (a, b, c), "unknown element")
                total = False
    for a in sorted(set(invmap) - universe):
        report.flag(MALFORMED, f"{prefix}-group-inverse-table", (a,), "unknown element")
        total = False
    for a in elems:
        if a not in invmap or invmap[a] not in universe:
            report.flag(MALFORMED, f"{prefix}-group-inverse-table", (a,))
            total = False
    if not total:
        return
    for a in elems:
        if mul[(unit, a)] != a or mul[(a, unit)] != a:
            report.flag(AXIOM, f"{prefix}-group-unit-law", (a,))
        if mul[(a, invmap[a])] != unit or mul[(invmap[a], a)] != unit:
            report.flag(AXIOM, f"{prefix}-group-inverse-law", (a, invmap[a]))
    for a in elems:
        for b in elems:
            ab = mul[(a, b)]
            for c in elems:
                if mul[(ab, c)] != mul[(a, mul[(b, c)])]:
                    report.flag(AXIOM, f"{prefix}-group-associativity", (a, b, c))


def validate_group_groupoid(gg: GroupGroupoid) -> Report:
    """Exhaustive check of the group-groupoid axioms.

    Returns the base groupoid's report unchanged if that already fails.  For
    one-object inputs a diagnostic records the forced coincidence of the two
    operations (and their commutativity); it is informational, not an error.
    """
    report = validate_groupoid(gg.base)
    if not report.ok:
        return report
    g = gg.base
    _check_group_table(report, "object", g.objects, gg.obj_mul, gg.obj_inv, gg.obj_unit)
    _check_group_table(report, "morphism", g.morphisms, gg.mor_mul, gg.mor_inv, gg.mor_unit)
    if not report.ok:
        return report

    for a in g.morphisms:
        for b in g.morphisms:
            ab = gg.mor_mul[(a, b)]
            if g.src[ab] != gg.obj_mul[(g.src[a], g.src[b])]:
                report.flag(AXIOM, "source-homomorphism", (a, b, ab))
            if g.tgt[ab] != gg.obj_mul[(g.tgt[a], g.tgt[b])]:
                report.flag(AXIOM, "target-homomorphism", (a, b, ab))
    for x in g.objects:
        for y in g.objects:
            if gg.mor_mul[(g.ident[x], g.ident[y])] != g.ident[gg.obj_mul[(x, y)]]:
                report.flag(AXIOM, "identity-homomorphism", (x, y))
    if gg.mor_unit != g.ident[gg.obj_unit]:
        report.flag(AXIOM, "unit-identity", (gg.mor_unit, g.ident[gg.obj_unit]))

    composable = [(a, b) for a in g.morphisms for b in g.morphisms if g.tgt[a] == g.src[b]]
    for gm, km in composable:
        gk = g.comp[(gm, km)]
        for hm, lm in composable:
            lhs = g.comp.get((gg.mor_mul[(gm, hm)], gg.mor_mul[(km, lm)]))
            if lhs != gg.mor_mul[(gk, g.comp[(hm, lm)])]:
                report.flag(AXIOM, "interchange", (gm, hm, km, lm))

    if len(g.objects) == 1 and report.ok:
        coincide = all(gg.mor_mul[(a, b)] == g.comp[(a, b)] for a in g.morphisms for b in g.morphisms)
        abelian = all(gg.mor_mul[(a, b)] == gg.mor_mul[(b, a)] for a in g.morphisms for b in g.morphisms)
        report.diagnostic(
            "eckmann-hilton",
            f"one object: product coincides with composition={coincide}, commutative={abelian}",
        )
    return report


def product_group_groupoid(a: GroupGroupoid, b: GroupGroupoid) -> GroupGroupoid:
    """Componentwise product of two group-groupoids."""
    base = product_groupoid(a.base, b.base)
    obj_mul = {}
    obj_inv = {}
    for x1 in a.base.objects:
        for y1 in b.base.objects:
            obj_inv[pair_name(x1, y1)] = pair_name(a.obj_inv[x1], b.obj_inv[y1])
            for x2 in a.base.objects:
                for y2 in b.base.objects:
                    obj_mul[(pair_name(x1, y1), pair_name(x2, y2))] = pair_name(
                        a.obj_mul[(x1, x2)], b.obj_mul[(y1, y2)]
                    )
    mor_mul = {}
    mor_inv = {}
    for m1 in a.base.morphisms:
        for n1 in b.base.morphisms:
            mor_inv[pair_name(m1, n1)] = pair_name(a.mor_inv[m1], b.mor_inv[n1])
            for m2 in a.base.morphisms:
                for n2 in b.base.morphisms:
                    mor_mul[(pair_name(m1, n1), pair_name(m2, n2))] = pair_name(
                        a.mor_mul[(m1, m2)], b.mor_mul[(n1, n2)]
                    )
    return GroupGroupoid(
        base=base,
        obj_mul=obj_mul,
        obj_inv=obj_inv,
        obj_unit=pair_name(a.obj_unit, b.obj_unit),
        mor_mul=mor_mul,
        mor_inv=mor_inv,
        mor_unit=pair_name(a.mor_unit, b.mor_unit),
    )
