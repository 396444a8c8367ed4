"""Command-line driver.

Exit codes: 0 for success / a true answer, 1 for a false answer or a failed
validation, 2 for usage and parse errors.  All output is deterministic given
identical inputs.
"""

from __future__ import annotations

import argparse
import sys

from .ggdfile import Loaded, ParseError, load_path
from .globalize import (
    LocalMorphism,
    check_group_morphism,
    extend_strong,
    extend_weak,
)
from .monodromy import (
    MonGroupoid,
    format_mon,
    mon_compose,
    mon_enumerate,
    mon_group_mul,
    mon_inverse,
    mon_product_split,
    mon_project,
    parse_mon,
)
from .presentation import Presentation, parse_word
from .report import Report, ValidationFailed
from .sections import (
    all_sections,
    germ_product,
    holonomy,
    psi,
    section_germs,
    section_inverse,
    section_product,
    validate_section,
)
from .groupoid import subgroupoid_generated
from .stars import product_starred

MAX_REPORT_LINES = 20


def _print_report(context: str, report: Report) -> None:
    print(f"invalid ({context}): {len(report.violations)} violations")
    lines = report.lines()
    for line in lines[:MAX_REPORT_LINES]:
        print("  " + line)
    if len(lines) > MAX_REPORT_LINES:
        print(f"  ... ({len(lines)} entries total)")


def _load(path: str) -> Loaded:
    return load_path(path)


def cmd_validate(args) -> int:
    loaded = _load(args.file)
    sg = loaded.sg
    kind = "group-groupoid" if sg.is_group else "groupoid"
    print(
        f"ok: {kind} with {len(sg.objects)} objects, {len(sg.morphisms)} morphisms, "
        f"{sum(len(sg.star_graph(x).edges) for x in sg.objects)} star edges"
    )
    if loaded.wset is not None:
        print(f"ok: [W] with {len(loaded.wset)} morphisms")
    if loaded.local is not None:
        print(f"ok: local morphism with {len(loaded.local.mapping)} entries")
    return 0


def cmd_mon(args) -> int:
    loaded = _load(args.file)
    mg = MonGroupoid(loaded.sg)
    if args.object not in set(loaded.sg.objects):
        print(f"error: unknown object {args.object}", file=sys.stderr)
        return 2
    elements = mg.elements(args.object, args.max_len)
    print(f"{len(elements)} elements")
    for a in sorted(elements, key=lambda m: (m.path.nsteps(), m.path.vertices)):
        print(f"{format_mon(a)} -> {mon_project(loaded.sg, a)}")
    return 0


def cmd_mon_compose(args) -> int:
    loaded = _load(args.file)
    sg = loaded.sg
    a = parse_mon(sg, args.a)
    b = parse_mon(sg, args.b)
    c = mon_compose(sg, a, b)
    print(f"result {format_mon(c)}")
    print(f"project {mon_project(sg, c)}")
    return 0


def cmd_mgw_eq(args) -> int:
    loaded = _load(args.file)
    sg = loaded.sg
    if loaded.wset is None:
        print("error: the file has no [W] section", file=sys.stderr)
        return 2
    w1 = parse_word(sg, args.w1)
    w2 = parse_word(sg, args.w2)
    pres = Presentation(sg, loaded.wset, loaded.vset)
    if w1.source != w2.source:
        print("distinct: sources differ")
        return 1
    m1, m2 = pres.to_mon(w1), pres.to_mon(w2)
    if m1 == m2:
        print("equal")
        return 0
    if mon_project(sg, m1) == mon_project(sg, m2):
        print("distinct: winding detected")
    else:
        print("distinct: projections differ")
    return 1


def cmd_extend(args) -> int:
    loaded = _load(args.file)
    if (args.word is None) == (args.morphism is None):
        print("error: provide exactly one of --word or --morphism", file=sys.stderr)
        return 2
    if loaded.wset is None:
        print("error: the file has no [W] section", file=sys.stderr)
        return 2
    if loaded.local is None and args.target is None:
        print("error: no [local-morphism] section and no --target", file=sys.stderr)
        return 2
    if args.target is not None:
        target = _load(args.target).sg
        mapping = dict(loaded.local.mapping) if loaded.local else {u: u for u in loaded.wset}
        f = LocalMorphism(dom=loaded.sg, wset=loaded.wset, target=target, mapping=mapping)
    else:
        f = loaded.local
    if args.word is not None:
        ext = extend_weak(f)
        value = ext.on_word(parse_word(loaded.sg, args.word))
    else:
        ext = extend_strong(f)
        value = ext.on_morphism(args.morphism)
    print(f"result {value}")
    return 0


def cmd_product_check(args) -> int:
    a = _load(args.file1).sg
    b = _load(args.file2).sg
    prod = product_starred(a, b)
    bound = args.max_len
    failures = 0
    total_forms = 0
    pairs_checked = 0
    group_checked = 0
    for x in prod.objects:
        forms = mon_enumerate(prod, x, bound)
        total_forms += len(forms)
        split = {m: mon_product_split(prod, m) for m in forms}
        if len(set(split.values())) != len(forms):
            print(f"split not injective on star {x}")
            failures += 1
        x1, x2 = prod.obj_pairs[x]
        expect = {
            (m1, m2)
            for m1 in mon_enumerate(prod.product_tag[0], x1, bound)
            for m2 in mon_enumerate(prod.product_tag[1], x2, bound)
        }
        if set(split.values()) != expect:
            print(f"split not onto factor pairs on star {x}")
            failures += 1
        for m in forms:
            s1, s2 = split[m]
            i1, i2 = mon_product_split(prod, mon_inverse(prod, m))
            if (i1, i2) != (
                mon_inverse(prod.product_tag[0], s1),
                mon_inverse(prod.product_tag[1], s2),
            ):
                print(f"inverse not componentwise at {format_mon(m)}")
                failures += 1
    all_forms = [m for x in prod.objects for m in mon_enumerate(prod, x, bound)]
    from .monodromy import mon_target

    for m in all_forms:
        for n in all_forms:
            if mon_target(prod, m) == n.base:
                pairs_checked += 1
                c1, c2 = mon_product_split(prod, mon_compose(prod, m, n))
                s1, s2 = mon_product_split(prod, m)
                t1, t2 = mon_product_split(prod, n)
                if c1 != mon_compose(prod.product_tag[0], s1, t1) or c2 != mon_compose(
                    prod.product_tag[1], s2, t2
                ):
                    print(f"composition not componentwise at {format_mon(m)}, {format_mon(n)}")
                    failures += 1
            if prod.is_group:
                group_checked += 1
                p1, p2 = mon_product_split(prod, mon_group_mul(prod, m, n))
                s1, s2 = mon_product_split(prod, m)
                t1, t2 = mon_product_split(prod, n)
                if p1 != mon_group_mul(prod.product_tag[0], s1, t1) or p2 != mon_group_mul(
                    prod.product_tag[1], s2, t2
                ):
                    print(f"group product not componentwise at {format_mon(m)}, {format_mon(n)}")
                    failures += 1
    print(f"canonical forms {total_forms} (component length <= {bound})")
    print(f"compositions checked {pairs_checked}")
    if prod.is_group:
        print(f"group products checked {group_checked}")
    if failures:
        print(f"FAIL: {failures} violations")
        return 1
    print("split/join checks passed")
    return 0


def cmd_holonomy(args) -> int:
    loaded = _load(args.file)
    if loaded.wset is None:
        print("error: the file has no [W] section", file=sys.stderr)
        return 2
    hol = holonomy(loaded.sg, loaded.wset)
    gen = subgroupoid_generated(loaded.sg.gpd, loaded.wset)
    print(f"objects {len(hol.groupoid.objects)}")
    print(f"morphisms {len(hol.groupoid.morphisms)}")
    print(f"generates {'yes' if hol.generates else 'no'}")
    print(f"kernel germs {len(hol.kernel_germs)}")
    image = tuple(sorted(hol.phi.values()))
    print(f"projection onto generated subgroupoid {'ok' if image == gen.members else 'MISMATCH'}")
    return 0 if image == gen.members else 1


def cmd_sections(args) -> int:
    loaded = _load(args.file)
    sg = loaded.sg
    sections = all_sections(sg, args.max_domain)
    bad = 0
    for s in sections:
        rep = validate_section(sg, s)
        if not rep.ok:
            bad += 1
        sss = section_product(sg, section_product(sg, s, section_inverse(sg, s)), s)
        if sss != s:
            print(f"inverse law fails at {s!r}")
            bad += 1
    idem = [s for s in sections if section_product(sg, s, s) == s]
    for s in idem:
        for t in idem:
            if section_product(sg, s, t) != section_product(sg, t, s):
                print(f"idempotents do not commute: {s!r}, {t!r}")
                bad += 1
    morphism_ok = True
    germs = [germ for s in sections for germ in section_germs(sg, s)]
    germs = sorted(set(germs), key=lambda g: (g.at, g.value))
    for g1 in germs:
        for g2 in germs:
            if g2.at == sg.gpd.tgt[g1.value]:
                if psi(germ_product(sg, g1, g2)) != sg.gpd.comp[(psi(g1), psi(g2))]:
                    morphism_ok = False
    print(f"sections {len(sections)} (max domain {args.max_domain})")
    print(f"idempotents {len(idem)}")
    print(f"inverse semigroup laws {'ok' if bad == 0 else 'FAIL'}")
    print(f"value map is a morphism {'ok' if morphism_ok else 'FAIL'}")
    return 0 if bad == 0 and morphism_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ggd", description="finite groupoid toolkit over GGD v1 files"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse, load and validate a file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("mon", help="enumerate monodromy elements at one object")
    p.add_argument("file")
    p.add_argument("--object", required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(fn=cmd_mon)

    p = sub.add_parser("mon-compose", help="compose two monodromy elements")
    p.add_argument("file")
    p.add_argument("--a", required=True, help="path literal, e.g. [(0,0),(0,1)] or [@x]")
    p.add_argument("--b", required=True)
    p.set_defaults(fn=cmd_mon_compose)

    p = sub.add_parser("mgw-eq", help="decide word equality through the oracle")
    p.add_argument("file")
    p.add_argument("--w1", required=True, help="word literal, e.g. [(0,1),(1,2)] or [@x]")
    p.add_argument("--w2", required=True)
    p.set_defaults(fn=cmd_mgw_eq)

    p = sub.add_parser("extend", help="extend the file's local morphism")
    p.add_argument("file")
    p.add_argument("--target", help="override the target file")
    p.add_argument("--word", help="evaluate the weak extension on a word literal")
    p.add_argument("--morphism", help="evaluate the strong extension on a morphism")
    p.set_defaults(fn=cmd_extend)

    p = sub.add_parser("product-check", help="componentwise monodromy over a product")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(fn=cmd_product_check)

    p = sub.add_parser("holonomy", help="holonomy quotient over the file's [W]")
    p.add_argument("file")
    p.set_defaults(fn=cmd_holonomy)

    p = sub.add_parser("sections", help="inverse semigroup checks on local sections")
    p.add_argument("file")
    p.add_argument("--max-domain", type=int, default=2)
    p.set_defaults(fn=cmd_sections)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValidationFailed as exc:
        _print_report(exc.context, exc.report)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
