"""The GGD v1 text format: parse, load, emit.

Line oriented, ``#`` starts a comment, tokens are whitespace separated.
Sections appear at most once; ``[objects]``, ``[morphisms]``,
``[identities]``, ``[compose]`` and ``[star-edges]`` are required, the three
group sections are all-or-none, and ``[W]``, ``[V]`` and
``[local-morphism PATH]`` are optional.  Inversion tables are never written:
loading derives each inverse as the unique solution of g∘k = identity and
then re-validates everything.  Emitting is canonical (sorted lines), so a
canonical file is a fixed point of parse-then-emit.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import NamedTuple

from .globalize import LocalMorphism, validate_local_morphism
from .group_groupoid import GroupGroupoid, validate_group_groupoid
from .groupoid import Groupoid, validate_groupoid
from .report import MALFORMED, Report, ValidationFailed
from .stars import StarGraph, StarredGroupoid, edge, validate_star_structure


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


REQUIRED_SECTIONS = ("objects", "morphisms", "identities", "compose", "star-edges")
GROUP_SECTIONS = ("object-product", "object-unit", "morphism-product")
ALL_SECTIONS = REQUIRED_SECTIONS + GROUP_SECTIONS + ("W", "V", "local-morphism")


@dataclass
class Document:
    objects: list[str] = field(default_factory=list)
    object_product: list[tuple[str, str, str]] = field(default_factory=list)
    object_unit: str | None = None
    morphisms: list[tuple[str, str, str]] = field(default_factory=list)
    identities: list[tuple[str, str]] = field(default_factory=list)
    compose: list[tuple[str, str, str]] = field(default_factory=list)
    morphism_product: list[tuple[str, str, str]] = field(default_factory=list)
    star_edges: list[tuple[str, str, str]] = field(default_factory=list)
    w_set: list[str] | None = None
    v_set: list[str] | None = None
    local_target: str | None = None
    local_map: list[tuple[str, str]] = field(default_factory=list)


def _tokens(line: str) -> list[str]:
    return line.split("#", 1)[0].split()


def parse(text: str) -> Document:
    doc = Document()
    seen: set[str] = set()
    section: str | None = None
    version_seen = False
    seen_morphisms: dict[str, int] = {}
    seen_objects: dict[str, int] = {}
    seen_keys: dict[tuple, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        if not version_seen:
            if toks != ["ggd", "1"]:
                raise ParseError(lineno, f"expected version line 'ggd 1', got {' '.join(toks)!r}")
            version_seen = True
            continue
        if toks[0].startswith("["):
            header = " ".join(toks)
            if not header.endswith("]"):
                raise ParseError(lineno, f"bad section header {header!r}")
            inner = header[1:-1].strip()
            parts = inner.split()
            name = parts[0] if parts else ""
            if name == "local-morphism":
                if len(parts) != 2:
                    raise ParseError(lineno, "[local-morphism] needs exactly one target path")
                doc.local_target = parts[1]
            elif len(parts) != 1 or name not in ALL_SECTIONS:
                raise ParseError(lineno, f"unknown section {header!r}")
            if name in seen:
                raise ParseError(lineno, f"duplicate section [{name}]")
            seen.add(name)
            section = name
            continue
        if section is None:
            raise ParseError(lineno, f"content before any section: {raw.strip()!r}")

        if section == "objects":
            for t in toks:
                if t in seen_objects:
                    raise ParseError(lineno, f"duplicate object {t!r} (first at line {seen_objects[t]})")
                seen_objects[t] = lineno
                doc.objects.append(t)
        elif section == "object-product":
            if len(toks) != 3:
                raise ParseError(lineno, "[object-product] lines need 3 tokens: x y xy")
            key = ("op", toks[0], toks[1])
            if key in seen_keys:
                raise ParseError(lineno, f"duplicate object product for ({toks[0]},{toks[1]})")
            seen_keys[key] = lineno
            doc.object_product.append((toks[0], toks[1], toks[2]))
        elif section == "object-unit":
            if len(toks) != 1 or doc.object_unit is not None:
                raise ParseError(lineno, "[object-unit] holds exactly one name")
            doc.object_unit = toks[0]
        elif section == "morphisms":
            if len(toks) != 3:
                raise ParseError(lineno, "[morphisms] lines need 3 tokens: name src tgt")
            if toks[0] in seen_morphisms:
                raise ParseError(
                    lineno, f"duplicate morphism {toks[0]!r} (first at line {seen_morphisms[toks[0]]})"
                )
            seen_morphisms[toks[0]] = lineno
            doc.morphisms.append((toks[0], toks[1], toks[2]))
        elif section == "identities":
            if len(toks) != 2:
                raise ParseError(lineno, "[identities] lines need 2 tokens: name obj")
            key = ("id", toks[1])
            if key in seen_keys:
                raise ParseError(lineno, f"duplicate identity for object {toks[1]!r}")
            seen_keys[key] = lineno
            doc.identities.append((toks[0], toks[1]))
        elif section == "compose":
            if len(toks) != 3:
                raise ParseError(lineno, "[compose] lines need 3 tokens: g h gh")
            key = ("c", toks[0], toks[1])
            if key in seen_keys:
                raise ParseError(lineno, f"duplicate composition for ({toks[0]},{toks[1]})")
            seen_keys[key] = lineno
            doc.compose.append((toks[0], toks[1], toks[2]))
        elif section == "morphism-product":
            if len(toks) != 3:
                raise ParseError(lineno, "[morphism-product] lines need 3 tokens: g h gh")
            key = ("mp", toks[0], toks[1])
            if key in seen_keys:
                raise ParseError(lineno, f"duplicate morphism product for ({toks[0]},{toks[1]})")
            seen_keys[key] = lineno
            doc.morphism_product.append((toks[0], toks[1], toks[2]))
        elif section == "star-edges":
            if len(toks) != 3:
                raise ParseError(lineno, "[star-edges] lines need 3 tokens: obj g h")
            key = ("se", toks[0]) + edge(toks[1], toks[2])
            if key in seen_keys:
                raise ParseError(lineno, f"duplicate star edge {toks[1]} -- {toks[2]}")
            seen_keys[key] = lineno
            doc.star_edges.append((toks[0], toks[1], toks[2]))
        elif section in ("W", "V"):
            bucket = doc.w_set if section == "W" else doc.v_set
            if bucket is None:
                bucket = []
                if section == "W":
                    doc.w_set = bucket
                else:
                    doc.v_set = bucket
            for t in toks:
                if t in bucket:
                    raise ParseError(lineno, f"duplicate entry {t!r} in [{section}]")
                bucket.append(t)
        elif section == "local-morphism":
            if len(toks) != 2:
                raise ParseError(lineno, "[local-morphism] lines need 2 tokens: u f(u)")
            key = ("lm", toks[0])
            if key in seen_keys:
                raise ParseError(lineno, f"duplicate local-morphism entry for {toks[0]!r}")
            seen_keys[key] = lineno
            doc.local_map.append((toks[0], toks[1]))

    if not version_seen:
        raise ParseError(1, "missing version line 'ggd 1'")
    for name in REQUIRED_SECTIONS:
        if name not in seen:
            raise ParseError(1, f"missing required section [{name}]")
    group_present = [name for name in GROUP_SECTIONS if name in seen]
    if group_present and len(group_present) != len(GROUP_SECTIONS):
        missing = [name for name in GROUP_SECTIONS if name not in seen]
        raise ParseError(1, f"group sections are all-or-none; missing {missing}")
    if "W" in seen and doc.w_set is None:
        doc.w_set = []
    if "V" in seen and doc.v_set is None:
        doc.v_set = []
    return doc


class Loaded(NamedTuple):
    sg: StarredGroupoid
    wset: frozenset[str] | None
    vset: frozenset[str] | None
    local: LocalMorphism | None
    local_target: str | None


def _derive_inverses(elems, mul, unit_of, rule: str) -> tuple[dict[str, str], Report]:
    report = Report()
    inv = {}
    for m in elems:
        e = unit_of(m)
        candidates = [k for k in elems if e is not None and mul.get((m, k)) == e]
        if len(candidates) == 1:
            inv[m] = candidates[0]
        else:
            report.flag(MALFORMED, rule, (m,), f"{len(candidates)} solutions of composition to the identity")
    return inv, report


def load(doc: Document, base_dir: str = ".", _depth: int = 0) -> Loaded:
    """Build and validate the structures described by a parsed document."""
    if _depth > 8:
        raise ValidationFailed("local-morphism target", _single(MALFORMED, "target-recursion", ()))

    objects = list(doc.objects)
    obj_set = set(objects)
    names = [n for n, _, _ in doc.morphisms]
    src = {n: s for n, s, _ in doc.morphisms}
    tgt = {n: t for n, _, t in doc.morphisms}
    ident = {obj: name for name, obj in doc.identities}
    comp = {(a, b): c for a, b, c in doc.compose}

    pre = Report()
    for n in names:
        if src[n] not in obj_set:
            pre.flag(MALFORMED, "source-table", (n, src[n]), "unknown object")
        if tgt[n] not in obj_set:
            pre.flag(MALFORMED, "target-table", (n, tgt[n]), "unknown object")
    for obj, name in sorted(ident.items()):
        if obj not in obj_set:
            pre.flag(MALFORMED, "identity-table", (obj,), "unknown object")
        if name not in set(names):
            pre.flag(MALFORMED, "identity-table", (obj, name), "unknown morphism")
    for x, g, h in doc.star_edges:
        if x not in obj_set:
            pre.flag(MALFORMED, "star-graph", (x,), "unknown object")
    pre.raise_if_failed("tables")

    inv, rep = _derive_inverses(
        names, comp, lambda m: ident.get(src.get(m)), "inverse-derivation"
    )
    rep.raise_if_failed("inverse derivation")
    gpd = Groupoid.from_tables(objects, names, src, tgt, ident, comp, inv)
    validate_groupoid(gpd).raise_if_failed("groupoid")

    group = None
    if doc.object_unit is not None:
        obj_mul = {(x, y): z for x, y, z in doc.object_product}
        mor_mul = {(a, b): c for a, b, c in doc.morphism_product}
        if doc.object_unit not in obj_set:
            raise ValidationFailed("group tables", _single(MALFORMED, "object-unit", (doc.object_unit,)))
        obj_inv, rep = _derive_inverses(
            objects, obj_mul, lambda x: doc.object_unit, "object-inverse-derivation"
        )
        rep.raise_if_failed("object inverse derivation")
        mor_unit = ident[doc.object_unit]
        mor_inv, rep = _derive_inverses(
            names, mor_mul, lambda m: mor_unit, "morphism-inverse-derivation"
        )
        rep.raise_if_failed("morphism inverse derivation")
        group = GroupGroupoid(
            base=gpd,
            obj_mul=obj_mul,
            obj_inv=obj_inv,
            obj_unit=doc.object_unit,
            mor_mul=mor_mul,
            mor_inv=mor_inv,
            mor_unit=mor_unit,
        )
        validate_group_groupoid(group).raise_if_failed("group-groupoid")

    edges_by_obj: dict[str, list[tuple[str, str]]] = {x: [] for x in objects}
    for x, g, h in doc.star_edges:
        edges_by_obj[x].append((g, h))
    stars = {x: StarGraph.from_pairs(x, pairs) for x, pairs in edges_by_obj.items()}
    sg = StarredGroupoid(gpd=gpd, group=group, stars=stars)
    validate_star_structure(sg).raise_if_failed("star structure")

    wset = vset = None
    if doc.w_set is not None:
        wset = frozenset(doc.w_set)
        _check_names(wset, set(names), "W").raise_if_failed("[W]")
    if doc.v_set is not None:
        vset = frozenset(doc.v_set)
        _check_names(vset, set(names), "V").raise_if_failed("[V]")

    local = None
    if doc.local_target is not None:
        if wset is None:
            raise ValidationFailed(
                "local morphism", _single(MALFORMED, "local-morphism-requires-W", ())
            )
        target_path = doc.local_target
        if not os.path.isabs(target_path):
            target_path = os.path.join(base_dir, target_path)
        target = load_path(target_path, _depth=_depth + 1)
        local = LocalMorphism(
            dom=sg, wset=wset, target=target.sg, mapping=dict(doc.local_map)
        )
        validate_local_morphism(local).raise_if_failed("local morphism")
    return Loaded(sg, wset, vset, local, doc.local_target)


def _single(kind: str, rule: str, witnesses) -> Report:
    report = Report()
    report.flag(kind, rule, witnesses)
    return report


def _check_names(given: frozenset[str], known: set[str], section: str) -> Report:
    report = Report()
    for n in sorted(given - known):
        report.flag(MALFORMED, f"unknown-morphism-in-{section}", (n,))
    return report


def load_text(text: str, base_dir: str = ".") -> Loaded:
    return load(parse(text), base_dir=base_dir)


def load_path(path: str, _depth: int = 0) -> Loaded:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    return load(parse(text), base_dir=os.path.dirname(os.path.abspath(path)), _depth=_depth)


def emit(
    sg: StarredGroupoid,
    wset: frozenset[str] | None = None,
    vset: frozenset[str] | None = None,
    local: tuple[str, dict[str, str]] | None = None,
) -> str:
    """Canonical text form; sorted everywhere, no comments."""
    g = sg.gpd
    lines = ["ggd 1", "[objects]"]
    lines.extend(sorted(g.objects))
    if sg.is_group:
        gg = sg.group
        lines.append("[object-product]")
        lines.extend(f"{x} {y} {z}" for (x, y), z in sorted(gg.obj_mul.items()))
        lines.append("[object-unit]")
        lines.append(gg.obj_unit)
    lines.append("[morphisms]")
    lines.extend(f"{m} {g.src[m]} {g.tgt[m]}" for m in g.morphisms)
    lines.append("[identities]")
    lines.extend(f"{g.ident[x]} {x}" for x in g.objects)
    lines.append("[compose]")
    lines.extend(f"{a} {b} {c}" for (a, b), c in sorted(g.comp.items()))
    if sg.is_group:
        lines.append("[morphism-product]")
        lines.extend(f"{a} {b} {c}" for (a, b), c in sorted(sg.group.mor_mul.items()))
    lines.append("[star-edges]")
    for x in g.objects:
        lines.extend(f"{x} {u} {v}" for u, v in sorted(sg.star_graph(x).edges))
    if wset is not None:
        lines.append("[W]")
        lines.extend(sorted(wset))
    if vset is not None:
        lines.append("[V]")
        lines.extend(sorted(vset))
    if local is not None:
        target, mapping = local
        lines.append(f"[local-morphism {target}]")
        lines.extend(f"{u} {v}" for u, v in sorted(mapping.items()))
    return "\n".join(lines) + "\n"
