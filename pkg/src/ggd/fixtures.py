"""Canonical example groupoids shared by the tests, the docs and the CLI.

Six fixtures are used everywhere: pair groupoids over a 3-cycle (p3), a
3-path (l3p) and the 6-cycle with componentwise addition (p6), the pair
group-groupoid over two points (p2), and the one-object cyclic groups of
order 3 and 6 with cycle star graphs (c3g, c6g).  A seventh, p3k, is the
pair groupoid over three points with complete star graphs; it serves as an
extension target.  Each fixture ships with its default generating set.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Callable, NamedTuple

from .group_groupoid import GroupGroupoid
from .groupoid import Groupoid, pair_name
from .monodromy import MonMor
from .stars import EdgePath, StarGraph, StarredGroupoid


class Fixture(NamedTuple):
    name: str
    sg: StarredGroupoid
    wset: frozenset[str]


def _labels(n: int) -> list[str]:
    return [str(i) for i in range(n)]


def path_edges(labels: list[str]) -> set[tuple[str, str]]:
    return {(a, b) for a, b in zip(labels, labels[1:])}


def cycle_edges(labels: list[str]) -> set[tuple[str, str]]:
    out = path_edges(labels)
    if len(labels) > 2:
        out.add((labels[-1], labels[0]))
    return out


def complete_edges(labels: list[str]) -> set[tuple[str, str]]:
    return {(a, b) for i, a in enumerate(labels) for b in labels[i + 1 :]}


def pair_groupoid(labels: list[str], obj_edges: set[tuple[str, str]]) -> StarredGroupoid:
    """Pair groupoid over labelled points; star edges follow the object graph."""
    morphisms = {pair_name(i, j): (i, j) for i in labels for j in labels}
    src = {n: i for n, (i, j) in morphisms.items()}
    tgt = {n: j for n, (i, j) in morphisms.items()}
    ident = {i: pair_name(i, i) for i in labels}
    comp = {
        (pair_name(i, j), pair_name(j, k)): pair_name(i, k)
        for i in labels
        for j in labels
        for k in labels
    }
    inv = {n: pair_name(j, i) for n, (i, j) in morphisms.items()}
    gpd = Groupoid.from_tables(labels, morphisms, src, tgt, ident, comp, inv)
    stars = {
        x: StarGraph.from_pairs(
            x, ((pair_name(x, a), pair_name(x, b)) for a, b in obj_edges)
        )
        for x in labels
    }
    return StarredGroupoid(gpd=gpd, stars=stars)


def pair_group_groupoid(n: int) -> StarredGroupoid:
    """Pair groupoid over the integers mod n with componentwise addition."""
    labels = _labels(n)
    plain = pair_groupoid(labels, cycle_edges(labels))
    g = plain.gpd

    def add(a: str, b: str) -> str:
        return str((int(a) + int(b)) % n)

    obj_mul = {(x, y): add(x, y) for x in labels for y in labels}
    obj_inv = {x: str((-int(x)) % n) for x in labels}
    mor_mul = {}
    mor_inv = {}
    for m1 in g.morphisms:
        i1, j1 = g.src[m1], g.tgt[m1]
        mor_inv[m1] = pair_name(obj_inv[i1], obj_inv[j1])
        for m2 in g.morphisms:
            mor_mul[(m1, m2)] = pair_name(add(i1, g.src[m2]), add(j1, g.tgt[m2]))
    group = GroupGroupoid(
        base=g,
        obj_mul=obj_mul,
        obj_inv=obj_inv,
        obj_unit="0",
        mor_mul=mor_mul,
        mor_inv=mor_inv,
        mor_unit=pair_name("0", "0"),
    )
    return StarredGroupoid(group=group, stars=plain._stars)


def cyclic_group_groupoid(n: int) -> StarredGroupoid:
    """The cyclic group of order n as a one-object group-groupoid with a cycle star."""
    labels = _labels(n)
    comp = {(a, b): str((int(a) + int(b)) % n) for a in labels for b in labels}
    inv = {a: str((-int(a)) % n) for a in labels}
    gpd = Groupoid.from_tables(
        ["o"], labels, {a: "o" for a in labels}, {a: "o" for a in labels}, {"o": "0"}, comp, inv
    )
    group = GroupGroupoid(
        base=gpd,
        obj_mul={("o", "o"): "o"},
        obj_inv={"o": "o"},
        obj_unit="o",
        mor_mul=dict(comp),
        mor_inv=dict(inv),
        mor_unit="0",
    )
    stars = {"o": StarGraph.from_pairs("o", cycle_edges(labels))}
    return StarredGroupoid(group=group, stars=stars)


def _pair_w(labels: list[str], deltas: set[int], n: int) -> frozenset[str]:
    return frozenset(
        pair_name(i, j)
        for i in labels
        for j in labels
        if (int(j) - int(i)) % n in deltas
    )


def p3() -> Fixture:
    labels = _labels(3)
    sg = pair_groupoid(labels, cycle_edges(labels))
    return Fixture("p3", sg, _pair_w(labels, {0, 1, 2}, 3))


def l3p() -> Fixture:
    labels = _labels(3)
    sg = pair_groupoid(labels, path_edges(labels))
    w = frozenset(
        pair_name(i, j) for i in labels for j in labels if abs(int(i) - int(j)) <= 1
    )
    return Fixture("l3p", sg, w)


def p3k() -> Fixture:
    labels = _labels(3)
    sg = pair_groupoid(labels, complete_edges(labels))
    return Fixture("p3k", sg, frozenset(sg.morphisms))


def p6() -> Fixture:
    sg = pair_group_groupoid(6)
    return Fixture("p6", sg, _pair_w(_labels(6), {0, 1, 5}, 6))


def p2() -> Fixture:
    sg = pair_group_groupoid(2)
    return Fixture("p2", sg, frozenset(sg.morphisms))


def c3g() -> Fixture:
    sg = cyclic_group_groupoid(3)
    return Fixture("c3g", sg, frozenset(sg.morphisms))


def c6g() -> Fixture:
    sg = cyclic_group_groupoid(6)
    return Fixture("c6g", sg, frozenset({"0", "1", "5"}))


BUILDERS: dict[str, Callable[[], Fixture]] = {
    "p3": p3,
    "l3p": l3p,
    "p6": p6,
    "c3g": c3g,
    "c6g": c6g,
    "p2": p2,
    "p3k": p3k,
}

CORE_NAMES = ("p3", "l3p", "p6", "c3g", "c6g", "p2")


def all_fixtures() -> dict[str, Fixture]:
    return {name: build() for name, build in BUILDERS.items()}


def winding_mon(sg: StarredGroupoid, n: int, d: int) -> MonMor:
    """The element of a cyclic fixture that winds d steps around the cycle star."""
    step = 1 if d >= 0 else -1
    vertices = tuple(str((k * step) % n) for k in range(abs(d) + 1))
    return MonMor("o", EdgePath(vertices))


def write_fixture_files(dirpath: str) -> list[str]:
    """Regenerate the canonical .ggd files (the l3p file carries the extension example)."""
    from .ggdfile import emit

    os.makedirs(dirpath, exist_ok=True)
    written = []
    for name, build in BUILDERS.items():
        fix = build()
        local = None
        if name == "l3p":
            local = ("p3k.ggd", {u: u for u in sorted(fix.wset)})
        text = emit(fix.sg, wset=fix.wset, local=local)
        path = os.path.join(dirpath, f"{name}.ggd")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
        written.append(path)
    return written


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="write the canonical fixture files")
    parser.add_argument("directory")
    args = parser.parse_args(argv)
    for path in write_fixture_files(args.directory):
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
