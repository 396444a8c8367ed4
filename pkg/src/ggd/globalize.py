"""Local morphisms on a generating set and their global extensions.

A local morphism assigns target morphisms to the generators, is the identity
on objects, and respects composition and (when both sides carry one) the
group product as far as they stay inside the generating set.  The weak
extension evaluates any word letterwise in the target; it is well defined on
oracle-equal words whenever the presentation hypotheses hold.  The strong
extension is defined on the ambient groupoid itself when every star is a
tree: each morphism is factored over the generators by breadth-first search
and evaluated weakly, and the value is independent of the factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .group_groupoid import GroupGroupoid
from .groupoid import Groupoid
from .presentation import (
    Presentation,
    Word,
    enumerate_words,
    format_word,
    make_word,
    word_target,
)
from .report import AXIOM, MALFORMED, Report, ValidationFailed
from .stars import StarredGroupoid, is_tree

Target = Groupoid | GroupGroupoid | StarredGroupoid


def _target_parts(h: Target) -> tuple[Groupoid, GroupGroupoid | None]:
    if isinstance(h, StarredGroupoid):
        return h.gpd, h.group
    if isinstance(h, GroupGroupoid):
        return h.base, h
    return h, None


@dataclass(frozen=True)
class LocalMorphism:
    """Partial morphism from the generators of dom into target, identity on objects."""

    dom: StarredGroupoid
    wset: frozenset[str]
    target: Target
    mapping: dict[str, str]


def validate_local_morphism(f: LocalMorphism) -> Report:
    report = Report()
    g = f.dom.gpd
    h, hg = _target_parts(f.target)
    for u in sorted(f.wset - set(g.morphisms)):
        report.flag(MALFORMED, "generators", (u,), "unknown morphism")
    for u in sorted(set(f.mapping) - f.wset):
        report.flag(MALFORMED, "mapping-domain", (u,), "not a generator")
    for u in sorted(f.wset - set(f.mapping)):
        report.flag(MALFORMED, "mapping-domain", (u,), "missing value")
    for u, v in sorted(f.mapping.items()):
        if v not in set(h.morphisms):
            report.flag(MALFORMED, "mapping-value", (u, v), "unknown target morphism")
    for x in sorted(set(g.objects) - set(h.objects)):
        report.flag(MALFORMED, "objects-not-contained", (x,))
    if not report.ok:
        return report

    for x in g.objects:
        e = g.ident[x]
        if e in f.wset and f.mapping[e] != h.ident[x]:
            report.flag(AXIOM, "identity-on-objects", (x, e, f.mapping[e]))
        if e not in f.wset:
            report.flag(AXIOM, "missing-identity", (x, e), "generators must contain the identities")
    for u in sorted(f.wset):
        fu = f.mapping[u]
        if h.src[fu] != g.src[u] or h.tgt[fu] != g.tgt[u]:
            report.flag(AXIOM, "endpoint-compat", (u, fu))
    if not report.ok:
        return report

    members = sorted(f.wset)
    for u in members:
        for v in members:
            uv = g.comp.get((u, v))
            if uv is not None and uv in f.wset:
                got = h.comp.get((f.mapping[u], f.mapping[v]))
                if got != f.mapping[uv]:
                    report.flag(AXIOM, "composition-compat", (u, v))
    if f.dom.is_group and hg is not None:
        dgg = f.dom.group
        for u in members:
            for v in members:
                uv = dgg.mor_mul[(u, v)]
                if uv in f.wset and hg.mor_mul[(f.mapping[u], f.mapping[v])] != f.mapping[uv]:
                    report.flag(AXIOM, "group-product-compat", (u, v))
    return report


class Extension:
    """A global extension of a local morphism.

    ``on_word`` evaluates letterwise in the target; ``on_morphism`` is
    available for strong extensions and factors its argument first.
    """

    def __init__(self, f: LocalMorphism, factor: Callable[[str], Word] | None = None):
        self.f = f
        self._factor = factor
        self._h, self._hg = _target_parts(f.target)

    @property
    def kind(self) -> str:
        return "weak" if self._factor is None else "strong"

    def on_word(self, w: Word) -> str:
        h = self._h
        value = h.ident[w.source]
        for u in w.letters:
            if u not in self.f.wset:
                raise ValueError(f"letter outside the generators: {u}")
            value = h.comp[(value, self.f.mapping[u])]
        return value

    def factor(self, m: str) -> Word:
        if self._factor is None:
            raise ValueError("weak extension has no morphism factorization")
        return self._factor(m)

    def on_morphism(self, m: str) -> str:
        return self.on_word(self.factor(m))


def extend_weak(f: LocalMorphism, validate: bool = True) -> Extension:
    """Extension to words; requires the presentation hypotheses so it is well defined."""
    if validate:
        validate_local_morphism(f).raise_if_failed("local morphism")
        Presentation(f.dom, f.wset)
    return Extension(f)


def globalize_weak(f: LocalMorphism, w: Word) -> str:
    return extend_weak(f).on_word(w)


def word_group_product(sg: StarredGroupoid, w1: Word, w2: Word) -> Word:
    """Letterwise group product of two words, padding the shorter with identities."""
    if not sg.is_group:
        raise ValueError("ambient has no group structure")
    gg = sg.group
    g = sg.gpd
    u, v = list(w1.letters), list(w2.letters)
    if len(u) <= len(v):
        pad = g.ident[word_target(sg, w1)]
        u += [pad] * (len(v) - len(u))
    else:
        pad = g.ident[word_target(sg, w2)]
        v += [pad] * (len(u) - len(v))
    letters = [gg.mor_mul[(a, b)] for a, b in zip(u, v)]
    return make_word(sg, letters, source=gg.obj_mul[(w1.source, w2.source)])


def _require_subgroup(sg: StarredGroupoid, wset: frozenset[str]) -> None:
    gg = sg.group
    report = Report()
    for u in sorted(wset):
        for v in sorted(wset):
            if gg.mor_mul[(u, v)] not in wset:
                report.flag(AXIOM, "not-a-subgroup", (u, v, gg.mor_mul[(u, v)]))
                raise ValidationFailed("group extension", report)
        if gg.mor_inv[u] not in wset:
            report.flag(AXIOM, "not-a-subgroup", (u, gg.mor_inv[u]), "inverse escapes")
            raise ValidationFailed("group extension", report)


def check_group_morphism(
    ext: Extension,
    samples: Iterable[tuple[Word, Word]] | None = None,
    max_len: int = 2,
) -> Report:
    """Verify the extension preserves the group product on word pairs.

    The generators must form a subgroup of the morphism group (refused with a
    witnessing pair otherwise).  Each pair is checked by evaluating the
    letterwise padded product word against the target-group product of the two
    values.
    """
    f = ext.f
    sg = f.dom
    if not sg.is_group:
        raise ValueError("domain ambient has no group structure")
    h, hg = _target_parts(f.target)
    if hg is None:
        raise ValueError("target has no group structure")
    _require_subgroup(sg, f.wset)

    report = Report()
    if samples is None:
        words = enumerate_words(sg, f.wset, max_len)
        pairs = [(w1, w2) for w1 in words for w2 in words]
    else:
        pairs = list(samples)
    for w1, w2 in pairs:
        lhs = ext.on_word(word_group_product(sg, w1, w2))
        rhs = hg.mor_mul[(ext.on_word(w1), ext.on_word(w2))]
        if lhs != rhs:
            report.flag(AXIOM, "group-extension", (format_word(w1), format_word(w2)), f"{lhs} != {rhs}")
    report.diagnostic("group-extension-checked", f"{len(pairs)} word pairs")
    return report


def extend_strong(f: LocalMorphism, tie_break: str = "lex", validate: bool = True) -> Extension:
    """Extension to the whole ambient groupoid; stars must be trees.

    Each morphism is factored over the generators by breadth-first search from
    the identity of its star, letters visited in name order (or reversed name
    order with ``tie_break="revlex"``).
    """
    if tie_break not in ("lex", "revlex"):
        raise ValueError(f"unknown tie break: {tie_break}")
    if validate:
        validate_local_morphism(f).raise_if_failed("local morphism")
        Presentation(f.dom, f.wset)
        bad = sorted(x for x, ok in is_tree(f.dom).items() if not ok)
        if bad:
            report = Report()
            for x in bad:
                report.flag(AXIOM, "star-not-tree", (x,))
            raise ValidationFailed("strong extension", report)
    sg = f.dom
    g = sg.gpd
    letters = sorted(
        (u for u in f.wset if not g.is_identity(u)), reverse=(tie_break == "revlex")
    )
    by_src: dict[str, list[str]] = {}
    for u in letters:
        by_src.setdefault(g.src[u], []).append(u)
    factorizations: dict[str, dict[str, tuple[str, ...]]] = {}

    def factor(m: str) -> Word:
        if m not in g.src:
            raise ValueError(f"unknown morphism: {m}")
        x = g.src[m]
        table = factorizations.get(x)
        if table is None:
            table = {g.ident[x]: ()}
            frontier = [g.ident[x]]
            while frontier:
                nxt = []
                for h in frontier:
                    for u in by_src.get(g.tgt[h], ()):
                        grown = g.comp[(h, u)]
                        if grown not in table:
                            table[grown] = table[h] + (u,)
                            nxt.append(grown)
                frontier = nxt
            factorizations[x] = table
        if m not in table:
            raise ValueError(f"generators do not reach {m}")
        return make_word(sg, table[m], source=x)

    return Extension(f, factor=factor)


def globalize_strong(f: LocalMorphism, m: str) -> str:
    return extend_strong(f).on_morphism(m)


@dataclass(frozen=True)
class UniquenessResult:
    ok: bool
    witness: Word | None = None

    def __bool__(self) -> bool:
        return self.ok


def uniqueness_check(
    f: LocalMorphism,
    ext1,
    ext2,
    max_len: int,
) -> UniquenessResult:
    """Compare two extensions on every word up to the length bound.

    Accepts Extension objects or plain callables from words to target
    morphisms; both are expected to agree with the local morphism on the
    generators.
    """
    fn1 = ext1.on_word if isinstance(ext1, Extension) else ext1
    fn2 = ext2.on_word if isinstance(ext2, Extension) else ext2
    for w in enumerate_words(f.dom, f.wset, max_len):
        if fn1(w) != fn2(w):
            return UniquenessResult(False, w)
    return UniquenessResult(True, None)
