"""Double-pushout rewriting of C-sets with mono rules and mono matches."""
from __future__ import annotations

from dataclasses import dataclass

from .homs import iter_homs
from .kernel import CSet, CSetMorphism, compose, identity, inclusion, is_injective
from .limits import Span, Square, pushout, verify_square


@dataclass(frozen=True)
class Rule:
    l: CSetMorphism  # K -> L
    r: CSetMorphism  # K -> R
    name: str = "rule"

    def __post_init__(self):
        if self.l.dom != self.r.dom:
            raise ValueError("rule legs must share the interface K")
        if not (is_injective(self.l) and is_injective(self.r)):
            raise ValueError("rule legs must be monomorphisms")

    @property
    def K(self) -> CSet:
        return self.l.dom

    @property
    def L(self) -> CSet:
        return self.l.cod

    @property
    def R(self) -> CSet:
        return self.r.cod


@dataclass(frozen=True)
class MatchResult:
    match: CSetMorphism
    index: int


def enumerate_monos(pattern: CSet, host: CSet, limit: int | None = None
                    ) -> tuple[list[MatchResult], bool]:
    """All monos pattern -> host in lexicographic order; second value flags truncation."""
    out = []
    for i, f in enumerate(iter_homs(pattern, host, injective=True)):
        if limit is not None and i >= limit:
            return out, True
        out.append(MatchResult(f, i))
    return out, False


@dataclass(frozen=True)
class RejectReason:
    op: str
    retained: tuple[str, int]
    deleted: tuple[str, int]

    def __str__(self):
        return (f"dangling: {self.op} sends retained {self.retained[0]} element "
                f"{self.retained[1]} to deleted {self.deleted[0]} element {self.deleted[1]}")


@dataclass(frozen=True)
class Complement:
    D: CSet
    k: CSetMorphism  # K -> D
    d: CSetMorphism  # D -> G


def complement_square(l: CSetMorphism, m: CSetMorphism, comp: Complement) -> Square:
    return Square(comp.k, l, m, comp.d)


def pushout_complement(l: CSetMorphism, m: CSetMorphism) -> Complement | RejectReason:
    """Delete m(L - l(K)) from G, provided no surviving element dangles."""
    if not (is_injective(l) and is_injective(m)):
        raise ValueError("pushout complements are only built for mono l and m")
    G = m.cod
    schema = G.schema
    deleted = {}
    for s, lc, mc in zip(schema.sorts, l.comps, m.comps):
        kept_in_l = set(lc)
        deleted[s] = {mc[x] for x in range(len(mc)) if x not in kept_in_l}
    for o in schema.ops:
        f = G.fn(o.name)
        for x in G.carrier(o.src):
            if x not in deleted[o.src] and f[x] in deleted[o.dst]:
                return RejectReason(o.name, (o.src, x), (o.dst, f[x]))
    keep = {s: set(G.carrier(s)) - deleted[s] for s in schema.sorts}
    d = inclusion(G, keep)
    ml = compose(m, l)
    pos = [{y: i for i, y in enumerate(c)} for c in d.comps]
    k = CSetMorphism(l.dom, d.dom, tuple(tuple(p[y] for y in c) for p, c in zip(pos, ml.comps)))
    comp = Complement(d.dom, k, d)
    if not verify_square(complement_square(l, m, comp), "pushout").holds:
        raise AssertionError("pushout complement square is not a pushout")
    return comp


@dataclass(frozen=True)
class DPOResult:
    H: CSet
    complement: Complement
    left: Square   # K->D, K->L, L->G, D->G
    right: Square  # K->D, K->R, R->H, D->H
    comatch: CSetMorphism


def dpo_apply(rule: Rule, g: CSet, match: MatchResult | CSetMorphism) -> DPOResult | RejectReason:
    m = match.match if isinstance(match, MatchResult) else match
    if m.dom != rule.L or m.cod != g:
        raise ValueError("match must be a morphism from the rule's L into the host")
    if not is_injective(m):
        raise ValueError("matches must be monomorphisms")
    comp = pushout_complement(rule.l, m)
    if isinstance(comp, RejectReason):
        return comp
    H, legs = pushout(Span(rule.r, comp.k))
    comatch, dh = legs.left, legs.right
    left = complement_square(rule.l, m, comp)
    right = Square(comp.k, rule.r, comatch, dh)
    if not verify_square(right, "pushout").holds:
        raise AssertionError("rewrite square is not a pushout")
    return DPOResult(H, comp, left, right, comatch)


def identity_rule(L: CSet, name: str = "id") -> Rule:
    i = identity(L)
    return Rule(i, i, name)
