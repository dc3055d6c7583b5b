"""Pullbacks, pushouts, kernel pairs and unions of subobjects in C-set categories.

All constructions relabel canonically: pullback apexes list pairs (a, b) in
lexicographic order, pushout carriers list A's classes first (in A order) then
the B elements that survive, each class named by its least member of A + B.
Results are therefore reproducible bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from scipy.cluster.hierarchy import DisjointSet

from .kernel import (AnyMorphism, Arrow, Budget, CSet, CSetMorphism, compose, identity,
                     is_injective, is_iso)

Kind = Literal["pushout", "pullback"]
Engine = Literal["componentwise", "universal"]


class NonCommutingSquare(ValueError):
    pass


@dataclass(frozen=True)
class Span:
    left: AnyMorphism
    right: AnyMorphism

    @property
    def apex(self):
        return self.left.dom


@dataclass(frozen=True)
class Cospan:
    left: AnyMorphism
    right: AnyMorphism

    @property
    def apex(self):
        return self.left.cod


@dataclass(frozen=True)
class Square:
    """Commutative square ``bottom . left == right . top``::

        C --top--> B
        |          |
       left      right
        v          v
        A -bottom> D
    """

    top: AnyMorphism
    left: AnyMorphism
    bottom: AnyMorphism
    right: AnyMorphism

    @property
    def C(self):
        return self.top.dom

    @property
    def A(self):
        return self.left.cod

    @property
    def B(self):
        return self.top.cod

    @property
    def D(self):
        return self.bottom.cod

    @property
    def span(self) -> Span:
        return Span(self.left, self.top)

    @property
    def cospan(self) -> Cospan:
        return Cospan(self.bottom, self.right)

    def transpose(self) -> "Square":
        return Square(self.left, self.top, self.right, self.bottom)


@dataclass
class SquareVerdict:
    kind_checked: str
    holds: bool
    comparison: CSetMorphism | None = None
    witness: str | None = None
    engine: str = "componentwise"

    def __bool__(self):
        return self.holds


# --- monos -----------------------------------------------------------------


def is_mono(f: AnyMorphism, budget: Budget | int | None = None) -> bool:
    """Componentwise injectivity for C-set morphisms; left cancellation for arrows."""
    if isinstance(f, Arrow):
        from .universal import fc_is_mono
        return fc_is_mono(f, budget)
    return is_injective(f)


def _require_mono(f: CSetMorphism, label: str) -> None:
    for s, c in zip(f.schema.sorts, f.comps):
        if len(set(c)) != len(c):
            seen = {}
            for x, y in enumerate(c):
                if y in seen:
                    raise ValueError(f"{label} is not mono: component {s} sends "
                                     f"{seen[y]} and {x} to {y}")
                seen[y] = x


# --- pullbacks -------------------------------------------------------------


def pullback(c: Cospan) -> tuple[CSet, Span]:
    """Componentwise fibre product of ``c.left: A -> D`` and ``c.right: B -> D``."""
    f, g = c.left, c.right
    schema = f.schema
    pairs, index = [], []
    for fa, gb in zip(f.comps, g.comps):
        ps = [(a, b) for a in range(len(fa)) for b in range(len(gb)) if fa[a] == gb[b]]
        pairs.append(ps)
        index.append({p: i for i, p in enumerate(ps)})
    funcs = []
    for oi, o in enumerate(schema.ops):
        s, t = schema.sort_index(o.src), schema.sort_index(o.dst)
        oa, ob = f.dom.funcs[oi], g.dom.funcs[oi]
        funcs.append(tuple(index[t][(oa[a], ob[b])] for a, b in pairs[s]))
    apex = CSet(schema, tuple(len(p) for p in pairs), tuple(funcs))
    pa = CSetMorphism(apex, f.dom, tuple(tuple(a for a, _ in ps) for ps in pairs))
    pb = CSetMorphism(apex, g.dom, tuple(tuple(b for _, b in ps) for ps in pairs))
    return apex, Span(pa, pb)


def pullback_square(c: Cospan) -> Square:
    _, s = pullback(c)
    return Square(top=s.right, left=s.left, bottom=c.left, right=c.right)


def pullback_mediator(span: Span, p: CSetMorphism, q: CSetMorphism) -> CSetMorphism:
    """The unique u: X -> apex with ``span.left . u = p`` and ``span.right . u = q``,
    for a span produced by :func:`pullback`."""
    apex = span.apex
    comps = []
    for sa, sb, pc, qc in zip(span.left.comps, span.right.comps, p.comps, q.comps):
        index = {(a, b): i for i, (a, b) in enumerate(zip(sa, sb))}
        try:
            comps.append(tuple(index[(a, b)] for a, b in zip(pc, qc)))
        except KeyError as exc:
            raise ValueError(f"cone does not factor through the pullback at {exc.args[0]}") from None
    return CSetMorphism(p.dom, apex, tuple(comps))


# --- pushouts --------------------------------------------------------------


def _quotient(n_a: int, n_b: int, glue) -> tuple[list[int], int]:
    """Class number of each element of A + B (A first) under the generated relation."""
    ds = DisjointSet(range(n_a + n_b))
    for x, y in glue:
        ds.merge(x, n_a + y)
    label, cls = {}, []
    for e in range(n_a + n_b):
        root = ds[e]
        if root not in label:
            label[root] = len(label)
        cls.append(label[root])
    return cls, len(label)


def pushout(s: Span) -> tuple[CSet, Cospan]:
    """Componentwise pushout of ``s.left: C -> A`` and ``s.right: C -> B``."""
    m, f = s.left, s.right
    schema = m.schema
    A, B = m.cod, f.cod
    classes, sizes = [], []
    for mc, fc, na, nb in zip(m.comps, f.comps, A.sizes, B.sizes):
        cls, n = _quotient(na, nb, zip(mc, fc))
        classes.append(cls)
        sizes.append(n)
    funcs = []
    for oi, o in enumerate(schema.ops):
        si, ti = schema.sort_index(o.src), schema.sort_index(o.dst)
        na_s, na_t = A.sizes[si], A.sizes[ti]
        table = [0] * sizes[si]
        for x in range(na_s):
            table[classes[si][x]] = classes[ti][A.funcs[oi][x]]
        for y in range(B.sizes[si]):
            table[classes[si][na_s + y]] = classes[ti][na_t + B.funcs[oi][y]]
        funcs.append(tuple(table))
    D = CSet(schema, tuple(sizes), tuple(funcs))
    g = CSetMorphism(A, D, tuple(tuple(cls[:na]) for cls, na in zip(classes, A.sizes)))
    n = CSetMorphism(B, D, tuple(tuple(cls[na:]) for cls, na in zip(classes, A.sizes)))
    if is_injective(m) and not is_injective(n):
        raise AssertionError("pushout of a mono produced a non-mono leg")
    return D, Cospan(g, n)


def pushout_square(s: Span) -> Square:
    _, c = pushout(s)
    return Square(top=s.right, left=s.left, bottom=c.left, right=c.right)


def pushout_mediator(cospan: Cospan, p: CSetMorphism, q: CSetMorphism) -> CSetMorphism:
    """The unique u: D -> Y with ``u . cospan.left = p`` and ``u . cospan.right = q``,
    for a jointly surjective cospan such as one produced by :func:`pushout`."""
    g, n = cospan.left, cospan.right
    D, Y = g.cod, p.cod
    comps = []
    for si, s in enumerate(D.schema.sorts):
        u = [None] * D.sizes[si]
        for leg, cocone in ((g, p), (n, q)):
            for x, d in enumerate(leg.comps[si]):
                y = cocone.comps[si][x]
                if u[d] is not None and u[d] != y:
                    raise ValueError(f"cocone is not compatible at sort {s}, element {d}")
                u[d] = y
        if None in u:
            raise ValueError(f"cospan is not jointly surjective at sort {s}")
        comps.append(tuple(u))
    return CSetMorphism(D, Y, tuple(comps))


# --- kernel pairs and unions -----------------------------------------------


@dataclass(frozen=True)
class KernelPair:
    apex: CSet
    p1: CSetMorphism
    p2: CSetMorphism
    diagonal: CSetMorphism

    def __iter__(self):
        return iter((self.apex, self.p1, self.p2, self.diagonal))


def kernel_pair(f: CSetMorphism) -> KernelPair:
    apex, span = pullback(Cospan(f, f))
    ident = identity(f.dom)
    return KernelPair(apex, span.left, span.right, pullback_mediator(span, ident, ident))


@dataclass(frozen=True)
class SubobjectUnion:
    obj: CSet
    into: CSetMorphism
    intersection: CSet
    square: Square


def subobject_union(a: CSetMorphism, b: CSetMorphism) -> SubobjectUnion:
    """Union of two subobjects of X, built as the pushout over their intersection."""
    _require_mono(a, "first subobject")
    _require_mono(b, "second subobject")
    if a.cod != b.cod:
        raise ValueError("subobjects must share a codomain")
    meet, span = pullback(Cospan(a, b))
    U, legs = pushout(span)
    u = pushout_mediator(legs, a, b)
    if not is_injective(u):
        raise AssertionError("union map is not mono")
    for s, uc, ac, bc in zip(u.schema.sorts, u.comps, a.comps, b.comps):
        if set(uc) != set(ac) | set(bc):
            raise AssertionError(f"union image differs from the union of images at sort {s}")
    return SubobjectUnion(U, u, meet, Square(span.right, span.left, legs.left, legs.right))


# --- square verification ---------------------------------------------------


def commutes(sq: Square) -> tuple[bool, str | None]:
    lhs, rhs = compose(sq.bottom, sq.left), compose(sq.right, sq.top)
    if isinstance(lhs, Arrow):
        return (lhs == rhs, None if lhs == rhs else f"{lhs.id} != {rhs.id}")
    for s, l, r in zip(lhs.schema.sorts, lhs.comps, rhs.comps):
        for x, (y1, y2) in enumerate(zip(l, r)):
            if y1 != y2:
                return False, f"sort {s}, element {x}: bottom.left gives {y1}, right.top gives {y2}"
    return True, None


def check_commutes(sq: Square, label: str = "square") -> None:
    for a, b, what in ((sq.left.cod, sq.bottom.dom, "left/bottom"),
                       (sq.top.cod, sq.right.dom, "top/right"),
                       (sq.left.dom, sq.top.dom, "left/top"),
                       (sq.bottom.cod, sq.right.cod, "bottom/right")):
        if a != b:
            raise NonCommutingSquare(f"{label}: {what} endpoints do not match")
    ok, where = commutes(sq)
    if not ok:
        raise NonCommutingSquare(f"{label} does not commute at {where}")


def _comparison_witness(u: CSetMorphism) -> str | None:
    for s, c, n in zip(u.schema.sorts, u.comps, u.cod.sizes):
        seen = {}
        for x, y in enumerate(c):
            if y in seen:
                return f"comparison not injective at sort {s}: {seen[y]} and {x} both go to {y}"
            seen[y] = x
        missing = sorted(set(range(n)) - set(c))
        if missing:
            return f"comparison not surjective at sort {s}: element {missing[0]} is not hit"
    return None


def verify_square(sq: Square, kind: Kind, engine: Engine = "componentwise",
                  budget: Budget | int | None = None) -> SquareVerdict:
    """Decide whether ``sq`` is a pushout or a pullback.

    ``componentwise`` builds the canonical (co)limit and tests the comparison
    map for invertibility. ``universal`` enumerates (co)cones over probe
    objects and counts mediating morphisms; it is the only engine for squares
    of :class:`FinCategory` arrows.
    """
    if kind not in ("pushout", "pullback"):
        raise ValueError(f"unknown kind {kind!r}")
    check_commutes(sq)
    if engine == "universal" or isinstance(sq.top, Arrow):
        from .universal import universal_verify
        return universal_verify(sq, kind, budget)
    if engine != "componentwise":
        raise ValueError(f"unknown engine {engine!r}")
    if kind == "pushout":
        _, legs = pushout(sq.span)
        u = pushout_mediator(legs, sq.bottom, sq.right)
    else:
        _, proj = pullback(sq.cospan)
        u = pullback_mediator(proj, sq.left, sq.top)
    holds = is_iso(u)
    return SquareVerdict(kind, holds, u, None if holds else _comparison_witness(u))
