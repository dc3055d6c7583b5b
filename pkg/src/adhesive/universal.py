"""Universal-property engine.

Squares are judged by counting mediating morphisms for every (co)cone over a
family of test objects, never by building the canonical (co)limit.

* In a :class:`FinCategory` every object is a test object.
* For C-sets the test objects are the representables (a dense family, so they
  detect limits) and, for colimits, the power probes ``P_s`` with
  ``hom(X, P_s) = subsets of X(s)``; a square is a pushout iff every
  ``hom(-, P_s)`` turns it into a pullback of sets.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .homs import homs, power_probe, representable
from .kernel import Arrow, Budget, CSetMorphism, FinCategory, Schema, compose
from .limits import Square, SquareVerdict


def universal_verify(sq: Square, kind: str, budget: Budget | int | None = None) -> SquareVerdict:
    budget = Budget.coerce(budget)
    if isinstance(sq.top, Arrow):
        fn = fc_is_pushout if kind == "pushout" else fc_is_pullback
    else:
        fn = cset_is_pushout if kind == "pushout" else cset_is_pullback
    holds, witness = fn(sq, budget)
    return SquareVerdict(kind, holds, None, witness, engine="universal")


# --- C-sets ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _representables(schema: Schema):
    return [(s, *representable(schema, s)) for s in schema.sorts]


@lru_cache(maxsize=None)
def _power_probes(schema: Schema):
    return [(s, power_probe(schema, s)) for s in schema.sorts]


def _key(f: CSetMorphism):
    return f.comps


def cset_is_pullback(sq: Square, budget: Budget) -> tuple[bool, str | None]:
    if not sq.C.schema.is_acyclic():
        raise ValueError("the universal engine needs an acyclic schema")
    for sort, probe, gen in _representables(sq.C.schema):
        counts = Counter((_key(compose(sq.left, u)), _key(compose(sq.top, u)))
                         for u in homs(probe, sq.C, budget=budget))
        hb = homs(probe, sq.B, budget=budget)
        for p in homs(probe, sq.A, budget=budget):
            bp = _key(compose(sq.bottom, p))
            for q in hb:
                budget.tick()
                if bp != _key(compose(sq.right, q)):
                    continue
                k = counts[(_key(p), _key(q))]
                if k != 1:
                    a, b = p.comp(sort)[gen], q.comp(sort)[gen]
                    return False, (f"cone at sort {sort} picking A element {a} and B element {b} "
                                   f"has {k} mediating morphisms")
    return True, None


def cset_is_pushout(sq: Square, budget: Budget) -> tuple[bool, str | None]:
    if not sq.C.schema.is_acyclic():
        raise ValueError("the universal engine needs an acyclic schema")
    for sort, probe in _power_probes(sq.C.schema):
        counts = Counter((_key(compose(u, sq.bottom)), _key(compose(u, sq.right)))
                         for u in homs(sq.D, probe, budget=budget))
        hb = homs(sq.B, probe, budget=budget)
        for p in homs(sq.A, probe, budget=budget):
            pl = _key(compose(p, sq.left))
            for q in hb:
                budget.tick()
                if pl != _key(compose(q, sq.top)):
                    continue
                k = counts[(_key(p), _key(q))]
                if k != 1:
                    return False, (f"cocone into the power probe at sort {sort} has {k} "
                                   f"mediating morphisms")
    return True, None


# --- finite categories -----------------------------------------------------


def _ints(sq: Square):
    cat = sq.top.cat
    mid = cat.idx["mid"]
    return cat, mid[sq.top.id], mid[sq.left.id], mid[sq.bottom.id], mid[sq.right.id]


def _hom(cat: FinCategory, a: int, b: int) -> list[int]:
    return cat.idx["hom"].get((a, b), [])


def _is_pullback_ints(cat, top, left, bottom, right, budget) -> tuple[bool, tuple | None]:
    ix = cat.idx
    T = ix["table"]
    C, A, B = ix["src"][top], ix["dst"][left], ix["dst"][top]
    for X in range(len(cat.objects)):
        counts = Counter((T[left][u], T[top][u]) for u in _hom(cat, X, C))
        hb = _hom(cat, X, B)
        for p in _hom(cat, X, A):
            bp = T[bottom][p]
            for q in hb:
                budget.tick()
                if bp == T[right][q] and counts[(p, q)] != 1:
                    return False, (X, p, q, counts[(p, q)])
    return True, None


def _is_pushout_ints(cat, top, left, bottom, right, budget) -> tuple[bool, tuple | None]:
    ix = cat.idx
    T = ix["table"]
    A, B, D = ix["dst"][left], ix["dst"][top], ix["dst"][bottom]
    for Y in range(len(cat.objects)):
        counts = Counter((T[u][bottom], T[u][right]) for u in _hom(cat, D, Y))
        hb = _hom(cat, B, Y)
        for p in _hom(cat, A, Y):
            pl = T[p][left]
            for q in hb:
                budget.tick()
                if pl == T[q][top] and counts[(p, q)] != 1:
                    return False, (Y, p, q, counts[(p, q)])
    return True, None


def _describe(cat, w, cone: bool) -> str:
    obj, p, q, k = w
    name = cat.objects[obj]
    ms = cat.morphisms
    what = "cone from" if cone else "cocone into"
    return f"{what} {name} via ({ms[p].id}, {ms[q].id}) has {k} mediating morphisms"


def fc_is_pullback(sq: Square, budget: Budget) -> tuple[bool, str | None]:
    cat, *ints = _ints(sq)
    ok, w = _is_pullback_ints(cat, *ints, budget)
    return ok, None if ok else _describe(cat, w, True)


def fc_is_pushout(sq: Square, budget: Budget) -> tuple[bool, str | None]:
    cat, *ints = _ints(sq)
    ok, w = _is_pushout_ints(cat, *ints, budget)
    return ok, None if ok else _describe(cat, w, False)


def fc_is_mono(f: Arrow, budget: Budget | int | None = None) -> bool:
    budget = Budget.coerce(budget)
    cat = f.cat
    ix = cat.idx
    fi = ix["mid"][f.id]
    T = ix["table"]
    A = ix["src"][fi]
    for X in range(len(cat.objects)):
        hs = _hom(cat, X, A)
        budget.tick(len(hs))
        if len({T[fi][g] for g in hs}) != len(hs):
            return False
    return True


def _cache(cat: FinCategory) -> dict:
    if not hasattr(cat, "_limit_cache"):
        cat._limit_cache = {}
    return cat._limit_cache


def find_pullback(bottom: Arrow, right: Arrow,
                  budget: Budget | int | None = None) -> tuple[Arrow, Arrow] | None:
    """Search for a pullback of the cospan; returns the projections (left, top) or None."""
    budget = Budget.coerce(budget)
    cat = bottom.cat
    key = ("pb", bottom.id, right.id)
    store = _cache(cat)
    if key not in store:
        store[key] = _search_pullback(cat, bottom, right, budget)
    res = store[key]
    return None if res is None else (cat.arrow(res[0]), cat.arrow(res[1]))


def _search_pullback(cat, bottom, right, budget):
    ix = cat.idx
    T, mid, ms = ix["table"], ix["mid"], cat.morphisms
    b, r = mid[bottom.id], mid[right.id]
    A, B = ix["src"][b], ix["src"][r]
    objs = range(len(cat.objects))
    # hom(X, P) is in bijection with the cones from X, so sizes must match
    cones = []
    for X in objs:
        hb = _hom(cat, X, B)
        budget.tick(len(hb) + 1)
        cones.append(sum(1 for p in _hom(cat, X, A) for q in hb if T[b][p] == T[r][q]))
    for P in objs:
        if any(len(_hom(cat, X, P)) != cones[X] for X in objs):
            continue
        hb = _hom(cat, P, B)
        for p in _hom(cat, P, A):
            for q in hb:
                budget.tick()
                if T[b][p] == T[r][q] and _is_pullback_ints(cat, q, p, b, r, budget)[0]:
                    return ms[p].id, ms[q].id
    return None


def find_pushout(left: Arrow, top: Arrow,
                 budget: Budget | int | None = None) -> tuple[Arrow, Arrow] | None:
    """Search for a pushout of the span (left: C->A, top: C->B); returns (bottom, right)."""
    budget = Budget.coerce(budget)
    cat = left.cat
    key = ("po", left.id, top.id)
    store = _cache(cat)
    if key not in store:
        store[key] = _search_pushout(cat, left, top, budget)
    res = store[key]
    return None if res is None else (cat.arrow(res[0]), cat.arrow(res[1]))


def _search_pushout(cat, left, top, budget):
    ix = cat.idx
    T, mid, ms = ix["table"], ix["mid"], cat.morphisms
    l, t = mid[left.id], mid[top.id]
    A, B = ix["dst"][l], ix["dst"][t]
    objs = range(len(cat.objects))
    cocones = []
    for Y in objs:
        hn = _hom(cat, B, Y)
        budget.tick(len(hn) + 1)
        cocones.append(sum(1 for g in _hom(cat, A, Y) for n in hn if T[g][l] == T[n][t]))
    for D in objs:
        if any(len(_hom(cat, D, Y)) != cocones[Y] for Y in objs):
            continue
        hn = _hom(cat, B, D)
        for g in _hom(cat, A, D):
            for n in hn:
                budget.tick()
                if T[g][l] == T[n][t] and _is_pushout_ints(cat, t, l, g, n, budget)[0]:
                    return ms[g].id, ms[n].id
    return None


def factor_through(target: str, source: str, posts: list[tuple[Arrow, Arrow]]) -> Arrow | None:
    """Some u: source -> target with ``post . u == want`` for every (post, want)."""
    cat = posts[0][0].cat
    for u in cat.hom(source, target):
        if all(compose(post, u) == want for post, want in posts):
            return u
    return None


def cofactor_through(source: str, target: str, pres: list[tuple[Arrow, Arrow]]) -> Arrow | None:
    """Some u: source -> target with ``u . pre == want`` for every (pre, want)."""
    cat = pres[0][0].cat
    for u in cat.hom(source, target):
        if all(compose(u, pre) == want for pre, want in pres):
            return u
    return None
