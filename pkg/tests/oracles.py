"""Brute-force reference implementations used as test oracles.

Nothing here calls the library's constructions; (co)limits of C-sets are
computed sort by sort on plain Python sets, which is valid because both are
pointwise in a presheaf category.
"""
from __future__ import annotations

import itertools

from adhesive.kernel import CSet, CSetMorphism


def functions(n: int, m: int):
    return itertools.product(range(m), repeat=n)


def is_natural(x: CSet, y: CSet, comps) -> bool:
    s = x.schema
    idx = {sort: i for i, sort in enumerate(s.sorts)}
    for o, fx, fy in zip(s.ops, x.funcs, y.funcs):
        a, b = comps[idx[o.src]], comps[idx[o.dst]]
        if any(b[fx[e]] != fy[a[e]] for e in range(len(fx))):
            return False
    return True


def brute_homs(x: CSet, y: CSet, injective: bool = False) -> list[tuple]:
    per_sort = [list(functions(n, m)) for n, m in zip(x.sizes, y.sizes)]
    out = []
    for comps in itertools.product(*per_sort):
        if injective and any(len(set(c)) != len(c) for c in comps):
            continue
        if is_natural(x, y, comps):
            out.append(comps)
    return out


def isomorphic(x: CSet, y: CSet) -> bool:
    if x.schema != y.schema or x.sizes != y.sizes:
        return False
    perms = [list(itertools.permutations(range(n))) for n in x.sizes]
    return any(is_natural(x, y, comps) for comps in itertools.product(*perms))


def _classes(n_a: int, n_b: int, pairs) -> list[frozenset]:
    """Equivalence classes on A + B (tagged ('A', i) / ('B', j)) generated by pairs."""
    classes = [{("A", i)} for i in range(n_a)] + [{("B", j)} for j in range(n_b)]
    for p, q in pairs:
        cp = next(c for c in classes if p in c)
        cq = next(c for c in classes if q in c)
        if cp is not cq:
            classes.remove(cq)
            cp |= cq
    return [frozenset(c) for c in classes]


def pushout_sizes(m: CSetMorphism, f: CSetMorphism) -> tuple[int, ...]:
    return tuple(len(_classes(na, nb, [(("A", mc[c]), ("B", fc[c])) for c in range(len(mc))]))
                 for mc, fc, na, nb in zip(m.comps, f.comps, m.cod.sizes, f.cod.sizes))


def is_pushout_of_sets(top, left, bottom, right, n_a, n_b, n_d) -> bool:
    """(top: C->B, left: C->A, bottom: A->D, right: B->D) as tuples of ints."""
    classes = _classes(n_a, n_b, [(("A", left[c]), ("B", top[c])) for c in range(len(top))])
    image = {}
    for cl in classes:
        targets = {bottom[i] if t == "A" else right[i] for t, i in cl}
        if len(targets) != 1:
            return False
        image[cl] = targets.pop()
    return sorted(image.values()) == list(range(n_d))


def is_pullback_of_sets(top, left, bottom, right, n_a, n_b) -> bool:
    cone = {(a, b) for a in range(n_a) for b in range(n_b) if bottom[a] == right[b]}
    got = [(left[c], top[c]) for c in range(len(top))]
    return len(set(got)) == len(got) and set(got) == cone


def square_is_pushout(sq) -> bool:
    return all(is_pushout_of_sets(t, l, b, r, na, nb, nd) for t, l, b, r, na, nb, nd in
               zip(sq.top.comps, sq.left.comps, sq.bottom.comps, sq.right.comps,
                   sq.A.sizes, sq.B.sizes, sq.D.sizes))


def square_is_pullback(sq) -> bool:
    return all(is_pullback_of_sets(t, l, b, r, na, nb) for t, l, b, r, na, nb in
               zip(sq.top.comps, sq.left.comps, sq.bottom.comps, sq.right.comps,
                   sq.A.sizes, sq.B.sizes))


def closed_subsets(x: CSet):
    """Every sub-C-set of x, as a tuple of frozensets (one per sort)."""
    s = x.schema
    idx = {sort: i for i, sort in enumerate(s.sorts)}
    subsets = [[frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]
               for n in x.sizes]
    for choice in itertools.product(*subsets):
        if all({f[e] for e in choice[idx[o.src]]} <= choice[idx[o.dst]]
               for o, f in zip(s.ops, x.funcs)):
            yield choice


def complements(l: CSetMorphism, m: CSetMorphism) -> list[tuple]:
    """All subobjects D of G = cod m admitting k: K -> D that makes
    (k, l, m, D->G) a pushout. Every complement of a mono l has D->G mono, so
    these subsets are exactly the isomorphism classes of complements."""
    G = m.cod
    s = G.schema
    ml = [[mc[x] for x in lc] for lc, mc in zip(l.comps, m.comps)]
    found = []
    for sub in closed_subsets(G):
        if not all(set(t) <= sub[i] for i, t in enumerate(ml)):
            continue
        ok = True
        for i in range(len(s.sorts)):
            elems = sorted(sub[i])
            pos = {e: j for j, e in enumerate(elems)}
            k = [pos[y] for y in ml[i]]
            if not is_pushout_of_sets(k, l.comps[i], m.comps[i], elems,
                                      l.cod.sizes[i], len(elems), G.sizes[i]):
                ok = False
                break
        if ok:
            found.append(sub)
    return found


def image_sets(f: CSetMorphism) -> tuple[frozenset, ...]:
    return tuple(frozenset(c) for c in f.comps)
