"""Hom-set enumeration between C-sets, plus the probe objects the universal
engine tests against.

The search assigns elements in schema sort order and, within a sort, in carrier
order, so the stream of morphisms is lexicographic in the flattened component
tables.
"""
from __future__ import annotations

from typing import Iterator

from .kernel import Budget, CSet, CSetMorphism, Schema


def iter_homs(x: CSet, y: CSet, injective: bool = False,
              budget: Budget | int | None = None) -> Iterator[CSetMorphism]:
    """Yield every morphism x -> y (only injective ones if ``injective``)."""
    if x.schema != y.schema:
        raise ValueError("schema mismatch between pattern and host")
    budget = Budget.coerce(budget)
    schema = x.schema
    positions = [(si, e) for si, n in enumerate(x.sizes) for e in range(n)]
    pos_of = {p: i for i, p in enumerate(positions)}
    # constraint (op index, x-source element, x-target element) is checked once
    # both endpoints have been assigned
    checks: list[list[tuple[int, int, int]]] = [[] for _ in positions]
    for oi, o in enumerate(schema.ops):
        s, t = schema.sort_index(o.src), schema.sort_index(o.dst)
        for e, img in enumerate(x.funcs[oi]):
            a, b = pos_of[(s, e)], pos_of[(t, img)]
            checks[max(a, b)].append((oi, a, b))
    y_funcs = y.funcs
    assign = [0] * len(positions)
    used = [set() for _ in schema.sorts]

    def rec(i):
        if i == len(positions):
            comps, k = [], 0
            for n in x.sizes:
                comps.append(tuple(assign[k:k + n]))
                k += n
            yield CSetMorphism(x, y, tuple(comps))
            return
        si = positions[i][0]
        for cand in range(y.sizes[si]):
            budget.tick()
            if injective and cand in used[si]:
                continue
            assign[i] = cand
            if all(y_funcs[oi][assign[a]] == assign[b] for oi, a, b in checks[i]):
                if injective:
                    used[si].add(cand)
                yield from rec(i + 1)
                if injective:
                    used[si].discard(cand)

    yield from rec(0)


def homs(x: CSet, y: CSet, injective: bool = False,
         budget: Budget | int | None = None) -> list[CSetMorphism]:
    return list(iter_homs(x, y, injective, budget))


def representable(schema: Schema, sort: str) -> tuple[CSet, int]:
    """The C-set freely generated by one element of ``sort``.

    Elements of sort t are the op-paths sort -> t; returns the C-set and the
    index of the generator (the empty path). Needs an acyclic schema.
    """
    paths = {t: schema.paths(sort, t) for t in schema.sorts}
    sizes = tuple(len(paths[t]) for t in schema.sorts)
    funcs = []
    for o in schema.ops:
        index = {p: i for i, p in enumerate(paths[o.dst])}
        funcs.append(tuple(index[p + (o.name,)] for p in paths[o.src]))
    return CSet(schema, sizes, tuple(funcs)), 0


def power_probe(schema: Schema, sort: str) -> CSet:
    """Right adjoint to evaluation at ``sort``, applied to a two-element set.

    Morphisms X -> power_probe(sort) correspond to subsets of X(sort). An element
    at sort t is a bitmask over the op-paths t -> sort; an op o: t -> u sends
    mask phi to the mask p |-> phi(o then p).
    """
    paths = {t: schema.paths(t, sort) for t in schema.sorts}
    sizes = tuple(1 << len(paths[t]) for t in schema.sorts)
    funcs = []
    for o in schema.ops:
        src_index = {p: i for i, p in enumerate(paths[o.src])}
        pulled = [src_index[(o.name,) + p] for p in paths[o.dst]]
        table = []
        for mask in range(1 << len(paths[o.src])):
            out = 0
            for j, i in enumerate(pulled):
                if mask >> i & 1:
                    out |= 1 << j
            table.append(out)
        funcs.append(tuple(table))
    return CSet(schema, sizes, tuple(funcs))
