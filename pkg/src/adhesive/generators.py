"""Random C-sets and morphisms for property testing (acyclic schemas only)."""
from __future__ import annotations

import random

from .kernel import GRAPH, CSet, CSetMorphism, Schema, inclusion


def _order(schema: Schema) -> list[str]:
    order = schema.topological_order()
    if order is None:
        raise ValueError("random generation needs an acyclic schema")
    return order[::-1]  # op targets before op sources


def random_cset(rng: random.Random, schema: Schema = GRAPH, max_size: int = 4) -> CSet:
    sizes, funcs = {}, {}
    for s in _order(schema):
        sizes[s] = rng.randint(0, max_size)
    # sorts with outgoing ops into an empty sort must stay empty
    for s in _order(schema):
        if any(sizes[o.dst] == 0 for o in schema.ops_from(s)):
            sizes[s] = 0
    for o in schema.ops:
        funcs[o.name] = [rng.randrange(sizes[o.dst]) for _ in range(sizes[o.src])]
    return CSet.build(schema, sizes, funcs)


def random_morphism_from(rng: random.Random, x: CSet, max_extra: int = 2,
                         max_size: int | None = None) -> CSetMorphism:
    """A random morphism out of ``x`` into a freshly generated codomain.

    Elements of x are sent to existing compatible codomain elements or to new
    ones; a few unrelated extras are thrown in. ``max_size`` caps each carrier.
    """
    schema = x.schema
    sizes: dict[str, int] = {}
    funcs: dict[str, list[int]] = {o.name: [] for o in schema.ops}
    comps: dict[str, list[int]] = {}
    for s in _order(schema):
        ops = schema.ops_from(s)
        signature: dict[tuple, list[int]] = {}
        comps[s] = []
        sizes[s] = 0

        def add(sig):
            y = sizes[s]
            sizes[s] += 1
            for o, v in zip(ops, sig):
                funcs[o.name].append(v)
            signature.setdefault(sig, []).append(y)
            return y

        for e in range(x.size(s)):
            sig = tuple(comps[o.dst][x.fn(o.name)[e]] for o in ops)
            existing = signature.get(sig, [])
            full = max_size is not None and sizes[s] >= max_size
            if existing and (full or rng.random() < 0.5):
                comps[s].append(rng.choice(existing))
            else:
                comps[s].append(add(sig))
        for _ in range(rng.randint(0, max_extra)):
            if max_size is not None and sizes[s] >= max_size:
                break
            if any(sizes[o.dst] == 0 for o in ops):
                break
            add(tuple(rng.randrange(sizes[o.dst]) for o in ops))
    cod = CSet.build(schema, sizes, funcs)
    return CSetMorphism.build(x, cod, comps)


def random_subobject(rng: random.Random, x: CSet, keep: float = 0.6) -> CSetMorphism:
    """Inclusion of a random sub-C-set of ``x`` (closed under the ops)."""
    schema = x.schema
    chosen = {s: {e for e in x.carrier(s) if rng.random() < keep} for s in schema.sorts}
    changed = True
    while changed:
        changed = False
        for o in schema.ops:
            f = x.fn(o.name)
            need = {f[e] for e in chosen[o.src]} - chosen[o.dst]
            if need:
                chosen[o.dst] |= need
                changed = True
    return inclusion(x, chosen)


def random_mono_into(rng: random.Random, x: CSet) -> CSetMorphism:
    return random_subobject(rng, x)


def random_mono_from(rng: random.Random, c: CSet, max_extra: int = 2) -> CSetMorphism:
    """A random injective morphism out of ``c``: c plus some fresh elements."""
    schema = c.schema
    sizes = dict(zip(schema.sorts, c.sizes))
    funcs = {o.name: list(c.fn(o.name)) for o in schema.ops}
    for s in _order(schema):
        ops = schema.ops_from(s)
        for _ in range(rng.randint(0, max_extra)):
            if any(sizes[o.dst] == 0 for o in ops):
                break
            for o in ops:
                funcs[o.name].append(rng.randrange(sizes[o.dst]))
            sizes[s] += 1
    cod = CSet.build(schema, sizes, funcs)
    perm = {}
    # shuffle the codomain so the mono is not always an initial segment
    for s in _order(schema):
        p = list(range(sizes[s]))
        rng.shuffle(p)
        perm[s] = p
    return relabel_cod(CSetMorphism.build(c, cod, {s: list(c.carrier(s)) for s in schema.sorts}), perm)


def relabel(x: CSet, perm: dict[str, list[int]]) -> CSetMorphism:
    """The isomorphism x -> x' sending element e of sort s to perm[s][e]."""
    schema = x.schema
    sizes = dict(zip(schema.sorts, x.sizes))
    funcs = {}
    for o in schema.ops:
        table = [0] * sizes[o.src]
        for e, v in enumerate(x.fn(o.name)):
            table[perm[o.src][e]] = perm[o.dst][v]
        funcs[o.name] = table
    y = CSet.build(schema, sizes, funcs)
    return CSetMorphism.build(x, y, perm)


def random_relabel(rng: random.Random, x: CSet) -> CSetMorphism:
    perm = {}
    for s in x.schema.sorts:
        p = list(x.carrier(s))
        rng.shuffle(p)
        perm[s] = p
    return relabel(x, perm)


def relabel_cod(f: CSetMorphism, perm: dict[str, list[int]]) -> CSetMorphism:
    iso = relabel(f.cod, perm)
    return CSetMorphism(f.dom, iso.cod, tuple(tuple(p[y] for y in c)
                                              for p, c in zip(iso.comps, f.comps)))


def random_morphism_into(rng: random.Random, d: CSet, max_size: int = 4) -> CSetMorphism:
    """A random morphism h: D' -> d built by labelling fresh elements with d's."""
    schema = d.schema
    sizes = {s: 0 for s in schema.sorts}
    funcs: dict[str, list[int]] = {o.name: [] for o in schema.ops}
    comps: dict[str, list[int]] = {s: [] for s in schema.sorts}

    def element(s: str, label: int, fresh: bool) -> int:
        cands = [y for y, lab in enumerate(comps[s]) if lab == label]
        if cands and not fresh:
            return rng.choice(cands)
        vals = [element(o.dst, d.fn(o.name)[label], rng.random() < 0.3)
                for o in schema.ops_from(s)]
        for o, v in zip(schema.ops_from(s), vals):
            funcs[o.name].append(v)
        comps[s].append(label)
        sizes[s] += 1
        return sizes[s] - 1

    for s in _order(schema):
        if d.size(s):
            for _ in range(rng.randint(0, max_size)):
                element(s, rng.randrange(d.size(s)), True)
    cod = CSet.build(schema, sizes, funcs)
    return CSetMorphism.build(cod, d, comps)
