"""Core data model: finite categories, free schemas, C-sets and their morphisms.

Everything here is immutable. Constructors only normalise shapes; whether an
entity actually obeys its laws is answered by :func:`validate`, which reports
violations as data.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration runs past its step budget."""

    def __init__(self, message: str = "budget exceeded", progress: dict | None = None):
        super().__init__(message)
        self.progress = progress or {}


class Budget:
    """Step counter shared by the exhaustive searches."""

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"budget of {self.limit} steps exceeded")

    @classmethod
    def coerce(cls, budget: "Budget | int | None") -> "Budget":
        if isinstance(budget, Budget):
            return budget
        return cls(budget)


# --- schemas and C-sets ---------------------------------------------------


@dataclass(frozen=True)
class Op:
    name: str
    src: str
    dst: str


@dataclass(frozen=True)
class Schema:
    """A finite graph of sorts and operations, presenting a free category."""

    sorts: tuple[str, ...]
    ops: tuple[Op, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sorts", tuple(self.sorts))
        object.__setattr__(
            self, "ops", tuple(o if isinstance(o, Op) else Op(*o) for o in self.ops)
        )

    def sort_index(self, sort: str) -> int:
        return self.sorts.index(sort)

    def op(self, name: str) -> Op:
        for o in self.ops:
            if o.name == name:
                return o
        raise KeyError(name)

    def ops_from(self, sort: str) -> list[Op]:
        return [o for o in self.ops if o.src == sort]

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def topological_order(self) -> list[str] | None:
        """Sorts ordered so every op points forward; None if the op graph has a cycle."""
        indeg = {s: 0 for s in self.sorts}
        for o in self.ops:
            indeg[o.dst] += 1
        ready = [s for s in self.sorts if indeg[s] == 0]
        order = []
        while ready:
            s = ready.pop(0)
            order.append(s)
            for o in self.ops_from(s):
                indeg[o.dst] -= 1
                if indeg[o.dst] == 0:
                    ready.append(o.dst)
        return order if len(order) == len(self.sorts) else None

    def paths(self, src: str, dst: str) -> list[tuple[str, ...]]:
        """All op-paths src -> dst in the free category (acyclic schemas only)."""
        if not self.is_acyclic():
            raise ValueError("hom-sets of a cyclic free schema are infinite")
        out = []

        def walk(s, path):
            if s == dst:
                out.append(path)
            for o in self.ops_from(s):
                walk(o.dst, path + (o.name,))

        walk(src, ())
        return out


GRAPH = Schema(("V", "E"), (Op("src", "E", "V"), Op("tgt", "E", "V")))
SET = Schema(("X",), ())


@dataclass(frozen=True)
class CSet:
    """A functor from the free category on ``schema`` to finite sets.

    Carriers are ``range(n)``; ``funcs[i]`` is the table of ``schema.ops[i]``.
    """

    schema: Schema
    sizes: tuple[int, ...]
    funcs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        object.__setattr__(self, "funcs", tuple(tuple(f) for f in self.funcs))

    @classmethod
    def build(cls, schema: Schema, sizes: Mapping[str, int],
              funcs: Mapping[str, Sequence[int]] | None = None) -> "CSet":
        funcs = funcs or {}
        return cls(
            schema,
            tuple(sizes.get(s, 0) for s in schema.sorts),
            tuple(tuple(funcs.get(o.name, ())) for o in schema.ops),
        )

    def size(self, sort: str) -> int:
        return self.sizes[self.schema.sort_index(sort)]

    def carrier(self, sort: str) -> range:
        return range(self.size(sort))

    def fn(self, op: str) -> tuple[int, ...]:
        for o, f in zip(self.schema.ops, self.funcs):
            if o.name == op:
                return f
        raise KeyError(op)

    def elements(self) -> Iterator[tuple[str, int]]:
        for s, n in zip(self.schema.sorts, self.sizes):
            for x in range(n):
                yield s, x

    def total_size(self) -> int:
        return sum(self.sizes)

    def __repr__(self):
        sz = ", ".join(f"{s}={n}" for s, n in zip(self.schema.sorts, self.sizes))
        fs = ", ".join(f"{o.name}={list(f)}" for o, f in zip(self.schema.ops, self.funcs))
        return f"CSet({sz}; {fs})"


def graph(n_vertices: int, edges: Iterable[tuple[int, int]] = ()) -> CSet:
    """Directed multigraph on vertices 0..n-1 with the given (src, tgt) edges."""
    edges = list(edges)
    return CSet(GRAPH, (n_vertices, len(edges)),
                (tuple(e[0] for e in edges), tuple(e[1] for e in edges)))


def finite_set(n: int) -> CSet:
    return CSet(SET, (n,), ())


@dataclass(frozen=True)
class CSetMorphism:
    """Natural transformation dom -> cod; ``comps[i]`` is the component at sort i."""

    dom: CSet
    cod: CSet
    comps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "comps", tuple(tuple(c) for c in self.comps))

    @classmethod
    def build(cls, dom: CSet, cod: CSet, comps: Mapping[str, Sequence[int]]) -> "CSetMorphism":
        return cls(dom, cod, tuple(tuple(comps.get(s, ())) for s in dom.schema.sorts))

    @property
    def schema(self) -> Schema:
        return self.dom.schema

    def comp(self, sort: str) -> tuple[int, ...]:
        return self.comps[self.schema.sort_index(sort)]

    def __call__(self, sort: str, x: int) -> int:
        return self.comp(sort)[x]

    def __repr__(self):
        cs = ", ".join(f"{s}={list(c)}" for s, c in zip(self.schema.sorts, self.comps))
        return f"CSetMorphism({cs})"


def identity(x: CSet) -> CSetMorphism:
    return CSetMorphism(x, x, tuple(tuple(range(n)) for n in x.sizes))


def inclusion(x: CSet, chosen: dict[str, set[int]]) -> CSetMorphism:
    """The sub-C-set on ``chosen`` (assumed closed) with its inclusion into ``x``."""
    schema = x.schema
    keep = {s: sorted(chosen[s]) for s in schema.sorts}
    pos = {s: {e: i for i, e in enumerate(keep[s])} for s in schema.sorts}
    sub = CSet.build(schema, {s: len(keep[s]) for s in schema.sorts},
                     {o.name: [pos[o.dst][x.fn(o.name)[e]] for e in keep[o.src]] for o in schema.ops})
    return CSetMorphism.build(sub, x, keep)


# --- finite categories -----------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    id: str
    src: str
    dst: str


class FinCategory:
    """An explicit finite category given by its composition table.

    ``comp[(g, f)]`` is ``g . f`` (first f, then g). The constructor accepts
    malformed tables so that :func:`validate` can report on them; the fast
    integer indices are built lazily and assume validity.
    """

    def __init__(self, objects: Sequence[str], morphisms: Sequence,
                 identities: Mapping[str, str], comp: Mapping[tuple[str, str], str],
                 name: str = ""):
        self.objects = tuple(objects)
        self.morphisms = tuple(m if isinstance(m, Morphism) else Morphism(*m) for m in morphisms)
        self.identities = dict(identities)
        self.comp = dict(comp)
        self.name = name
        self._index = None

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (self.objects == other.objects and self.morphisms == other.morphisms
                and self.identities == other.identities and self.comp == other.comp)

    def __hash__(self):
        return hash((self.objects, self.morphisms))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FinCategory{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    # integer view, used by every search
    def _build(self):
        if self._index is not None:
            return
        mid = {m.id: i for i, m in enumerate(self.morphisms)}
        oid = {o: i for i, o in enumerate(self.objects)}
        src = [oid[m.src] for m in self.morphisms]
        dst = [oid[m.dst] for m in self.morphisms]
        n = len(self.morphisms)
        table = [[-1] * n for _ in range(n)]
        for (g, f), h in self.comp.items():
            table[mid[g]][mid[f]] = mid[h]
        hom = {}
        for i in range(n):
            hom.setdefault((src[i], dst[i]), []).append(i)
        self._index = {
            "mid": mid, "oid": oid, "src": src, "dst": dst, "table": table, "hom": hom,
            "ident": [mid[self.identities[o]] for o in self.objects],
            "arrows": {}, "isos": {},
        }

    @property
    def idx(self) -> dict:
        self._build()
        return self._index

    def arrow(self, mid: str) -> "Arrow":
        return Arrow(self, mid)

    def hom(self, a: str, b: str) -> list["Arrow"]:
        key = (a, b)
        cache = self.idx["arrows"]
        if key not in cache:
            ix = self._index
            ids = ix["hom"].get((ix["oid"][a], ix["oid"][b]), [])
            cache[key] = [Arrow(self, self.morphisms[i].id) for i in ids]
        return cache[key]

    def id_arrow(self, obj: str) -> "Arrow":
        return Arrow(self, self.identities[obj])

    def compose_ids(self, g: str, f: str) -> str:
        return self.comp[(g, f)]

    def is_thin(self) -> bool:
        return all(len(v) <= 1 for v in self.idx["hom"].values())

    def is_iso_arrow(self, f: "Arrow") -> bool:
        cache = self.idx["isos"]
        if f.id not in cache:
            cache[f.id] = self.inverse(f) is not None
        return cache[f.id]

    def inverse(self, f: "Arrow") -> "Arrow | None":
        for g in self.hom(f.cod, f.dom):
            if (self.comp[(g.id, f.id)] == self.identities[f.dom]
                    and self.comp[(f.id, g.id)] == self.identities[f.cod]):
                return g
        return None


class Arrow:
    """A morphism of a :class:`FinCategory`, carrying its category."""

    __slots__ = ("cat", "id", "dom", "cod")

    def __init__(self, cat: FinCategory, id: str):
        m = cat.morphisms[cat.idx["mid"][id]]
        self.cat, self.id, self.dom, self.cod = cat, id, m.src, m.dst

    def __eq__(self, other):
        return (isinstance(other, Arrow) and self.id == other.id
                and (self.cat is other.cat or self.cat == other.cat))

    def __hash__(self):
        return hash(self.id)

    def __repr__(self):
        return f"Arrow({self.id}: {self.dom}->{self.cod})"


AnyMorphism = Union[CSetMorphism, Arrow]


# --- composition -----------------------------------------------------------


class EndpointMismatch(ValueError):
    pass


def compose(g: AnyMorphism, f: AnyMorphism) -> AnyMorphism:
    """g . f: apply f first, then g."""
    if isinstance(g, Arrow) and isinstance(f, Arrow):
        if f.cod != g.dom:
            raise EndpointMismatch(f"cannot compose {g.id} after {f.id}: {f.cod} != {g.dom}")
        return Arrow(g.cat, g.cat.comp[(g.id, f.id)])
    if f.cod != g.dom:
        for s, a, b in zip(f.schema.sorts, f.cod.sizes, g.dom.sizes):
            if a != b:
                raise EndpointMismatch(f"carrier mismatch at sort {s}: {a} != {b}")
        raise EndpointMismatch("codomain of f differs from domain of g in operation tables")
    return CSetMorphism(f.dom, g.cod,
                        tuple(tuple(gc[x] for x in fc) for gc, fc in zip(g.comps, f.comps)))


def is_iso(f: CSetMorphism) -> bool:
    return all(len(set(c)) == len(c) == n for c, n in zip(f.comps, f.cod.sizes))


def is_injective(f: CSetMorphism) -> bool:
    return all(len(set(c)) == len(c) for c in f.comps)


def is_surjective(f: CSetMorphism) -> bool:
    return all(len(set(c)) == n for c, n in zip(f.comps, f.cod.sizes))


def image(f: CSetMorphism) -> dict[str, frozenset[int]]:
    return {s: frozenset(c) for s, c in zip(f.schema.sorts, f.comps)}


# --- validation ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    law: str
    message: str
    witness: tuple = ()


@dataclass
class ValidationReport:
    entity: str
    violations: list[Violation] = field(default_factory=list)
    checks: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, message: str, *witness) -> None:
        self.violations.append(Violation(law, message, tuple(witness)))

    def count(self, law: str, n: int = 1) -> None:
        self.checks[law] = self.checks.get(law, 0) + n

    def __str__(self):
        if self.ok:
            return f"{self.entity}: ok"
        return "\n".join([f"{self.entity}: {len(self.violations)} violation(s)"]
                         + [f"  [{v.law}] {v.message}" for v in self.violations])


def validate(entity) -> ValidationReport:
    if isinstance(entity, FinCategory):
        return _validate_fincat(entity)
    if isinstance(entity, Schema):
        return _validate_schema(entity)
    if isinstance(entity, CSet):
        return _validate_cset(entity)
    if isinstance(entity, CSetMorphism):
        return _validate_morphism(entity)
    raise TypeError(f"cannot validate {type(entity).__name__}")


def _validate_schema(s: Schema, report: ValidationReport | None = None) -> ValidationReport:
    report = report or ValidationReport("schema")
    for name, count in _dupes(s.sorts):
        report.add("unique-names", f"sort {name!r} declared {count} times", name)
    for name, count in _dupes([o.name for o in s.ops]):
        report.add("unique-names", f"op {name!r} declared {count} times", name)
    for o in s.ops:
        for end in (o.src, o.dst):
            if end not in s.sorts:
                report.add("unknown-sort", f"op {o.name!r} refers to undeclared sort {end!r}",
                           o.name, end)
    return report


def _validate_cset(x: CSet, report: ValidationReport | None = None) -> ValidationReport:
    report = report or ValidationReport("cset")
    schema_report = _validate_schema(x.schema)
    report.violations.extend(schema_report.violations)
    if not schema_report.ok:
        return report
    if len(x.sizes) != len(x.schema.sorts):
        report.add("shape", "carrier list does not match the sort list")
        return report
    for s, n in zip(x.schema.sorts, x.sizes):
        if n < 0:
            report.add("shape", f"negative carrier size for sort {s}", s)
    if len(x.funcs) != len(x.schema.ops):
        report.add("shape", "function list does not match the op list")
        return report
    for o, f in zip(x.schema.ops, x.funcs):
        n_src, n_dst = x.size(o.src), x.size(o.dst)
        if len(f) != n_src:
            report.add("totality", f"op {o.name} has {len(f)} values for {n_src} elements of {o.src}",
                       o.name)
        for i, y in enumerate(f):
            report.count("totality")
            if not 0 <= y < n_dst:
                report.add("totality", f"op {o.name} sends {o.src} element {i} to {y}, "
                           f"not an element of {o.dst} (size {n_dst})", o.name, i, y)
    return report


def _validate_morphism(f: CSetMorphism) -> ValidationReport:
    report = ValidationReport("morphism")
    for label, obj in (("dom", f.dom), ("cod", f.cod)):
        sub = _validate_cset(obj)
        for v in sub.violations:
            report.add(v.law, f"{label}: {v.message}", *v.witness)
    if not report.ok:
        return report
    if f.dom.schema != f.cod.schema:
        report.add("schema", "domain and codomain have different schemas")
        return report
    schema = f.schema
    if len(f.comps) != len(schema.sorts):
        report.add("shape", "component list does not match the sort list")
        return report
    total = True
    for s, c, n_dom, n_cod in zip(schema.sorts, f.comps, f.dom.sizes, f.cod.sizes):
        if len(c) != n_dom:
            report.add("totality", f"component {s} has {len(c)} values for {n_dom} elements", s)
            total = False
        for x, y in enumerate(c):
            if not 0 <= y < n_cod:
                report.add("totality", f"component {s} sends {x} to {y}, outside carrier of size {n_cod}",
                           s, x, y)
                total = False
    if not total:
        return report
    for o in schema.ops:
        cs, ct = f.comp(o.src), f.comp(o.dst)
        od, oc = f.dom.fn(o.name), f.cod.fn(o.name)
        for x in range(f.dom.size(o.src)):
            report.count("naturality")
            if ct[od[x]] != oc[cs[x]]:
                report.add("naturality", f"op {o.name} at {o.src} element {x}: "
                           f"f({o.name}(x)) = {ct[od[x]]} but {o.name}(f(x)) = {oc[cs[x]]}",
                           o.name, x)
    return report


def _validate_fincat(c: FinCategory) -> ValidationReport:
    report = ValidationReport("fincat")
    for name, count in _dupes(c.objects):
        report.add("unique-names", f"object {name!r} declared {count} times", name)
    for name, count in _dupes([m.id for m in c.morphisms]):
        report.add("unique-names", f"morphism {name!r} declared {count} times", name)
    ends = {}
    for m in c.morphisms:
        for end in (m.src, m.dst):
            if end not in c.objects:
                report.add("unknown-object", f"morphism {m.id!r} refers to unknown object {end!r}",
                           m.id, end)
        ends[m.id] = (m.src, m.dst)
    for o in c.objects:
        i = c.identities.get(o)
        if i is None:
            report.add("identity", f"object {o!r} has no identity", o)
        elif i not in ends:
            report.add("unknown-morphism", f"identity of {o!r} is unknown morphism {i!r}", o, i)
        elif ends[i] != (o, o):
            report.add("identity", f"identity {i!r} of {o!r} is not an endomorphism of {o!r}", o, i)
    for (g, f), h in c.comp.items():
        for name in (g, f, h):
            if name not in ends:
                report.add("unknown-morphism", f"comp entry ({g},{f}) mentions unknown {name!r}",
                           g, f)
    if not report.ok:
        return report

    def get(g, f):
        return c.comp.get((g, f))

    for (g, f), h in c.comp.items():
        if ends[f][1] != ends[g][0]:
            report.add("composability", f"comp defined at non-composable pair ({g},{f})", g, f)
        elif ends[h] != (ends[f][0], ends[g][1]):
            report.add("endpoints", f"{g}.{f} = {h} has wrong endpoints", g, f, h)
    ids = [m.id for m in c.morphisms]
    for g, f in itertools.product(ids, ids):
        if ends[f][1] == ends[g][0] and get(g, f) is None:
            report.add("totality", f"comp undefined at ({g},{f})", g, f)
    if not report.ok:
        return report
    for f in ids:
        src, dst = ends[f]
        report.count("identity", 2)
        if get(c.identities[dst], f) != f:
            report.add("identity", f"id_{dst} . {f} != {f}", f)
        if get(f, c.identities[src]) != f:
            report.add("identity", f"{f} . id_{src} != {f}", f)
    for f in ids:
        for g in ids:
            if ends[f][1] != ends[g][0]:
                continue
            gf = get(g, f)
            for h in ids:
                if ends[g][1] != ends[h][0]:
                    continue
                report.count("associativity")
                if get(h, gf) != get(get(h, g), f):
                    report.add("associativity", f"{h}.({g}.{f}) != ({h}.{g}).{f}", h, g, f)
    return report


def _dupes(names: Iterable[str]) -> list[tuple[str, int]]:
    seen: dict[str, int] = {}
    for n in names:
        seen[n] = seen.get(n, 0) + 1
    return [(n, k) for n, k in seen.items() if k > 1]
