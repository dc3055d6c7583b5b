"""Text documents for every entity kind, on top of TOML.

Each document starts with ``format = 1`` and ``kind = "..."``. C-set based
documents carry a ``[schema]`` section, named objects under ``[objects.NAME]``
and named arrows under ``[arrows.NAME]``; the names are fixed per kind (see
``ROLES``). Documents over a finite category carry a ``[category]`` section
and refer to its morphisms by id. Serialization is canonical: keys sorted,
one carrier or function per line.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import tomlkit
from tomlkit.exceptions import ParseError

from .adhesion import Cube
from .dpo import Rule
from .kernel import Arrow, CSet, CSetMorphism, FinCategory, Morphism, Op, Schema
from .limits import Square
from .sheaf import Presheaf

FORMAT_VERSION = 1
KINDS = ("schema", "cset", "morphism", "fincat", "rule", "presheaf", "square", "cube")

# kind -> (object names, {arrow name: (src, dst)})
ROLES: dict[str, tuple[tuple[str, ...], dict[str, tuple[str, str]]]] = {
    "morphism": (("dom", "cod"), {"f": ("dom", "cod")}),
    "rule": (("K", "L", "R"), {"l": ("K", "L"), "r": ("K", "R")}),
    "square": (("C", "A", "B", "D"), {
        "top": ("C", "B"), "left": ("C", "A"), "bottom": ("A", "D"), "right": ("B", "D")}),
    "cube": (("C", "A", "B", "D", "C1", "A1", "B1", "D1"), {
        "t_top": ("C1", "B1"), "t_left": ("C1", "A1"), "t_bottom": ("A1", "D1"), "t_right": ("B1", "D1"),
        "b_top": ("C", "B"), "b_left": ("C", "A"), "b_bottom": ("A", "D"), "b_right": ("B", "D"),
        "c": ("C1", "C"), "a": ("A1", "A"), "b": ("B1", "B"), "d": ("D1", "D")}),
}


class FormatError(ValueError):
    """Malformed document; ``line``/``col`` are set for syntax errors."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)
        self.line, self.col = line, col


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Any
    version: int = FORMAT_VERSION


# --- payload <-> named arrows ---------------------------------------------


def _arrows_of(kind: str, payload) -> dict:
    if kind == "morphism":
        return {"f": payload}
    if kind == "rule":
        return {"l": payload.l, "r": payload.r}
    if kind == "square":
        return {"top": payload.top, "left": payload.left, "bottom": payload.bottom, "right": payload.right}
    if kind == "cube":
        t, b = payload.top, payload.bottom
        return {"t_top": t.top, "t_left": t.left, "t_bottom": t.bottom, "t_right": t.right,
                "b_top": b.top, "b_left": b.left, "b_bottom": b.bottom, "b_right": b.right,
                "c": payload.c, "a": payload.a, "b": payload.b, "d": payload.d}
    raise ValueError(kind)


def _payload_of(kind: str, arrows: dict, extra: dict):
    if kind == "morphism":
        return arrows["f"]
    if kind == "rule":
        return Rule(arrows["l"], arrows["r"], extra.get("name", "rule"))
    if kind == "square":
        return Square(arrows["top"], arrows["left"], arrows["bottom"], arrows["right"])
    t = Square(arrows["t_top"], arrows["t_left"], arrows["t_bottom"], arrows["t_right"])
    b = Square(arrows["b_top"], arrows["b_left"], arrows["b_bottom"], arrows["b_right"])
    return Cube(t, b, arrows["c"], arrows["a"], arrows["b"], arrows["d"])


def _objects_of(kind: str, arrows: dict) -> dict[str, CSet]:
    names, roles = ROLES[kind]
    objects: dict[str, CSet] = {}
    for aname, (src, dst) in roles.items():
        f = arrows[aname]
        for role, obj in ((src, f.dom), (dst, f.cod)):
            if objects.setdefault(role, obj) != obj:
                raise ValueError(f"arrows disagree on object {role} (see arrow {aname})")
    return {n: objects[n] for n in names}


# --- serialization ----------------------------------------------------------


def _lines(rows) -> tomlkit.items.Array:
    arr = tomlkit.array()
    for r in rows:
        arr.append(list(r))
    if len(arr) > 1:
        arr.multiline(True)
    return arr


def _sorted_table(d: dict) -> tomlkit.items.Table:
    t = tomlkit.table()
    for k in sorted(d):
        t[k] = list(d[k]) if isinstance(d[k], (tuple, list)) else d[k]
    return t


def _schema_table(s: Schema):
    t = tomlkit.table()
    t["sorts"] = list(s.sorts)
    t["ops"] = _lines((o.name, o.src, o.dst) for o in s.ops)
    return t


def _cset_tables(x: CSet):
    sizes = _sorted_table(dict(zip(x.schema.sorts, x.sizes)))
    funcs = _sorted_table({o.name: f for o, f in zip(x.schema.ops, x.funcs)})
    return sizes, funcs


def _category_table(c: FinCategory):
    t = tomlkit.table()
    if c.name:
        t["name"] = c.name
    t["objects"] = list(c.objects)
    t["morphisms"] = _lines((m.id, m.src, m.dst) for m in c.morphisms)
    t["identities"] = _sorted_table(c.identities)
    t["comp"] = _lines(sorted((g, f, h) for (g, f), h in c.comp.items()))
    return t


def serialize(doc: Document) -> str:
    kind, p = doc.kind, doc.payload
    if kind not in KINDS:
        raise ValueError(f"unknown document kind {kind!r}")
    out = tomlkit.document()
    out.add(tomlkit.comment(f"adhesive {kind} document"))
    out["format"] = doc.version
    out["kind"] = kind
    if kind == "schema":
        out["schema"] = _schema_table(p)
    elif kind == "cset":
        out["schema"] = _schema_table(p.schema)
        out["sizes"], out["funcs"] = _cset_tables(p)
    elif kind == "fincat":
        out["category"] = _category_table(p)
    elif kind == "presheaf":
        out["category"] = _category_table(p.base)
        out["sizes"] = _sorted_table(dict(zip(p.base.objects, p.sizes)))
        out["maps"] = _sorted_table({m.id: t for m, t in zip(p.base.morphisms, p.maps)})
    else:
        if kind == "rule":
            out["name"] = p.name
        arrows = _arrows_of(kind, p)
        first = next(iter(arrows.values()))
        if isinstance(first, Arrow):
            out["category"] = _category_table(first.cat)
            out["arrows"] = _sorted_table({n: a.id for n, a in arrows.items()})
        else:
            out["schema"] = _schema_table(first.schema)
            objs = tomlkit.table(is_super_table=True)
            for name, x in sorted(_objects_of(kind, arrows).items()):
                o = tomlkit.table(is_super_table=True)
                o["sizes"], o["funcs"] = _cset_tables(x)
                objs[name] = o
            out["objects"] = objs
            arrs = tomlkit.table(is_super_table=True)
            for name in sorted(arrows):
                f = arrows[name]
                arrs[name] = _sorted_table(dict(zip(f.schema.sorts, f.comps)))
            out["arrows"] = arrs
    return tomlkit.dumps(out)


# --- parsing ----------------------------------------------------------------


def _need(d: dict, key: str, where: str, typ=None):
    if key not in d:
        raise FormatError(f"missing {where + '.' if where else ''}{key}")
    v = d[key]
    if typ is not None and not isinstance(v, typ):
        raise FormatError(f"{where + '.' if where else ''}{key} has the wrong type")
    return v


def _int_list(v, where: str) -> list[int]:
    if not isinstance(v, list) or any(isinstance(e, bool) or not isinstance(e, int) for e in v):
        raise FormatError(f"{where} must be a list of integers")
    return v


def _parse_schema(d: dict) -> Schema:
    t = _need(d, "schema", "", dict)
    sorts = _need(t, "sorts", "schema", list)
    ops = []
    for row in _need(t, "ops", "schema", list):
        if not (isinstance(row, list) and len(row) == 3 and all(isinstance(e, str) for e in row)):
            raise FormatError(f"schema.ops entry {row!r} must be [name, src, dst]")
        for sort in row[1:]:
            if sort not in sorts:
                raise FormatError(f"schema.ops entry {row[0]!r} names unknown sort {sort!r}")
        ops.append(Op(*row))
    try:
        return Schema(tuple(sorts), tuple(ops))
    except ValueError as e:
        raise FormatError(f"schema: {e}") from None


def _parse_cset(schema: Schema, sizes, funcs, where: str) -> CSet:
    if not isinstance(sizes, dict) or not isinstance(funcs, dict):
        raise FormatError(f"{where} needs sizes and funcs tables")
    for s, n in sizes.items():
        if s not in schema.sorts:
            raise FormatError(f"{where}.sizes names unknown sort {s!r}")
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise FormatError(f"{where}.sizes.{s} must be a non-negative integer")
    names = {o.name for o in schema.ops}
    for op, table in funcs.items():
        if op not in names:
            raise FormatError(f"{where}.funcs names unknown operation {op!r}")
        _int_list(table, f"{where}.funcs.{op}")
    return CSet.build(schema, sizes, funcs)


def _parse_category(d: dict) -> FinCategory:
    t = _need(d, "category", "", dict)
    objects = _need(t, "objects", "category", list)
    morphisms = []
    for row in _need(t, "morphisms", "category", list):
        if not (isinstance(row, list) and len(row) == 3 and all(isinstance(e, str) for e in row)):
            raise FormatError(f"category.morphisms entry {row!r} must be [id, src, dst]")
        morphisms.append(Morphism(*row))
    identities = _need(t, "identities", "category", dict)
    comp = {}
    for row in _need(t, "comp", "category", list):
        if not (isinstance(row, list) and len(row) == 3 and all(isinstance(e, str) for e in row)):
            raise FormatError(f"category.comp entry {row!r} must be [g, f, g.f]")
        comp[(row[0], row[1])] = row[2]
    ids = {m.id for m in morphisms}
    for o, i in identities.items():
        if o not in objects:
            raise FormatError(f"category.identities names unknown object {o!r}")
        if i not in ids:
            raise FormatError(f"category.identities.{o} names unknown morphism {i!r}")
    for m in morphisms:
        for o in (m.src, m.dst):
            if o not in objects:
                raise FormatError(f"morphism {m.id!r} names unknown object {o!r}")
    for (g, f), h in comp.items():
        for x in (g, f, h):
            if x not in ids:
                raise FormatError(f"category.comp names unknown morphism {x!r}")
    return FinCategory(objects, morphisms, identities, comp, t.get("name", ""))


def _parse_diagram(kind: str, d: dict) -> dict:
    names, roles = ROLES[kind]
    arrows_t = _need(d, "arrows", "", dict)
    for a in arrows_t:
        if a not in roles:
            raise FormatError(f"unknown arrow {a!r} in a {kind} document")
    for a in roles:
        if a not in arrows_t:
            raise FormatError(f"missing arrows.{a}")
    if "category" in d:
        cat = _parse_category(d)
        out = {}
        for a, mid in arrows_t.items():
            if not isinstance(mid, str) or mid not in cat.idx["mid"]:
                raise FormatError(f"arrows.{a} names unknown morphism {mid!r}")
            out[a] = cat.arrow(mid)
        return out
    schema = _parse_schema(d)
    objs_t = _need(d, "objects", "", dict)
    objects = {}
    for n in names:
        o = _need(objs_t, n, "objects", dict)
        objects[n] = _parse_cset(schema, o.get("sizes", {}), o.get("funcs", {}), f"objects.{n}")
    for n in objs_t:
        if n not in names:
            raise FormatError(f"unknown object {n!r} in a {kind} document")
    out = {}
    for a, (src, dst) in roles.items():
        t = arrows_t[a]
        if not isinstance(t, dict):
            raise FormatError(f"arrows.{a} must be a table of components")
        for s, comp in t.items():
            if s not in schema.sorts:
                raise FormatError(f"arrows.{a} names unknown sort {s!r}")
            _int_list(comp, f"arrows.{a}.{s}")
        out[a] = CSetMorphism.build(objects[src], objects[dst], t)
    return out


def parse(text: str) -> Document:
    try:
        d = tomlkit.parse(text).unwrap()
    except ParseError as e:
        raise FormatError(str(e).split(" at line")[0], e.line, e.col) from None
    if "format" not in d:
        raise FormatError("missing format version header (format = 1)")
    version = d["format"]
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version!r}")
    kind = _need(d, "kind", "", str)
    if kind not in KINDS:
        raise FormatError(f"unknown document kind {kind!r}")
    if kind == "schema":
        payload: Any = _parse_schema(d)
    elif kind == "cset":
        payload = _parse_cset(_parse_schema(d), d.get("sizes", {}), d.get("funcs", {}), "cset")
    elif kind == "fincat":
        payload = _parse_category(d)
    elif kind == "presheaf":
        cat = _parse_category(d)
        sizes = _need(d, "sizes", "", dict)
        maps = _need(d, "maps", "", dict)
        for o in cat.objects:
            if not isinstance(sizes.get(o), int) or sizes[o] < 0:
                raise FormatError(f"sizes.{o} must be a non-negative integer")
        for k in sizes:
            if k not in cat.objects:
                raise FormatError(f"sizes names unknown object {k!r}")
        for k in maps:
            if k not in cat.idx["mid"]:
                raise FormatError(f"maps names unknown morphism {k!r}")
        for m in cat.morphisms:
            _int_list(_need(maps, m.id, "maps"), f"maps.{m.id}")
        payload = Presheaf.build(cat, sizes, maps)
    else:
        arrows = _parse_diagram(kind, d)
        try:
            payload = _payload_of(kind, arrows, d)
        except ValueError as e:
            raise FormatError(f"{kind}: {e}") from None
    return Document(kind, payload, version)


def load(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(doc: Document, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(doc))
