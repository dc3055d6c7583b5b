"""Covers generated by pushouts along monos, and the matching sheaf condition,
run exhaustively over small presheaves on a finite category.

A cover is the pair (g, n) of a pushout square

    C --f--> B
    |m       |n
    A --g--> D

with m mono, together with the kernel pairs of g and f, their diagonals and
the induced map m2 between them. A presheaf F is a sheaf for the cover when
z |-> (Fg z, Fn z) is a bijection from FD onto the pairs (x, y) in FA x FB
with Fm x = Ff y and Fg1 x = Fg2 x.
"""
from __future__ import annotations

import itertools
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .kernel import Arrow, Budget, BudgetExceeded, FinCategory, ValidationReport, compose
from .limits import Square
from .universal import factor_through, find_pullback


class MissingLimit(ValueError):
    pass


@dataclass(frozen=True)
class Presheaf:
    """Contravariant functor: ``maps[i]`` is F(u) : F(cod u) -> F(dom u) for the
    i-th morphism u of ``base``."""

    base: FinCategory
    sizes: tuple[int, ...]
    maps: tuple[tuple[int, ...], ...]

    def size(self, obj: str) -> int:
        return self.sizes[self.base.idx["oid"][obj]]

    def map(self, u: Arrow | str) -> tuple[int, ...]:
        mid = u.id if isinstance(u, Arrow) else u
        return self.maps[self.base.idx["mid"][mid]]

    @classmethod
    def build(cls, base: FinCategory, sizes: dict[str, int], maps: dict[str, list[int]]) -> "Presheaf":
        return cls(base, tuple(sizes[o] for o in base.objects),
                   tuple(tuple(maps[m.id]) for m in base.morphisms))


def validate_presheaf(F: Presheaf) -> ValidationReport:
    report = ValidationReport("presheaf")
    cat = F.base
    if len(F.sizes) != len(cat.objects) or len(F.maps) != len(cat.morphisms):
        report.add("shape", "carrier or map list does not match the base category")
        return report
    for mo, table in zip(cat.morphisms, F.maps):
        n_in, n_out = F.size(mo.dst), F.size(mo.src)
        if len(table) != n_in or any(not 0 <= v < n_out for v in table):
            report.add("totality", f"F({mo.id}) is not a function F({mo.dst}) -> F({mo.src})", mo.id)
    if not report.ok:
        return report
    for o in cat.objects:
        report.count("identity")
        if F.map(cat.identities[o]) != tuple(range(F.size(o))):
            report.add("identity", f"F(id_{o}) is not the identity", o)
    for (g, f), h in cat.comp.items():
        report.count("functoriality")
        Fg, Ff, Fh = F.map(g), F.map(f), F.map(h)
        if any(Fh[z] != Ff[Fg[z]] for z in range(len(Fg))):
            report.add("functoriality", f"F({g}.{f}) != F({f}).F({g})", g, f)
    return report


def representable(cat: FinCategory, obj: str) -> Presheaf:
    """hom(-, obj), with F(u) acting by precomposition."""
    if obj not in cat.objects:
        raise KeyError(f"unknown object {obj!r}")
    homs = {b: [h.id for h in cat.hom(b, obj)] for b in cat.objects}
    index = {b: {h: i for i, h in enumerate(hs)} for b, hs in homs.items()}
    maps = []
    for mo in cat.morphisms:
        maps.append(tuple(index[mo.src][cat.comp[(h, mo.id)]] for h in homs[mo.dst]))
    return Presheaf(cat, tuple(len(homs[b]) for b in cat.objects), tuple(maps))


# --- covers ----------------------------------------------------------------


@dataclass(frozen=True)
class Cover:
    square: Square       # top f: C->B, left m: C->A, bottom g: A->D, right n: B->D
    g1: Arrow
    g2: Arrow
    delta: Arrow         # A -> A2
    f1: Arrow
    f2: Arrow
    gamma: Arrow         # C -> C2
    m2: Arrow            # C2 -> A2
    n_is_mono: bool = True

    @property
    def g(self) -> Arrow:
        return self.square.bottom

    @property
    def n(self) -> Arrow:
        return self.square.right

    def label(self) -> str:
        sq = self.square
        return f"({sq.bottom.id}, {sq.right.id}) over span ({sq.left.id}, {sq.top.id})"


def _kernel_pair(u: Arrow, budget: Budget) -> tuple[Arrow, Arrow, Arrow]:
    pb = find_pullback(u, u, budget)
    if pb is None:
        raise MissingLimit(f"no kernel pair for {u.id}")
    p1, p2 = pb
    ident = u.cat.id_arrow(u.dom)
    diag = factor_through(p1.dom, u.dom, [(p1, ident), (p2, ident)])
    return p1, p2, diag


def make_cover(sq: Square, budget: Budget | int | None = None) -> Cover:
    """Attach kernel-pair data to a pushout square along a mono."""
    from .limits import is_mono
    budget = Budget.coerce(budget)
    m, f, g = sq.left, sq.top, sq.bottom
    g1, g2, delta = _kernel_pair(g, budget)
    f1, f2, gamma = _kernel_pair(f, budget)
    m2 = factor_through(g1.dom, f1.dom, [(g1, compose(m, f1)), (g2, compose(m, f2))])
    if m2 is None:
        raise MissingLimit(f"no induced map between the kernel pairs of {f.id} and {g.id}")
    return Cover(sq, g1, g2, delta, f1, f2, gamma, m2, is_mono(sq.right, budget))


@dataclass
class Covers:
    covers: list[Cover]
    truncated: bool = False
    warnings: list[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.covers)

    def __len__(self):
        return len(self.covers)


def generate_covers(cat: FinCategory, budget: Budget | int | None = None,
                    audit: bool = True) -> Covers:
    """One cover per isomorphism class of pushout square along a mono in ``cat``.

    Only generating covers are produced. With ``audit`` the category is first
    audited; a failed audit does not stop the enumeration but is reported as a
    warning, since the construction presumes an adhesive base.
    """
    from .adhesion import adhesivity_audit, pushout_mono_squares
    budget = Budget.coerce(budget)
    out = Covers([])
    if audit:
        report = adhesivity_audit(cat, budget=Budget(budget.limit))
        if report.verdict != "adhesive-within-bounds":
            msg = f"{cat.name or 'category'} did not pass the adhesivity audit ({report.verdict})"
            out.warnings.append(msg)
            warnings.warn(msg, stacklevel=2)
    try:
        missing: list = []
        squares = pushout_mono_squares(cat, budget, missing)
        if missing:
            m, f = missing[0]
            raise MissingLimit(f"span ({m}, {f}) has no pushout")
        for sq in squares:
            out.covers.append(make_cover(sq, budget))
    except BudgetExceeded:
        out.truncated = True
    return out


def pullback_cover(cover: Cover, h: Arrow, budget: Budget | int | None = None) -> Cover | None:
    """Pull the cover's square back along ``h: D' -> D``; None if a pullback is
    missing or the result is not a pushout."""
    from .limits import verify_square
    budget = Budget.coerce(budget)
    sq = cover.square
    m, f, g, n = sq.left, sq.top, sq.bottom, sq.right
    pa, pb = find_pullback(g, h, budget), find_pullback(n, h, budget)
    if pa is None or pb is None:
        return None
    a, g1 = pa
    b, n1 = pb
    pc = find_pullback(m, a, budget)
    if pc is None:
        return None
    c, m1 = pc
    f1 = factor_through(b.dom, c.dom, [(b, compose(f, c)), (n1, compose(g1, m1))])
    if f1 is None:
        return None
    new = Square(f1, m1, g1, n1)
    if not verify_square(new, "pushout", budget=budget).holds:
        return None
    return make_cover(new, budget)


# --- the sheaf condition ---------------------------------------------------


@dataclass(frozen=True)
class SheafFailure:
    cover: Cover
    witness: tuple[int, int]
    reason: str  # no-amalgamation | non-unique-amalgamation | kernel-pair-clause-failure


@dataclass
class SheafVerdict:
    is_sheaf: bool
    failures: list[SheafFailure] = field(default_factory=list)


def _amalgamation_failures(F: Presheaf, cover: Cover, with_kernel_clause: bool) -> list[SheafFailure]:
    sq = cover.square
    Fm, Ff, Fg, Fn = F.map(sq.left), F.map(sq.top), F.map(sq.bottom), F.map(sq.right)
    Fg1, Fg2 = F.map(cover.g1), F.map(cover.g2)
    hits = Counter((Fg[z], Fn[z]) for z in range(len(Fg)))
    out = []
    for x in range(len(Fm)):
        clause = Fg1[x] == Fg2[x]
        if with_kernel_clause and not clause:
            continue
        for y in range(len(Ff)):
            if Fm[x] != Ff[y]:
                continue
            k = hits[(x, y)]
            if k == 0:
                reason = "no-amalgamation" if clause else "kernel-pair-clause-failure"
                out.append(SheafFailure(cover, (x, y), reason))
            elif k > 1:
                out.append(SheafFailure(cover, (x, y), "non-unique-amalgamation"))
    return out


def sheaf_check(F: Presheaf, covers, first_failure_only: bool = False) -> SheafVerdict:
    failures = []
    for cover in covers:
        if cover.square.top.cat != F.base:
            raise ValueError("presheaf and covers live over different categories")
        failures.extend(_amalgamation_failures(F, cover, True))
        if failures and first_failure_only:
            break
    return SheafVerdict(not failures, failures)


def sends_to_limit(F: Presheaf, sq_cover: Cover) -> list[SheafFailure]:
    """Failures of FD = FA x_FC FB for the cover's pushout square."""
    return _amalgamation_failures(F, sq_cover, False)


def jointly_monic_failures(F: Presheaf, cover: Cover) -> list[tuple[int, int]]:
    """Failures of the set square (F gamma, F m, F delta, F m2) being a pullback,
    given as (x, w) in FA x FC2 that are hit zero or several times."""
    Fm, Fgam = F.map(cover.square.left), F.map(cover.gamma)
    Fdel, Fm2 = F.map(cover.delta), F.map(cover.m2)
    hits = Counter((Fdel[z], Fm2[z]) for z in range(len(Fdel)))
    return [(x, w) for x in range(len(Fm)) for w in range(len(Fgam))
            if Fm[x] == Fgam[w] and hits[(x, w)] != 1]


# --- presheaf enumeration ----------------------------------------------------


class PresheafStream:
    """All presheaves with carriers of size <= k, in canonical order.

    Iterating stops early once the budget runs out; ``truncated`` then reads True.
    """

    def __init__(self, cat: FinCategory, k: int, budget: Budget | int | None = None):
        self.cat, self.k = cat, k
        self.budget = Budget.coerce(budget)
        self.truncated = False
        self.count = 0

    def __iter__(self) -> Iterator[Presheaf]:
        try:
            yield from self._generate()
        except BudgetExceeded:
            self.truncated = True

    def _generate(self):
        cat = self.cat
        ix = cat.idx
        n_obj, n_mor = len(cat.objects), len(cat.morphisms)
        ident = set(ix["ident"])
        free = [i for i in range(n_mor) if i not in ident]
        order = {u: p for p, u in enumerate(free)}
        # F(h) = F(f) . F(g) for h = g . f, checked once g, f and h are all assigned
        checks: list[list[tuple[int, int, int]]] = [[] for _ in free]
        for (g, f), h in cat.comp.items():
            gi, fi, hi = ix["mid"][g], ix["mid"][f], ix["mid"][h]
            pos = [order[u] for u in (gi, fi, hi) if u in order]
            if pos:
                checks[max(pos)].append((gi, fi, hi))
        src, dst = ix["src"], ix["dst"]
        funcs = {}
        for sizes in itertools.product(range(self.k + 1), repeat=n_obj):
            maps: list = [None] * n_mor
            for i in ident:
                maps[i] = tuple(range(sizes[src[i]]))

            def options(u):
                key = (sizes[dst[u]], sizes[src[u]])
                if key not in funcs:
                    funcs[key] = list(itertools.product(range(key[1]), repeat=key[0]))
                return funcs[key]

            def rec(p):
                if p == len(free):
                    self.count += 1
                    yield Presheaf(cat, sizes, tuple(maps))
                    return
                u = free[p]
                for t in options(u):
                    self.budget.tick()
                    maps[u] = t
                    if all(all(maps[h][z] == maps[f][maps[g][z]] for z in range(len(maps[g])))
                           for g, f, h in checks[p]):
                        yield from rec(p + 1)
                maps[u] = None

            yield from rec(0)


def enumerate_presheaves(cat: FinCategory, k: int, budget: Budget | int | None = None) -> PresheafStream:
    return PresheafStream(cat, k, budget)


def canonical_form(F: Presheaf) -> tuple:
    """Lexicographically least relabelling of F; equal iff presheaves are isomorphic."""
    cat = F.base
    ix = cat.idx
    best = None
    for perms in itertools.product(*(itertools.permutations(range(n)) for n in F.sizes)):
        maps = []
        for u, table in enumerate(F.maps):
            ps, pd = perms[ix["src"][u]], perms[ix["dst"][u]]
            out = [0] * len(table)
            for z, v in enumerate(table):
                out[pd[z]] = ps[v]
            maps.append(tuple(out))
        cand = tuple(maps)
        if best is None or cand < best:
            best = cand
    return F.sizes, best


# --- the embedding check -----------------------------------------------------


@dataclass
class EmbeddingReport:
    category: str
    k: int
    covers: int = 0
    presheaves: int = 0
    sheaves: int = 0
    sheaf_iso_classes: int = 0
    representables: dict[str, bool] = field(default_factory=dict)
    limit_failures: list[tuple[Presheaf, SheafFailure]] = field(default_factory=list)
    jointly_monic_failures: list[tuple[Presheaf, Cover, tuple[int, int]]] = field(default_factory=list)
    first_non_sheaf: Presheaf | None = None
    truncated: bool = False
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (all(self.representables.values()) and not self.limit_failures
                and not self.jointly_monic_failures)


def embedding_check(cat: FinCategory, k: int, budget: Budget | int | None = None,
                    audit: bool = True, iso_classes: bool = True) -> EmbeddingReport:
    """Check, for every presheaf with carriers <= k that satisfies the sheaf
    condition, that it turns every pushout along a mono into a limit and that
    the kernel-pair square (F gamma, F m, F delta, F m2) is a pullback."""
    budget = Budget.coerce(budget)
    covers = generate_covers(cat, budget, audit=audit)
    report = EmbeddingReport(cat.name or "category", k, covers=len(covers),
                             warnings=list(covers.warnings), truncated=covers.truncated)
    for obj in cat.objects:
        report.representables[obj] = sheaf_check(representable(cat, obj), covers).is_sheaf
    stream = enumerate_presheaves(cat, k, budget)
    classes = set()
    for F in stream:
        if not sheaf_check(F, covers, first_failure_only=True).is_sheaf:
            if report.first_non_sheaf is None:
                report.first_non_sheaf = F
            continue
        report.sheaves += 1
        if iso_classes:
            classes.add(canonical_form(F))
        for cover in covers:
            for fail in sends_to_limit(F, cover):
                report.limit_failures.append((F, fail))
            for w in jointly_monic_failures(F, cover):
                report.jointly_monic_failures.append((F, cover, w))
    report.presheaves = stream.count
    report.sheaf_iso_classes = len(classes)
    report.truncated = report.truncated or stream.truncated
    return report
