"""Van Kampen cubes and the adhesivity checks built on them.

Cube layout (primed objects on top, verticals c, a, b, d pointing down)::

          C' --f'--> B'
         /|          /|
       m' c        n' b
       /  v        /  v
      A' -|-g'--> D'  |
      |   C --f---|-> B
      a  /        d  /
      | m         | n
      v/          v/
      A ---g----> D

Faces are named top, bottom, back (C'B'CB), left (C'A'CA), front (A'D'AD)
and right (B'D'BD). Each face is stored as a :class:`Square` whose apex is
the corner nearest C'.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from .kernel import (Arrow, Budget, BudgetExceeded, CSetMorphism, FinCategory, compose, identity,
                     is_injective)
from .limits import (Cospan, NonCommutingSquare, Span, Square, SquareVerdict, check_commutes,
                     is_mono, kernel_pair, pullback, pullback_mediator, pushout, verify_square)
from .universal import find_pullback, find_pushout

DEFAULT_BUDGET = int(os.environ.get("ADHESIVE_BUDGET", 20_000_000))

FACES = ("top", "bottom", "back", "left", "front", "right")


@dataclass(frozen=True)
class Cube:
    top: Square
    bottom: Square
    c: object
    a: object
    b: object
    d: object

    def face(self, name: str) -> Square:
        t, bt = self.top, self.bottom
        if name == "top":
            return t
        if name == "bottom":
            return bt
        if name == "back":
            return Square(t.top, self.c, bt.top, self.b)
        if name == "left":
            return Square(t.left, self.c, bt.left, self.a)
        if name == "front":
            return Square(t.bottom, self.a, bt.bottom, self.d)
        if name == "right":
            return Square(t.right, self.b, bt.right, self.d)
        raise KeyError(name)

    def faces(self) -> dict[str, Square]:
        return {name: self.face(name) for name in FACES}


@dataclass
class VKVerdict:
    preconditions_met: bool
    top_is_pushout: bool
    front_right_pullbacks: bool
    vk_holds: bool
    failing_face: str | None = None
    witness: str | None = None
    face_verdicts: dict[str, SquareVerdict] = field(default_factory=dict)


def check_cube_commutes(cube: Cube) -> None:
    for name, sq in cube.faces().items():
        check_commutes(sq, f"{name} face")


def vk_cube_check(cube: Cube, engine: str = "componentwise",
                  budget: Budget | int | None = None) -> VKVerdict:
    """Evaluate the Van Kampen condition on one cube.

    With the bottom a pushout along a mono and the back and left faces
    pullbacks, the top must be a pushout exactly when front and right are
    pullbacks. Cubes failing the hypotheses hold vacuously.
    """
    check_cube_commutes(cube)
    budget = Budget.coerce(budget)
    v = {}

    def check(name, kind):
        v[name] = verify_square(cube.face(name), kind, engine, budget)
        return v[name].holds

    bottom = cube.bottom
    along_mono = is_mono(bottom.left, budget) or is_mono(bottom.top, budget)
    pre = along_mono and check("bottom", "pushout") and check("back", "pullback") \
        and check("left", "pullback")
    if not pre:
        return VKVerdict(False, False, False, True, face_verdicts=v)
    top = check("top", "pushout")
    front, right = check("front", "pullback"), check("right", "pullback")
    fr = front and right
    holds = top == fr
    failing, witness = None, None
    if not holds:
        if top:
            failing = "front" if not front else "right"
            witness = f"top face is a pushout but the {failing} face is not a pullback: " \
                      f"{v[failing].witness}"
        else:
            failing = "top"
            witness = f"front and right faces are pullbacks but the top is not a pushout: " \
                      f"{v['top'].witness}"
    return VKVerdict(True, top, fr, holds, failing, witness, v)


# --- cube constructions (C-sets) ------------------------------------------


def pullback_cube(sq: Square, h: CSetMorphism) -> Cube:
    """Pull every corner of ``sq`` back along ``h: D' -> D``."""
    m, f, g, n = sq.left, sq.top, sq.bottom, sq.right
    _, pa = pullback(Cospan(g, h))         # A' with a: A'->A, g': A'->D'
    a, g1 = pa.left, pa.right
    _, pb = pullback(Cospan(n, h))         # B' with b, n'
    b, n1 = pb.left, pb.right
    _, pc = pullback(Cospan(m, a))         # C' with c: C'->C, m': C'->A'
    c, m1 = pc.left, pc.right
    f1 = pullback_mediator(pb, compose(f, c), compose(g1, m1))
    return Cube(Square(f1, m1, g1, n1), sq, c, a, b, h)


def prop_basic_cube(sq: Square) -> Cube:
    """Front and bottom faces are ``sq``; the remaining edges are identities."""
    m, f, g, n = sq.left, sq.top, sq.bottom, sq.right
    if isinstance(f, Arrow):
        idC, idB = f.cat.id_arrow(sq.C), f.cat.id_arrow(sq.B)
    else:
        idC, idB = identity(sq.C), identity(sq.B)
    return Cube(Square(f, idC, f, idB), sq, idC, m, idB, n)


# --- Prop basic and Lemma basic -------------------------------------------


@dataclass
class PropBasicReport:
    square: Square
    n_is_mono: bool
    pullback: SquareVerdict

    @property
    def holds(self) -> bool:
        return self.n_is_mono and self.pullback.holds


def _require_mono(m, label="m"):
    if not is_mono(m):
        raise ValueError(f"{label} is not a monomorphism")


def prop_basic_check(m: CSetMorphism, f: CSetMorphism, engine: str = "componentwise") -> PropBasicReport:
    """Push out the mono ``m`` along ``f``; the new leg must be mono and the square a pullback."""
    _require_mono(m)
    if m.dom != f.dom:
        raise ValueError("m and f must share a domain")
    _, legs = pushout(Span(m, f))
    sq = Square(f, m, legs.left, legs.right)
    return PropBasicReport(sq, is_mono(legs.right), verify_square(sq, "pullback", engine))


@dataclass
class LemmaReport:
    pushout_square: Square
    C2: CSetMorphism  # diagonal gamma: C -> C2
    A2: CSetMorphism  # diagonal delta: A -> A2
    m2: CSetMorphism
    square: Square
    well_formed: bool
    m2_is_mono: bool
    is_pushout: SquareVerdict
    is_pullback: SquareVerdict

    @property
    def holds(self) -> bool:
        return self.well_formed and self.is_pushout.holds and self.is_pullback.holds


def lemma_basic_check(m: CSetMorphism, f: CSetMorphism, engine: str = "componentwise") -> LemmaReport:
    """Build the diagonal square (gamma, m, delta, m2) between kernel pairs and test it.

    ``gamma: C -> C2`` and ``delta: A -> A2`` are the diagonals into the kernel
    pairs of f and of the pushout leg g; ``m2: C2 -> A2`` sends (c1, c2) to
    (m c1, m c2).
    """
    _require_mono(m)
    if m.dom != f.dom:
        raise ValueError("m and f must share a domain")
    _, legs = pushout(Span(m, f))
    g, n = legs.left, legs.right
    po = Square(f, m, g, n)
    kf, kg = kernel_pair(f), kernel_pair(g)
    m2 = pullback_mediator(Span(kg.p1, kg.p2), compose(m, kf.p1), compose(m, kf.p2))
    sq = Square(kf.diagonal, m, kg.diagonal, m2)
    well_formed = (verify_square(po, "pushout", engine).holds
                   and verify_square(Square(kf.p2, kf.p1, f, f), "pullback", engine).holds
                   and verify_square(Square(kg.p2, kg.p1, g, g), "pullback", engine).holds)
    try:
        check_commutes(sq)
    except NonCommutingSquare:
        well_formed = False
    return LemmaReport(po, kf.diagonal, kg.diagonal, m2, sq, well_formed, is_injective(m2),
                       verify_square(sq, "pushout", engine), verify_square(sq, "pullback", engine))


# --- exhaustive audit of finite categories ---------------------------------


@dataclass
class AuditReport:
    category: str
    objects: int
    morphisms: int
    cubes_checked: int = 0
    cubes_enumerated: int = 0
    bottom_squares: int = 0
    violations: list[Cube] = field(default_factory=list)
    violation_count: int = 0
    missing_pushouts: list[tuple[str, str]] = field(default_factory=list)
    missing_pullbacks: list[tuple[str, str]] = field(default_factory=list)
    budget_exceeded: bool = False
    steps: int = 0

    @property
    def verdict(self) -> str:
        if self.violation_count:
            return "violation-found"
        if self.budget_exceeded or self.missing_pushouts or self.missing_pullbacks:
            return "inconclusive"
        return "adhesive-within-bounds"


def _isos(cat: FinCategory, x: str, y: str) -> list[Arrow]:
    return [u for u in cat.hom(x, y) if cat.is_iso_arrow(u)]


def squares_isomorphic(s1: Square, s2: Square) -> bool:
    cat = s1.top.cat
    for pc in _isos(cat, s1.C, s2.C):
        for pa in _isos(cat, s1.A, s2.A):
            if compose(pa, s1.left) != compose(s2.left, pc):
                continue
            for pb in _isos(cat, s1.B, s2.B):
                if compose(pb, s1.top) != compose(s2.top, pc):
                    continue
                for pd in _isos(cat, s1.D, s2.D):
                    if (compose(pd, s1.bottom) == compose(s2.bottom, pa)
                            and compose(pd, s1.right) == compose(s2.right, pb)):
                        return True
    return False


def pushout_mono_squares(cat: FinCategory, budget: Budget,
                         missing: list | None = None) -> list[Square]:
    """One representative per isomorphism class of pushout square with left leg mono."""
    reps: list[Square] = []
    arrows = [cat.arrow(mo.id) for mo in cat.morphisms]
    for m in arrows:
        if not is_mono(m, budget):
            continue
        for f in arrows:
            if f.dom != m.dom:
                continue
            po = find_pushout(m, f, budget)
            if po is None:
                if missing is not None:
                    missing.append((m.id, f.id))
                continue
            sq = Square(f, m, po[0], po[1])
            if not any(squares_isomorphic(sq, r) for r in reps):
                reps.append(sq)
    return reps


def cubes_over(sq: Square, budget: Budget, missing_pullbacks: list | None = None):
    """Cubes over ``sq`` whose left face is a pullback (chosen up to iso).

    The back face is left to :func:`vk_cube_check` to judge.
    """
    cat = sq.top.cat
    m, f, g, n = sq.left, sq.top, sq.bottom, sq.right
    for Dp in cat.objects:
        for d in cat.hom(Dp, sq.D):
            over_a = [(a, g1) for Ap in cat.objects for a in cat.hom(Ap, sq.A)
                      for g1 in cat.hom(Ap, Dp) if compose(g, a) == compose(d, g1)]
            over_b = [(b, n1) for Bp in cat.objects for b in cat.hom(Bp, sq.B)
                      for n1 in cat.hom(Bp, Dp) if compose(n, b) == compose(d, n1)]
            budget.tick(len(over_a) * len(over_b) + 1)
            for a, g1 in over_a:
                pb = find_pullback(m, a, budget)
                if pb is None:
                    if missing_pullbacks is not None:
                        missing_pullbacks.append((m.id, a.id))
                    continue
                c, m1 = pb
                for b, n1 in over_b:
                    for f1 in cat.hom(c.dom, b.dom):
                        budget.tick()
                        if compose(b, f1) == compose(f, c) and compose(n1, f1) == compose(g1, m1):
                            yield Cube(Square(f1, m1, g1, n1), sq, c, a, b, d)


def adhesivity_audit(cat: FinCategory, budget: Budget | int | None = None,
                     max_witnesses: int = 10, check_pullbacks: bool = True) -> AuditReport:
    """Exhaustively test the adhesivity axioms on a finite category.

    Every span with a mono leg must have a pushout, every cospan a pullback,
    and every cube over a pushout-along-mono square must satisfy the Van
    Kampen condition. Violations are collected as replayable cubes.
    """
    budget = Budget.coerce(DEFAULT_BUDGET if budget is None else budget)
    report = AuditReport(cat.name or "category", len(cat.objects), len(cat.morphisms))
    try:
        if check_pullbacks:
            arrows = [cat.arrow(mo.id) for mo in cat.morphisms]
            for u in arrows:
                for v in arrows:
                    if u.cod == v.cod and find_pullback(u, v, budget) is None:
                        report.missing_pullbacks.append((u.id, v.id))
        bottoms = pushout_mono_squares(cat, budget, report.missing_pushouts)
        report.bottom_squares = len(bottoms)
        missing_pb: list = []
        for sq in bottoms:
            for cube in cubes_over(sq, budget, missing_pb):
                report.cubes_enumerated += 1
                verdict = vk_cube_check(cube, budget=budget)
                if not verdict.preconditions_met:
                    continue
                report.cubes_checked += 1
                if not verdict.vk_holds:
                    report.violation_count += 1
                    if len(report.violations) < max_witnesses:
                        report.violations.append(cube)
        if not check_pullbacks:
            report.missing_pullbacks = sorted(set(missing_pb))
    except BudgetExceeded:
        report.budget_exceeded = True
    report.steps = budget.used
    return report
