"""Acceptance suite: ten end-to-end criteria at their stated counts and time limits.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion (criterion 6 prints one line per category).
"""
import os
import pathlib
import random
import subprocess
import sys
import time
import warnings

import pytest

from adhesive.adhesion import (adhesivity_audit, lemma_basic_check, prop_basic_check,
                               pullback_cube, vk_cube_check)
from adhesive.categories import boolean_lattice, chain, divisor_lattice, m3, n5
from adhesive.dpo import RejectReason, Rule, dpo_apply, enumerate_monos, pushout_complement
from adhesive.generators import (random_cset, random_mono_from, random_morphism_from,
                                 random_morphism_into, random_subobject)
from adhesive.io import Document, parse, serialize
from adhesive.kernel import CSetMorphism, graph, identity, is_injective
from adhesive.limits import (Cospan, Span, Square, pullback_square, pushout_square,
                             subobject_union, verify_square)
from adhesive.sheaf import embedding_check
from helpers import fn
from oracles import complements, image_sets, square_is_pushout

GOLDEN = pathlib.Path(__file__).parent / "golden"


def _span(rng, c_size=4, extra=2, cod_size=6):
    c = random_cset(rng, max_size=c_size)
    return random_mono_from(rng, c, extra), random_morphism_from(rng, c, max_size=cod_size)


def test_c01_prop_basic_suite():
    start = time.perf_counter()
    passed = 0
    for seed in range(200):
        m, f = _span(random.Random(seed))
        assert max(m.cod.sizes + f.cod.sizes) <= 6
        r = prop_basic_check(m, f)
        passed += r.n_is_mono and r.pullback.holds
    elapsed = time.perf_counter() - start
    assert passed == 200
    assert elapsed < 5, f"{elapsed:.2f}s"


def test_c02_stability_suite():
    start = time.perf_counter()
    held = 0
    for seed in range(100):
        rng = random.Random(seed)
        m, f = _span(rng, 3, 2, 4)
        sq = pushout_square(Span(m, f))
        cube = pullback_cube(sq, random_morphism_into(rng, sq.D, 3))
        v = vk_cube_check(cube)
        held += v.preconditions_met and v.vk_holds
    elapsed = time.perf_counter() - start
    assert held == 100
    assert elapsed < 10, f"{elapsed:.2f}s"


def test_c03_union_suite():
    ok = 0
    for seed in range(100):
        rng = random.Random(seed)
        x = random_cset(rng, max_size=5)
        a, b = random_subobject(rng, x), random_subobject(rng, x)
        u = subobject_union(a, b)
        union = tuple(p | q for p, q in zip(image_sets(a), image_sets(b)))
        ok += is_injective(u.into) and image_sets(u.into) == union
    assert ok == 100


def test_c04_lemma_suite():
    golden = lemma_basic_check(fn(2, 3, [0, 1]), fn(2, 1, [0, 0]))
    assert golden.A2.cod.sizes == (5,)
    assert pushout_square(Span(golden.square.left, golden.square.top)).D.sizes == (5,)
    assert golden.holds
    ok = 0
    for seed in range(100):
        m, f = _span(random.Random(seed), 3, 2, 4)
        r = lemma_basic_check(m, f)
        ok += r.is_pushout.holds and r.is_pullback.holds
    assert ok == 100


def _random_squares(n):
    """Commuting squares with carriers <= 4, a mix of pushouts, pullbacks and neither."""
    squares, seed = [], 0
    while len(squares) < n:
        rng = random.Random(10_000 + seed)
        seed += 1
        style = seed % 3
        if style == 0:
            c = random_cset(rng, max_size=2)
            sq = pushout_square(Span(random_morphism_from(rng, c, 1, 3),
                                     random_morphism_from(rng, c, 1, 3)))
        else:
            d = random_cset(rng, max_size=3)
            sq = pullback_square(Cospan(random_morphism_into(rng, d, 2),
                                        random_morphism_into(rng, d, 2)))
            if style == 2:
                # push the corner into a bigger object: still commutes, rarely universal
                grow = random_morphism_from(rng, sq.D, 1, 4)
                sq = Square(sq.top, sq.left, _then(grow, sq.bottom), _then(grow, sq.right))
        if max(sq.C.sizes + sq.A.sizes + sq.B.sizes + sq.D.sizes) <= 4:
            squares.append(sq)
    return squares


def _then(g: CSetMorphism, f: CSetMorphism) -> CSetMorphism:
    from adhesive.kernel import compose
    return compose(g, f)


def test_c05_engine_cross_check():
    agree, outcomes = 0, set()
    squares = _random_squares(100)
    for sq in squares:
        same = True
        for kind in ("pullback", "pushout"):
            a = verify_square(sq, kind, "componentwise").holds
            b = verify_square(sq, kind, "universal").holds
            same &= a == b
            outcomes.add((kind, a))
        agree += same
    assert agree == 100
    assert len(outcomes) == 4  # both verdicts occur for both kinds


@pytest.mark.parametrize("name,make,expected", [
    ("chain2", lambda: chain(2), "adhesive-within-bounds"),
    ("B2", lambda: boolean_lattice(2), "adhesive-within-bounds"),
    ("Div12", lambda: divisor_lattice(12), "adhesive-within-bounds"),
    ("M3", m3, "violation-found"),
    ("N5", n5, "violation-found"),
], ids=["chain2", "B2", "Div12", "M3", "N5"])
def test_c06_audit_discrimination(name, make, expected):
    start = time.perf_counter()
    r = adhesivity_audit(make())
    elapsed = time.perf_counter() - start
    assert elapsed < 10, f"{elapsed:.2f}s"
    assert r.verdict == expected, f"{name}: {r.verdict} ({r.violation_count} violating cubes)"
    if expected == "violation-found":
        cube = parse(serialize(Document("cube", r.violations[0]))).payload
        assert not vk_cube_check(cube).vk_holds


def test_c07_embedding_b2_k3():
    start = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        r = embedding_check(boolean_lattice(2), 3, iso_classes=False)
    elapsed = time.perf_counter() - start
    assert not r.truncated
    assert len(r.representables) == 4 and all(r.representables.values())
    assert r.limit_failures == []
    assert r.jointly_monic_failures == []
    assert r.first_non_sheaf is not None
    assert r.sheaves > 0
    assert elapsed < 60, f"{elapsed:.2f}s"


def test_c08_dpo_golden_corpus():
    two, edge = graph(2), graph(2, [(0, 1)])
    keep = CSetMorphism.build(two, edge, {"V": [0, 1], "E": []})
    rev = CSetMorphism.build(two, graph(2, [(1, 0)]), {"V": [0, 1], "E": []})
    match = enumerate_monos(edge, edge)[0][0]

    deleted = dpo_apply(Rule(keep, identity(two)), edge, match)
    assert serialize(Document("cset", deleted.H)) == (GOLDEN / "cset_two_vertices.toml").read_text()
    reversed_ = dpo_apply(Rule(keep, rev), edge, match)
    assert reversed_.H == graph(2, [(1, 0)])
    for res in (deleted, reversed_):
        assert verify_square(res.left, "pushout").holds
        assert verify_square(res.right, "pushout").holds

    empty, point = graph(0), graph(1)
    kill = Rule(CSetMorphism.build(empty, point, {"V": [], "E": []}), identity(empty))
    rejected = dpo_apply(kill, edge, CSetMorphism.build(point, edge, {"V": [0], "E": []}))
    assert isinstance(rejected, RejectReason)
    assert rejected.retained == ("E", 0) and rejected.deleted == ("V", 0)


def test_c09_pushout_complement_uniqueness():
    found, seed = 0, 0
    while found < 50:
        rng = random.Random(seed)
        seed += 1
        G = random_cset(rng, max_size=4)
        m = random_subobject(rng, G, 0.7)
        l = random_subobject(rng, m.dom, 0.5)
        comp = pushout_complement(l, m)
        if isinstance(comp, RejectReason):
            assert complements(l, m) == []
            continue
        classes = complements(l, m)
        assert len(classes) == 1
        assert tuple(frozenset(c) for c in comp.d.comps) == classes[0]
        assert square_is_pushout(Square(comp.k, l, m, comp.d))
        found += 1
    assert seed < 2000


_SERIALIZE_ALL = """
import pathlib, sys
from adhesive.io import parse, serialize
for p in sorted(pathlib.Path(sys.argv[1]).glob('*.toml')):
    sys.stdout.write(serialize(parse(p.read_text())))
"""


def test_c10_cli_round_trip():
    paths = sorted(GOLDEN.glob("*.toml"))
    assert paths
    for p in paths:
        text = p.read_text()
        assert serialize(parse(text)) == text, p.name
        assert parse(serialize(parse(text))) == parse(text)
    runs = []
    for hash_seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hash_seed)
        out = subprocess.run([sys.executable, "-c", _SERIALIZE_ALL, str(GOLDEN)],
                             capture_output=True, env=env, check=True)
        runs.append(out.stdout)
    assert runs[0] == runs[1] == "".join(p.read_text() for p in paths).encode()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
