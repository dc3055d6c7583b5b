import random

import pytest
from hypothesis import given, settings, strategies as st

from adhesive.adhesion import (Cube, adhesivity_audit, lemma_basic_check, prop_basic_check,
                               prop_basic_cube, pullback_cube, vk_cube_check)
from adhesive.categories import chain, finset_category, m3, n5, terminal_category
from adhesive.generators import (random_cset, random_mono_from, random_morphism_from,
                                 random_morphism_into)
from adhesive.kernel import Budget, identity, is_iso
from adhesive.limits import Span, Square, is_mono, pushout_square, verify_square
from adhesive.universal import find_pullback
from helpers import EDGE, fn, ghom, path
from oracles import isomorphic, square_is_pullback, square_is_pushout

seeds = st.integers(0, 10**6)


def random_po_square(rng):
    c = random_cset(rng, max_size=3)
    return pushout_square(Span(random_mono_from(rng, c, 2), random_morphism_from(rng, c, max_size=4)))


class TestVanKampen:
    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_pulled_back_cubes_hold(self, seed):
        rng = random.Random(seed)
        sq = random_po_square(rng)
        cube = pullback_cube(sq, random_morphism_into(rng, sq.D, 3))
        v = vk_cube_check(cube)
        assert v.preconditions_met and v.vk_holds and v.top_is_pushout
        assert square_is_pushout(cube.top)

    def test_identity_verticals(self):
        sq = pushout_square(Span(ghom(path(1), EDGE, V=[0]), ghom(path(1), path(2), V=[1])))
        ids = [identity(x) for x in (sq.C, sq.A, sq.B, sq.D)]
        v = vk_cube_check(Cube(sq, sq, *ids))
        assert v.preconditions_met and v.vk_holds

    def test_m3_cube_fails_at_the_top(self):
        c = m3()
        a = c.arrow
        bottom = Square(a("0<=b"), a("0<=a"), a("a<=1"), a("b<=1"))
        d = a("c<=1")
        # pull the bottom square back along d: every corner meets c in 0
        a_vert, a_top = find_pullback(bottom.bottom, d)
        b_vert, b_top = find_pullback(bottom.right, d)
        assert a_vert.dom == b_vert.dom == "0"
        zero = c.id_arrow("0")
        top = Square(zero, zero, a_top, b_top)
        cube = Cube(top, bottom, a("0<=0"), a_vert, b_vert, d)
        v = vk_cube_check(cube)
        assert v.preconditions_met
        assert v.front_right_pullbacks and not v.top_is_pushout
        assert not v.vk_holds and v.failing_face == "top"

    def test_vacuous_when_bottom_not_pushout(self):
        sq = Square(fn(1, 1, [0]), fn(1, 1, [0]), fn(1, 2, [0]), fn(1, 2, [0]))
        ids = [identity(x) for x in (sq.C, sq.A, sq.B, sq.D)]
        v = vk_cube_check(Cube(sq, sq, *ids))
        assert not v.preconditions_met and v.vk_holds


class TestPropBasic:
    def test_identity(self):
        r = prop_basic_check(identity(EDGE), identity(EDGE))
        assert r.holds and is_iso(r.square.right)

    def test_boolean_form(self):
        r = prop_basic_check(fn(1, 2, [0]), fn(1, 1, [0]))
        assert r.n_is_mono and r.pullback.holds

    def test_rejects_non_mono(self):
        with pytest.raises(ValueError):
            prop_basic_check(fn(2, 1, [0, 0]), fn(2, 2, [0, 1]))

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_random_graph_spans(self, seed):
        rng = random.Random(seed)
        c = random_cset(rng, max_size=3)
        r = prop_basic_check(random_mono_from(rng, c, 2), random_morphism_from(rng, c, max_size=5))
        assert r.holds
        assert square_is_pullback(r.square)

    def test_front_face_of_prop_cube_is_the_square(self):
        sq = pushout_square(Span(fn(1, 2, [0]), fn(1, 1, [0])))
        assert prop_basic_cube(sq).face("front") == sq

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_prop_cube_is_van_kampen(self, seed):
        rng = random.Random(seed)
        c = random_cset(rng, max_size=3)
        sq = pushout_square(Span(random_mono_from(rng, c, 2), random_morphism_from(rng, c, max_size=4)))
        v = vk_cube_check(prop_basic_cube(sq))
        assert v.preconditions_met and v.vk_holds


class TestLemmaBasic:
    def test_identities(self):
        r = lemma_basic_check(identity(EDGE), identity(EDGE))
        assert r.holds

    def test_five_element_kernel_pair(self):
        m, f = fn(2, 3, [0, 1]), fn(2, 1, [0, 0])
        r = lemma_basic_check(m, f)
        assert r.A2.cod.sizes == (5,)
        assert r.C2.cod.sizes == (4,)
        assert r.is_pushout.holds and r.is_pullback.holds and r.m2_is_mono
        # brute-force side: glue A and C2 along C and compare with A2
        po = pushout_square(Span(r.square.left, r.square.top))
        assert po.D.sizes == (5,)
        assert square_is_pushout(r.square) and square_is_pullback(r.square)

    def test_mono_f_gives_original_square(self):
        m, f = fn(1, 2, [1]), fn(1, 3, [2])
        r = lemma_basic_check(m, f)
        assert is_iso(r.C2) and is_iso(r.A2)
        assert isomorphic(r.square.D, m.cod)

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_random(self, seed):
        rng = random.Random(seed)
        c = random_cset(rng, max_size=3)
        r = lemma_basic_check(random_mono_from(rng, c, 2), random_morphism_from(rng, c, max_size=4))
        assert r.holds


class TestAudit:
    def test_m3_audit_reports_the_collapsing_cube(self):
        r = adhesivity_audit(m3(), max_witnesses=1000)
        hits = [c for c in r.violations
                if (c.d.id, c.bottom.left.id, c.bottom.top.id) == ("c<=1", "0<=a", "0<=b")]
        assert hits and vk_cube_check(hits[0]).failing_face == "top"

    def test_terminal(self):
        assert adhesivity_audit(terminal_category()).verdict == "adhesive-within-bounds"

    @pytest.mark.parametrize("make", [m3, n5])
    def test_non_distributive_lattices(self, make):
        r = adhesivity_audit(make())
        assert r.verdict == "violation-found"
        assert r.violations and not vk_cube_check(r.violations[0]).vk_holds

    def test_self_gluing_in_a_chain_is_not_a_pullback(self):
        # C < A glued to itself: the join is A, a pushout along a mono,
        # but the pullback of A -> A <- A is A, not C
        c = chain(2)
        m = c.arrow("0<=1")
        ident = c.id_arrow("1")
        sq = Square(m, m, ident, ident)
        assert is_mono(m)
        assert verify_square(sq, "pushout").holds
        assert not verify_square(sq, "pullback").holds
        assert adhesivity_audit(c).verdict == "violation-found"

    def test_finite_sets_up_to_two(self):
        r = adhesivity_audit(finset_category(2))
        assert r.violation_count == 0
        assert r.cubes_checked > 0
        assert r.missing_pushouts  # the size bound cuts off some pushouts

    def test_finite_sets_up_to_three_under_budget(self):
        r = adhesivity_audit(finset_category(3), budget=Budget(300_000))
        assert r.violation_count == 0
        assert r.verdict == "inconclusive"
        assert r.budget_exceeded
