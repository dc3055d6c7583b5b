import random

import pytest
from hypothesis import given, settings, strategies as st

from adhesive.categories import boolean_lattice, divisor_lattice
from adhesive.generators import (random_cset, random_mono_from, random_morphism_from,
                                 random_morphism_into, random_subobject)
from adhesive.kernel import compose, finite_set, identity, is_injective, is_iso
from adhesive.limits import (Cospan, NonCommutingSquare, Span, Square, commutes, kernel_pair,
                             pullback, pullback_mediator, pullback_square, pushout,
                             pushout_mediator, pushout_square, subobject_union, verify_square)
from adhesive.universal import find_pullback, find_pushout
from helpers import EDGE, fn, ghom, path
from oracles import (image_sets, isomorphic, pushout_sizes, square_is_pullback,
                     square_is_pushout)

seeds = st.integers(0, 10**6)


class TestPullback:
    def test_along_identity(self):
        f = fn(3, 2, [1, 0, 1])
        apex, span = pullback(Cospan(f, identity(f.cod)))
        assert isomorphic(apex, f.dom)
        assert is_iso(span.left)
        assert compose(span.right, pullback_mediator(span, identity(f.dom), f)) == f

    def test_fibre_product_of_constant_maps(self):
        apex, _ = pullback(Cospan(fn(2, 1, [0, 0]), fn(2, 1, [0, 0])))
        assert apex.sizes == (4,)

    def test_kernel_pair_of_mono_is_diagonal(self):
        n = ghom(EDGE, path(3), V=[1, 2], E=[1])
        kp = kernel_pair(n)
        assert isomorphic(kp.apex, n.dom)
        assert is_iso(kp.diagonal)

    def test_kernel_pair_of_identity(self):
        kp = kernel_pair(identity(EDGE))
        assert kp.apex == EDGE
        assert kp.p1 == kp.p2 == identity(EDGE)

    def test_kernel_pair_of_collapse(self):
        kp = kernel_pair(fn(2, 1, [0, 0]))
        assert kp.apex.sizes == (4,)
        assert kp.diagonal.comps == ((0, 3),)

    @settings(max_examples=80, deadline=None)
    @given(seeds)
    def test_matches_oracle(self, seed):
        rng = random.Random(seed)
        d = random_cset(rng, max_size=3)
        a, b = random_morphism_into(rng, d, 3), random_morphism_into(rng, d, 3)
        sq = pullback_square(Cospan(a, b))
        assert square_is_pullback(sq)
        assert verify_square(sq, "pullback").holds


class TestPushout:
    def test_along_identity(self):
        f = fn(2, 3, [2, 0])
        D, legs = pushout(Span(identity(f.dom), f))
        assert is_iso(legs.right)
        assert square_is_pushout(Square(f, identity(f.dom), legs.left, legs.right))

    def test_boolean_form(self):
        m, f = fn(1, 2, [0]), fn(1, 1, [0])
        D, legs = pushout(Span(m, f))
        assert D.sizes == (2,)
        assert is_injective(legs.right)
        assert legs.left.comps == ((0, 1),)

    def test_quotient_by_collapse(self):
        m, f = fn(2, 3, [0, 1]), fn(2, 1, [0, 0])
        D, legs = pushout(Span(m, f))
        assert D.sizes == (2,)
        assert legs.left.comps == ((0, 0, 1),)
        assert legs.right.comps == ((0,),)

    def test_requires_commuting_square(self):
        sq = Square(fn(1, 1, [0]), fn(1, 2, [0]), fn(2, 2, [1, 0]), fn(1, 2, [0]))
        assert not commutes(sq)[0]
        with pytest.raises(NonCommutingSquare):
            verify_square(sq, "pushout")

    def test_canonical_pushout_verifies(self):
        sq = pushout_square(Span(fn(2, 3, [0, 2]), fn(2, 2, [1, 1])))
        v = verify_square(sq, "pushout")
        assert v.holds and is_iso(v.comparison)

    def test_extra_element_breaks_pushout(self):
        m, f = fn(1, 2, [0]), fn(1, 1, [0])
        sq = pushout_square(Span(m, f))
        bigger = Square(sq.top, sq.left, fn(2, 3, sq.bottom.comps[0]), fn(1, 3, sq.right.comps[0]))
        v = verify_square(bigger, "pushout")
        assert not v.holds
        assert not is_iso(v.comparison)
        assert "not surjective" in v.witness

    @settings(max_examples=80, deadline=None)
    @given(seeds)
    def test_matches_oracle(self, seed):
        rng = random.Random(seed)
        c = random_cset(rng, max_size=3)
        m, f = random_mono_from(rng, c, 2), random_morphism_from(rng, c, max_size=4)
        D, legs = pushout(Span(m, f))
        assert D.sizes == pushout_sizes(m, f)
        sq = Square(f, m, legs.left, legs.right)
        assert square_is_pushout(sq)
        assert is_injective(legs.right)

    @settings(max_examples=50, deadline=None)
    @given(seeds)
    def test_mediator_is_unique_and_commutes(self, seed):
        rng = random.Random(seed)
        c = random_cset(rng, max_size=3)
        m, f = random_mono_from(rng, c, 2), random_morphism_from(rng, c, max_size=4)
        _, legs = pushout(Span(m, f))
        # any cocone factors: use a second pushout computed with the legs swapped
        _, other = pushout(Span(f, m))
        u = pushout_mediator(legs, other.right, other.left)
        assert compose(u, legs.left) == other.right
        assert compose(u, legs.right) == other.left
        assert is_iso(u)


class TestUnion:
    def test_idempotent(self):
        a = ghom(EDGE, path(3), V=[0, 1], E=[0])
        u = subobject_union(a, a)
        assert isomorphic(u.obj, a.dom)

    def test_disjoint_points(self):
        u = subobject_union(fn(1, 2, [0]), fn(1, 2, [1]))
        assert u.obj.sizes == (2,) and u.intersection.sizes == (0,)

    def test_overlapping_edges_of_a_path(self):
        p = path(3)
        a = ghom(EDGE, p, V=[0, 1], E=[0])
        b = ghom(EDGE, p, V=[1, 2], E=[1])
        u = subobject_union(a, b)
        assert is_iso(u.into)
        assert u.intersection.sizes == (1, 0)

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_image_is_union_of_images(self, seed):
        rng = random.Random(seed)
        x = random_cset(rng, max_size=4)
        a, b = random_subobject(rng, x), random_subobject(rng, x)
        u = subobject_union(a, b)
        assert is_injective(u.into)
        assert image_sets(u.into) == tuple(p | q for p, q in zip(image_sets(a), image_sets(b)))


class TestFinCategoryLimits:
    def test_meets_and_joins_in_b2(self):
        c = boolean_lattice(2)
        a = c.arrow
        left, top = find_pullback(a("{1}<={1,2}"), a("{2}<={1,2}"))
        assert left.dom == "{}"
        bottom, right = find_pushout(a("{}<={1}"), a("{}<={2}"))
        assert bottom.cod == "{1,2}"

    def test_gcd_and_lcm_in_div12(self):
        c = divisor_lattice(12)
        left, _ = find_pullback(c.arrow("4<=12"), c.arrow("6<=12"))
        assert left.dom == "2"
        bottom, _ = find_pushout(c.arrow("1<=4"), c.arrow("1<=3"))
        assert bottom.cod == "12"
