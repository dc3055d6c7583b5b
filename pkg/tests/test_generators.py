import random

from hypothesis import given, settings, strategies as st

from adhesive.generators import (random_cset, random_mono_from, random_morphism_from,
                                 random_morphism_into, random_relabel, random_subobject)
from adhesive.kernel import Op, Schema, is_injective, is_iso, validate

seeds = st.integers(0, 10**6)
CHAIN = Schema(("A", "B", "C"), (Op("f", "A", "B"), Op("g", "B", "C"), Op("h", "A", "C")))


@settings(max_examples=80, deadline=None)
@given(seeds, st.sampled_from(["graph", "chain"]))
def test_generated_entities_are_valid(seed, which):
    rng = random.Random(seed)
    kwargs = {} if which == "graph" else {"schema": CHAIN}
    x = random_cset(rng, max_size=4, **kwargs)
    assert validate(x).ok
    for f in (random_morphism_from(rng, x, max_size=5), random_subobject(rng, x),
              random_mono_from(rng, x), random_morphism_into(rng, x), random_relabel(rng, x)):
        assert validate(f).ok, validate(f)
    assert is_injective(random_mono_from(rng, x)) and is_injective(random_subobject(rng, x))
    assert is_iso(random_relabel(rng, x))
    assert all(n <= 5 for n in random_morphism_from(rng, x, max_size=5).cod.sizes)


def test_seeded_generation_is_reproducible():
    a = random_cset(random.Random(7), max_size=4)
    b = random_cset(random.Random(7), max_size=4)
    assert a == b
