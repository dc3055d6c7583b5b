"""Small finite categories used as audit subjects: posets, lattices, finite sets."""
from __future__ import annotations

import itertools
from typing import Callable, Sequence

from .kernel import FinCategory


def poset_category(elements: Sequence[str], leq: Callable[[str, str], bool],
                   name: str = "") -> FinCategory:
    """The thin category with an arrow ``a<=b`` whenever ``leq(a, b)``."""
    elements = list(elements)
    arrows = [(a, b) for a in elements for b in elements if leq(a, b)]
    mid = {(a, b): f"{a}<={b}" for a, b in arrows}
    comp = {}
    for (a, b), (b2, c) in itertools.product(arrows, arrows):
        if b == b2:
            comp[(mid[(b, c)], mid[(a, b)])] = mid[(a, c)]
    return FinCategory(elements, [(mid[p], *p) for p in arrows],
                       {a: mid[(a, a)] for a in elements}, comp, name=name)


def terminal_category() -> FinCategory:
    return poset_category(["*"], lambda a, b: True, name="1")


def chain(n: int) -> FinCategory:
    return poset_category([str(i) for i in range(n)], lambda a, b: int(a) <= int(b),
                          name=f"chain{n}")


def _subset_name(s) -> str:
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


def boolean_lattice(n: int) -> FinCategory:
    """Subsets of {1..n} ordered by inclusion."""
    subsets = [frozenset(c) for k in range(n + 1)
               for c in itertools.combinations(range(1, n + 1), k)]
    names = {_subset_name(s): s for s in subsets}
    return poset_category(list(names), lambda a, b: names[a] <= names[b], name=f"B{n}")


def divisor_lattice(n: int) -> FinCategory:
    divs = [str(d) for d in range(1, n + 1) if n % d == 0]
    return poset_category(divs, lambda a, b: int(b) % int(a) == 0, name=f"Div{n}")


def _lattice_from_covers(elements, covers, name) -> FinCategory:
    up = {e: {e} for e in elements}
    changed = True
    while changed:
        changed = False
        for a, b in covers:
            new = up[b] - up[a]
            if new:
                up[a] |= new
                changed = True
    return poset_category(elements, lambda a, b: b in up[a], name=name)


def m3() -> FinCategory:
    """Diamond lattice: bottom, three pairwise incomparable atoms, top."""
    return _lattice_from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")], "M3")


def n5() -> FinCategory:
    """Pentagon lattice 0 < a < b < 1, 0 < c < 1."""
    return _lattice_from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")], "N5")


def finset_category(max_size: int) -> FinCategory:
    """Full subcategory of finite sets on the objects 0, 1, ..., max_size.

    The arrow ``n>m:t`` is the function sending i to t[i].
    """
    objs = list(range(max_size + 1))
    arrows = [(n, m, t) for n in objs for m in objs
              for t in itertools.product(range(m), repeat=n)]

    def mid(n, m, t):
        return f"{n}>{m}:{''.join(map(str, t))}"

    comp = {}
    for (n, m, t), (m2, k, u) in itertools.product(arrows, arrows):
        if m == m2:
            comp[(mid(m, k, u), mid(n, m, t))] = mid(n, k, tuple(u[i] for i in t))
    return FinCategory([str(o) for o in objs], [(mid(*a), str(a[0]), str(a[1])) for a in arrows],
                       {str(o): mid(o, o, tuple(range(o))) for o in objs}, comp,
                       name=f"FinSet<={max_size}")
