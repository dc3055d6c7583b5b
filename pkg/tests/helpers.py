"""Small builders shared by the test modules."""
from __future__ import annotations

from adhesive.kernel import GRAPH, CSet, CSetMorphism, finite_set, graph


def fn(n_dom: int, n_cod: int, table) -> CSetMorphism:
    """A function between finite sets as a single-sort C-set morphism."""
    return CSetMorphism.build(finite_set(n_dom), finite_set(n_cod), {"X": list(table)})


def ghom(dom: CSet, cod: CSet, V, E=()) -> CSetMorphism:
    return CSetMorphism.build(dom, cod, {"V": list(V), "E": list(E)})


def path(n: int) -> CSet:
    return graph(n, [(i, i + 1) for i in range(n - 1)])


TRIANGLE = graph(3, [(0, 1), (1, 2), (2, 0)])
EDGE = graph(2, [(0, 1)])
__all__ = ["fn", "ghom", "path", "TRIANGLE", "EDGE", "GRAPH"]
