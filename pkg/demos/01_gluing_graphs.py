"""Gluing graphs with pushouts, and checking that the glue is a pullback.

Two single-edge graphs are glued along one vertex to form a path. Because the
gluing map is a mono, the resulting square is also a pullback, and both
engines agree on it.
"""
from adhesive import Span, graph, prop_basic_check, pushout, verify_square
from adhesive.kernel import CSetMorphism

point = graph(1)
edge = graph(2, [(0, 1)])

head = CSetMorphism.build(point, edge, {"V": [1], "E": []})
tail = CSetMorphism.build(point, edge, {"V": [0], "E": []})

glued, legs = pushout(Span(head, tail))
print("glued graph:", glued)

report = prop_basic_check(head, tail)
print("new leg is mono:", report.n_is_mono)
for engine in ("componentwise", "universal"):
    v = verify_square(report.square, "pullback", engine)
    print(f"pullback by the {engine} engine:", v.holds)
