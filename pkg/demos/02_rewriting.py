"""Double-pushout rewriting on directed graphs.

A rule K -> L, K -> R deletes what L has beyond K and adds what R has beyond
K. Here the rule reverses the edge it matches; a second rule tries to delete
a vertex and is refused because an edge would be left dangling.
"""
from adhesive import Rule, dpo_apply, enumerate_monos, graph, identity
from adhesive.kernel import CSetMorphism

two = graph(2)
edge = graph(2, [(0, 1)])
backwards = graph(2, [(1, 0)])
reverse = Rule(CSetMorphism.build(two, edge, {"V": [0, 1], "E": []}),
               CSetMorphism.build(two, backwards, {"V": [0, 1], "E": []}), "reverse")

host = graph(3, [(0, 1), (1, 2), (2, 0)])
matches, _ = enumerate_monos(reverse.L, host)
print(f"{len(matches)} places to apply the rule in the triangle")
result = dpo_apply(reverse, host, matches[0])
print("after one step:", result.H)

empty, point = graph(0), graph(1)
delete_vertex = Rule(CSetMorphism.build(empty, point, {"V": [], "E": []}), identity(empty))
m = CSetMorphism.build(point, host, {"V": [0], "E": []})
print("deleting vertex 0:", dpo_apply(delete_vertex, host, m))
