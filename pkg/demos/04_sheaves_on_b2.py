"""Sheaves for the topology generated by pushouts along monos, on B2.

B2 is the lattice of subsets of {1, 2}. Every presheaf with carriers of size
at most three is enumerated; the ones satisfying the sheaf condition are
checked to send each pushout-along-mono square to a limit.
"""
import warnings

from adhesive import boolean_lattice, embedding_check, generate_covers

b2 = boolean_lattice(2)
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    covers = generate_covers(b2)
    report = embedding_check(b2, 3)

print(f"{len(covers)} generating covers, e.g. {covers.covers[6].label()}")
print(f"{report.presheaves} presheaves, {report.sheaves} sheaves "
      f"({report.sheaf_iso_classes} up to isomorphism)")
print("representables are sheaves:", report.representables)
print("limit failures:", len(report.limit_failures),
      "| kernel-pair square failures:", len(report.jointly_monic_failures))
