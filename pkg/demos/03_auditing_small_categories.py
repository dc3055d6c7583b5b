"""Exhaustive adhesivity audits of small finite categories.

Every pushout-along-mono square and every cube over it is enumerated and the
Van Kampen condition is checked. Lattices with a strict inequality already
fail: gluing C < A to itself gives the pushout A, which is not a pullback.
Finite sets up to size two show no violation; the size cap leaves some
pushouts missing, so that audit is only inconclusive.
"""
import time

from adhesive import (adhesivity_audit, boolean_lattice, chain, finset_category, m3, n5,
                      terminal_category, vk_cube_check)

for cat in (terminal_category(), chain(2), boolean_lattice(2), m3(), n5(), finset_category(2)):
    start = time.perf_counter()
    r = adhesivity_audit(cat)
    line = f"{r.category:>10}: {r.verdict:<23} {r.cubes_checked:5d} cubes, {r.violation_count:4d} violations"
    print(line, f"({time.perf_counter() - start:.2f}s)")
    if r.violations:
        v = vk_cube_check(r.violations[0])
        print(" " * 12, "first witness fails at the", v.failing_face, "face")
