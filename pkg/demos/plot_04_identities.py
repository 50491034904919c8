"""
Group identities from surfaces
==============================

Cutting the same surface in two ways gives two formulas for one number.
The identity suite checks each such formula for a given group, and two of the
consequences are classical: the number of conjugacy classes and the chance
that two random elements commute.
"""

import time

import numpy as np

from ccs_tqft import Group, commuting_fraction, conj_class_count_via_c, make_dihedral, make_quaternion8, make_symmetric, run_all_checks

for G in (make_symmetric(3), make_dihedral(4), make_quaternion8()):
    t0 = time.perf_counter()
    results = run_all_checks(G)
    ms = (time.perf_counter() - t0) * 1000
    print(f"{G.name}: {sum(r.ok for r in results)}/{len(results)} ok in {ms:.0f} ms;",
          f"classes {conj_class_count_via_c(G)}, commuting fraction {commuting_fraction(G)}")

# %%
# Feed the suite a five-element loop that is not associative.  The Group
# constructor does not validate, so the checks run and report where the two
# sides of each formula part ways.
loop = Group(
    np.array([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]),
    0,
    np.array([0, 1, 2, 3, 4]),
)
for r in run_all_checks(loop):
    if r.status == "fail":
        print(f"{r.name:>24}: {r.describe()}")
