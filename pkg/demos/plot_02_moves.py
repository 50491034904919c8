"""
Random moves do not change the answer
=====================================

Subdividing an edge adds a vertex, and splitting a face adds an edge.  Both
change the raw count, but the scaled value stays put.  Here a torus takes a
long seeded random walk and the reduced matrix is compared at every step.
"""

from ccs_tqft import builtin, invariant_matrix, make_quaternion8, random_walk

G = make_quaternion8()
start = builtin("torus")
ref = invariant_matrix(G, start).reduced()

# %%
# Each walk is reproducible from its seed.
m, trace = random_walk(start, 40, seed=7)
print("moves applied:", len(trace))
print("first few   :", [str(t) for t in trace[:5]])
print("cells       :", len(m.vertices), "vertices,", len(m.edges), "edges,", len(m.faces), "faces")

# %%
# The raw count grew a lot, but it reduces to the same matrix.
z = invariant_matrix(G, m)
print("raw count", z.entries[0, 0], "at half exponent", z.half_exponent)
print("reduced matches:", z.reduced() == ref)
