"""
Counting flat colourings
========================

A finite group colours the edges of a cut surface.  A colouring is flat when
the product around every face is the identity.  Counting flat colourings and
scaling by a power of the group order gives an invariant of the surface.
"""

from ccs_tqft import builtin, count_colourings, invariant_matrix, invariant_scalar, make_symmetric

G = make_symmetric(3)

# %%
# The sphere is closed, so its invariant is a single number: 1/|G|.
sphere = invariant_scalar(G, builtin("sphere_a"))
print("sphere:", sphere.count, "colourings, half exponent", sphere.half_exponent, "->", sphere.to_fraction())

# %%
# The torus counts commuting pairs.  S3 has 18 of them, so the value is 18/6.
torus = invariant_scalar(G, builtin("torus"))
print("torus :", torus.count, "->", torus.to_fraction())

# %%
# Surfaces with boundary give a matrix indexed by boundary colours.  For the
# cylinder the entry counts the k with k g k^-1 = h.
cyl = invariant_matrix(G, builtin("cylinder"))
for h in range(G.order):
    row = " ".join(f"{int(x):2d}" for x in cyl.entries[h])
    print(f"out={G.element_name(h)}  {row}")

# %%
# Single entries can be asked for directly.
print("pants, all identity:", count_colourings(G, builtin("pants"), ((0,), (0, 0))))
