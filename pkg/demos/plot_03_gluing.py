"""
Building a torus from pieces
============================

Gluing surfaces along a circle corresponds to multiplying their matrices.
Cap a pair of pants, glue on its mirror image, cap again, and the result is
a torus.
"""

from ccs_tqft import builtin, compose, genus, glue, invariant_matrix, make_cyclic, make_symmetric, matrices_equal, validate

# %%
# Gluing at the level of cell complexes.
surface = glue(glue(glue(builtin("disk_out"), builtin("pants")), builtin("pants_reflected")), builtin("disk_in"))
print("problems:", validate(surface) or "none", "| genus:", genus(surface))

# %%
# The same thing done with matrices only.
for G in (make_cyclic(2), make_cyclic(3), make_symmetric(3)):
    z = [invariant_matrix(G, builtin(n)) for n in ("disk_out", "pants", "pants_reflected", "disk_in")]
    chain = compose(z[3], compose(z[2], compose(z[1], z[0])))
    torus = invariant_matrix(G, builtin("torus"))
    glued = invariant_matrix(G, surface)
    print(f"{G.name:>3}: chain value {chain.value().to_fraction()}",
          "| equals torus:", matrices_equal(chain, torus), "| equals glued complex:", matrices_equal(chain, glued))
