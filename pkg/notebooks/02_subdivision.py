# %% [markdown]
# # Pushing forward along a subdivision
#
# Adding the ray (1, 1) to the quadrant fan splits one maximal cone in two.
# The minimal sheaf of the finer fan, pushed to the coarse fan, splits into
# the coarse minimal sheaf plus a shifted copy supported on the split cone.

# %%
from fanih import corpus
from fanih.decomp import decompose, pushforward
from fanih.fan import subdivision_map
from fanih.ihlib import global_cap, ih

fine = corpus.fan("quadrant_diagonal")
coarse = corpus.fan("quadrant")
cap = global_cap(fine)
L_fine = ih(fine, cap).sheaf

pushed = pushforward(subdivision_map(fine, coarse), L_fine.sheaf)
dec = decompose(pushed)
for cone, shift, mult in dec.summands:
    print(f"cone {sorted(coarse.cones[cone].rays)} shift {shift} multiplicity {mult}")

# %% [markdown]
# The extra summand accounts for the difference of the two Poincare
# polynomials.

# %%
print("fine:  ", ih(fine, cap).ih)
print("coarse:", ih(coarse, cap).ih)

# %% [markdown]
# Triangulating every square of the cube introduces no new rays, and the
# pushforward is the minimal sheaf of the cube fan with nothing left over.

# %%
tri, cube = corpus.fan("cube_triangulated"), corpus.fan("cube_face_fan")
cap = max(global_cap(tri), global_cap(cube))
dec = decompose(pushforward(subdivision_map(tri, cube), ih(tri, cap).sheaf.sheaf))
print(dec.summands)
