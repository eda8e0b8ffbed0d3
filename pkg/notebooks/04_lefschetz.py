# %% [markdown]
# # Multiplying by a convex function
#
# A strictly convex conewise-linear function acts on intersection cohomology
# by multiplication. The rank table below checks that its powers are
# bijective between complementary degrees.

# %%
from fanih import corpus
from fanih.fan import PiecewiseLinearFunction, boundary_projection, top_cone
from fanih.ihlib import convexity, lefschetz_ranks, support_function

cube = corpus.fan("cube_face_fan")
l = support_function(cube)
print("convexity:", convexity(l))
for row in lefschetz_ranks(cube, l)["powers"]:
    print(row)

# %% [markdown]
# Adding a global linear function changes nothing.

# %%
shifted = l + PiecewiseLinearFunction.linear(cube, (2, -1, 5))
print(lefschetz_ranks(cube, shifted)["powers"] == lefschetz_ranks(cube, l)["powers"])

# %% [markdown]
# Projecting the boundary of a cone over a hexagon along an interior
# direction gives a complete fan in the plane with a natural height function.

# %%
hexagon = corpus.fan("hexagon")
proj = boundary_projection(hexagon, top_cone(hexagon))
print("height function:", convexity(proj.function))
print(lefschetz_ranks(proj.fan, proj.function)["hard_lefschetz"])
