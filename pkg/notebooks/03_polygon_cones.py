# %% [markdown]
# # Cones over polygons
#
# For the cone over an m-gon the local polynomial ip is 1 + (m - 3) q^2, and
# the boundary of the cone carries 1 + (m - 2) q^2 + q^4. Both agree with the
# g- and h-vectors of the polygon.

# %%
from fanih import corpus
from fanih.decomp import kalai_check
from fanih.stanley import compare_ih_h

for m, name in enumerate(corpus.POLYGONS, start=3):
    r = compare_ih_h(corpus.document(name))
    print(f"{m}-gon  h={r['h']}  g={r['g']}  ip={r['ip']}  agree={r['ih_matches_h'] and r['ip_matches_g']}")

# %% [markdown]
# Restricting the minimal sheaf of a cone to the star of a face and splitting
# it bounds ip of the cone from below by a product of two smaller ip values.

# %%
f = corpus.fan("octagon")
for face in (f.origin, f.cone_by_rays([0]), f.cone_by_rays([0, 1])):
    rep = kalai_check(f, face)
    print(sorted(face.rays), rep["ip_sigma"], ">=", rep["product"], all(c["pass"] for c in rep["checks"]))
