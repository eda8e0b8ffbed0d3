"""The bundled example fans and polytopes."""

from __future__ import annotations

import json
from importlib import resources

from .fan import Fan, cone_over_polytope

COMPLETE_FANS = ("line", "quadrant", "three_ray", "cube_face_fan", "orthant3",
                 "quadrant_diagonal", "cube_triangulated")
POLYGONS = ("triangle", "square", "pentagon", "hexagon", "heptagon", "octagon")
POLYTOPES = POLYGONS + ("cube",)
SUBDIVISIONS = {"diagonal": ("quadrant_diagonal", "quadrant"),
                "triangulated_cube": ("cube_triangulated", "cube_face_fan")}


def names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files("fanih.data").iterdir() if p.name.endswith(".json"))


def document(name: str) -> dict:
    return json.loads(resources.files("fanih.data").joinpath(f"{name}.json").read_text())


def fan(name: str) -> Fan:
    """A corpus fan; polytope entries give the fan of the cone over the polytope."""
    doc = document(name)
    return cone_over_polytope(doc) if "vertices" in doc else Fan.from_doc(doc)
