"""Combinatorial intersection cohomology of rational polyhedral fans."""

from .errors import *  # noqa: F401,F403
from .fan import (  # noqa: F401
    Fan,
    PiecewiseLinearFunction,
    boundary_projection,
    cone_over_polytope,
    incidence_sign,
    is_complete,
    is_simplicial,
    parse_fan,
    subdivision_map,
    subposet,
)
from .graded import GradedDims, Polynomial, check_free, hilbert, minimal_generators, shift  # noqa: F401
from .sheaf import (  # noqa: F401
    costalk,
    is_flabby,
    is_locally_free,
    sections,
    star_restriction,
    structure_sheaf,
)
from .minimal import minimal_sheaf, verify_minimal  # noqa: F401
from .cellular import acyclicity_report, cellular_complex, complex_cohomology  # noqa: F401
from .ihlib import (  # noqa: F401
    convexity,
    duality_check,
    global_local_check,
    ih,
    ih_local,
    ip,
    ip_quotient_check,
    lefschetz_ranks,
)
from .decomp import decompose, decomposition_theorem_report, kalai_check, pushforward  # noqa: F401
from .stanley import compare_ih_h, face_lattice, gh_vectors  # noqa: F401
