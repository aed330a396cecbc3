"""Combinatorial tools for 2-complexes: collapses, star-disk checks, homology,
edge-path groups, and exact piecewise-linear contractions built from collapses."""

from .builders import (
    BUILDERS,
    NamedComplex,
    bings_house,
    boundary_sphere,
    cone,
    disc_fan,
    dunce_hat,
    dunce_hat_with_flap,
    full_simplex,
)
from .coalesce import (
    PLContraction,
    PLPoint,
    TrackTable,
    check_coalescent,
    evaluate,
    image_complex,
    opening_time,
    restart_at,
    track,
    witness_from_collapse,
)
from .collapse import (
    CollapsePair,
    CollapseSequence,
    Status,
    elementary_collapse,
    exhaustive_collapse,
    free_faces,
    greedy_collapse,
    validate_sequence,
)
from .complex import (
    SimplicialComplex,
    barycentric_subdivision,
    census,
    from_maximal,
    link_graph,
    quotient,
)
from .errors import TopologyError
from .fundamental_group import Pi1Verdict, pi1_presentation, simplify_presentation
from .homology import homology, smith_normal_form
from .scx import parse_scx, write_scx
from .stardisk import (
    CycleMap,
    brute_force_disk_oracle,
    circle_degree,
    max_displacement,
    star_disk_report,
    vertex_star_disk,
)
from .verdict import Budgets, Conclusion, coalescence_verdict

__version__ = "0.1.0"
