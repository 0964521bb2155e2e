"""Directed matching ratio and controllability of random directed multigraphs."""

from .canon import canonical_code, rooted_code
from .errors import CapacityError, InputError, NetControlError
from .generators import (
    DegreeSequence,
    OffspringDistribution,
    gen_config_inout,
    gen_config_total,
    gen_er_directed,
    gen_pa,
    gen_regular_directed,
    gen_ugw_truncated,
)
from .graph import (
    BipartiteGraph,
    DirectedMultigraph,
    RootedBall,
    bipartite_representation,
    build_graph,
    extract_ball,
)
from .matching import (
    Matching,
    RatioReport,
    bounded_matching,
    brute_force_max_matching,
    karp_sipser,
    max_matching,
    ratio,
)
from .rewiring import RewirePlan, rewire, rewire_preserve_inout, rewire_preserve_total

__version__ = "0.1.0"
