from .hypergraph import Hypergraph, generate_hypergraph
from .subroutines import (
    RoundTrace,
    conflict_adjacency,
    greedy_recolor,
    linial_coloring,
    ruling_set,
)
from .algorithms import (
    delta2_mis,
    indep_r_mis,
    slow_in_delta_mis,
    trivial_mis,
    um_coloring_iterated,
    um_greedy_mis,
)
from .checker import CheckReport, check_solution

__all__ = [name for name in dir() if not name.startswith("_")]
