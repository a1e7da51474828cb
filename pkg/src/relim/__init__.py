"""Round elimination workbench and LOCAL-model simulator."""

from .problems import (
    Configuration,
    Constraint,
    Problem,
    ProblemError,
    ResourceCapError,
    parse_problem,
    render_problem,
    validate_labeling,
)
from .engine import (
    Diagram,
    IntermediateProblem,
    StrengthOrder,
    apply_existential,
    apply_universal,
    diagram,
    full_step,
    re_step,
    rere_step,
    strength_order,
    successors,
)
from .analysis import (
    ChainReport,
    ChainStep,
    apply_directive,
    find_renaming_equivalence,
    is_relaxation,
    is_relaxation_config,
    merge_labels,
    rename_labels,
    run_chain,
    zero_round_solvable,
)
from .families import (
    coloring_fixed_point,
    colorful_coloring,
    colorful_to_plain_map,
    mis_graph_problem,
    onestep_directive,
    pi_family,
    plain_hypergraph_coloring,
    verify_fixed_point,
    verify_onestep,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
