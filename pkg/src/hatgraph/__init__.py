"""Exact analysis of the hat guessing game on directed graphs."""

from .constructions import (
    BinaryCode,
    PredictedValue,
    Trigger,
    chain_strategy,
    code_strategy,
    code_trigger,
    d_family_strategy,
    extend,
    lexicode,
    predicted_value,
    star_strategy,
    star_trigger,
)
from .digraph import (
    CliqueCertificate,
    Digraph,
    GraphError,
    Skeleton,
    clique_number,
    directed_union,
    drop_blind,
    family,
    from_arcs,
    is_tournament,
    skeleton,
    transpose,
)
from .dyadic import DyadicProb
from .game import (
    BipartiteCertificate,
    EvalReport,
    Guess,
    TeamStrategy,
    View,
    certify_bound,
    color_swap,
    evaluate,
    view_of,
)
from .graph_io import FormatError, format_graph, parse_graph, to_dot
from .solver import (
    BoundsReport,
    Budget,
    SolveResult,
    Status,
    bounds,
    lower_bound,
    solve,
    upper_bound,
    verify_optimal_never_guesser,
)
from .strategy_io import format_strategy, parse_strategy

__version__ = "0.1.0"
