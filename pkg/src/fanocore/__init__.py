from .graph import (
    CubicGraph,
    EdgeSubset,
    Graph6ParseError,
    GraphError,
    build_named,
    is_bridgeless,
    parse_graph6,
    write_graph6,
)
from .factors import (
    Join,
    PerfectMatching,
    enumerate_joins,
    enumerate_perfect_matchings,
    is_simple_join,
    make_join,
    odd_components,
)
from .budget import Budget, Outcome
from .cores import (
    CoverTriple,
    WeakCore,
    core_properties,
    find_witness,
    make_cover_triple,
    minimize_core,
    weak_core,
)

__version__ = "0.1.0"
