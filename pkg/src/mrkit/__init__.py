"""Min-rank of graphs and digraphs over small prime fields, optimal scalar
linear index codes, and the fair-coloring hardness gadget."""

from .characterize import (
    Classification,
    Label,
    check_graph_minrank_2,
    check_graph_minrank_n_minus_1,
    check_graph_minrank_n_minus_2,
    check_minrank_1,
    check_minrank_le_2_binary,
    check_minrank_n,
    circuit_to_matrix,
    classify,
    coloring_to_matrix,
    contains_subgraph_F,
    fair_k_coloring,
    forbidden_F,
    is_fair_coloring,
    is_fairly_3_colorable_partition,
    is_star,
    matrix_to_coloring,
    star_to_matrix,
)
from .errors import CapExceeded, HypothesisError, ParseError
from .field import FieldMatrix, rank, row_space_basis, solve_left, unit_vector
from .graphs import (
    Digraph,
    Graph,
    as_digraph,
    complement,
    find_circuit,
    independence_number,
    is_acyclic,
    is_bipartite,
    is_complete,
    is_connected,
    mais,
    matching_number,
    parse_graph_file,
)
from .index_coding import (
    IcsiInstance,
    IndexCode,
    ScalarIndexCoder,
    build_code,
    decode,
    encode,
    optimal_scalar_rate,
    side_info_digraph,
    simulate,
)
from .minrank import MinRankResult, fits, min_rank, min_rank_le, min_rank_naive
from .reduction import Gadget, build_gadget, graph_k_colorable, lift_coloring, project_coloring

__version__ = "0.1.0"
