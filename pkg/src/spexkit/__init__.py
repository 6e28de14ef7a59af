"""Spectral extremal graph toolkit."""

from .errors import (
    BadHeader,
    Disconnected,
    EdgelessGraph,
    Graph6Error,
    InvalidArgument,
    InvalidVertex,
    IterationCap,
    NonzeroPadding,
    NotBipartiteWithGivenParts,
    OrderCap,
    SelfLoop,
    SpexError,
    TruncatedRecord,
)
from .graphs import (
    Graph,
    basic,
    book,
    canonical_form,
    canonical_graph,
    common_neighbors,
    from_edge_list,
    from_mask,
    is_turan,
    join,
    snk,
    snk_clique_order,
    theta,
    turan,
    turan_edge_count,
)
from .corpus import (
    EnumerationSpec,
    Graph6Stream,
    canonical_representatives,
    count_isomorphism_classes,
    enumerate_labeled,
    parse_graph6,
    stream_graph6,
    write_graph6,
)
from .patterns import (
    Book,
    Cycle,
    PathOnK,
    PatternSpec,
    Theta123,
    booksize,
    contains,
    find_witness,
    longest_path_edges,
    longest_xx_path_edges,
    parse_pattern,
    path_exists_exact,
    pattern_graph,
    pattern_order,
    pattern_str,
)
from .spectral import (
    GammaDecomposition,
    SpectralEstimate,
    avg_degree_bound,
    gamma_star,
    perron_vector,
    snk_rho_quotient,
    spectral_radius,
    turan_rho_bipartite,
    turan_rho_closed_form,
)

__version__ = "0.1.0"
