"""Maximum clique and colouring for EPG graphs with few bends."""

from .b2clique import BudgetExceeded, CandidateSet, candidate_S_sets, max_clique_b2, subgraph_of_S
from .cliques import CliqueResult, enumerate_maximal_cliques, max_clique_cobipartite, max_clique_exact
from .coloring import (CanonicalInterval, ColoringResult, SegmentGraphs, canonical_intervals,
                       clique_or_stable_set, degeneracy_order, edge_bound_check, greedy_color, segment_graphs)
from .grid import (DerivedGraph, EpgRepresentation, GridPath, GridPoint, PathError, VertexClass, classify_vertex,
                   derive_graph, grid_edges, normalize_two_bends, parse_representation, serialize_representation,
                   transpose_representation)
from .svg import render_svg
from .testkit import (GenConfig, cross_validate, gen_c4_projection_instance, gen_kn_minus_matching,
                      gen_random_bk, gen_random_z_only)
from .typed import (BendType, TypedInterval, TypedPoint, clique_interval, coherent, contains, intersects,
                    is_proper, nonclique_interval, projection_graph, t_projection, two_track_encoding)
from .zclique import (GoodGraphDescriptor, ImportantPoint, candidate_typed_intervals, enumerate_descriptors,
                      good_graph_members, important_points, max_clique_good_graph, max_clique_z_only)

__version__ = "0.1.0"
