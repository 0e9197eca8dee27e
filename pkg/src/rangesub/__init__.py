"""Range subgraph counting and listing over vertex-attributed graphs.

A query is an attribute interval ``q``; the answer concerns the subgraph
``G_q`` induced by the vertices whose attribute lies in ``q``.
"""

from .counting import CountIndex, build_clique_count, build_generic_count, query_count
from .cycles import CycleIndex, build_cycle_index, query_cycles
from .enumeration import DedupBuffer, DelayMeter, DuplicateBoundError, dedup_enumerate
from .geometry import CanonicalCollection, RangeReportKD, RangeSum2D
from .graph import (AttributedGraph, Interval, Occurrence, OccurrenceTable, PatternGraph,
                    fixture_g5, oracle_count, oracle_list, parse_graph, random_graph,
                    random_intervals)
from .join import (JoinInstance, RangeJoinIndex, Relation, build_range_join, check_partition_agm,
                   query_range_join, solve_edge_cover)
from .listing import ListIndex, build_generic_list, encode_pattern_join, query_generic_list
from .reduction import SetFamilyInstance, build_reduction, disjointness_query, disjointness_value
from .stars import StarSentinelIndex, build_star_index, query_stars
from .triangles import RteIndex, build_rte, query_rte, query_triangles, sdtl
from .wedge import ColoredWedgeIndex, ParameterError, WedgeIndex, WeightedSetFamily

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
