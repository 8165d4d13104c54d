"""treetrop: exact tropical geometry of weighted trees.

Pipeline: weighted trees -> pairwise/r-subset dissimilarity maps -> tropical
Pluecker vectors and relation checks -> candidate points of the associated
tropical linear spaces, with membership and facet-tightness analysis.  All
arithmetic is exact rational; min/max conventions are explicit everywhere.
"""

from treetrop.dissim import (
    DissimilarityMap,
    FourPointResult,
    NonpositiveEdgeError,
    NotAdditiveError,
    RDissimilarityMap,
    four_point_check,
    pairwise_map,
    phi_r,
    reconstruct_tree,
    steiner_r_map,
)
from treetrop.newick import NewickError, parse_newick, serialize_newick
from treetrop.plucker import (
    QUADRATIC,
    THREE_TERM,
    DressianReport,
    PlueckerRelation,
    RankDeficientError,
    RationalMatrix,
    classical_relation_check,
    dressian_report,
    generate_plucker_relations,
    pluecker_minors,
    same_rowspace_check,
    trop_relation_check,
)
from treetrop.rationals import INF, format_scalar, is_infinite, parse_scalar
from treetrop.tlspace import (
    COMMON,
    PAIRWISE,
    CandidatePoint,
    CircuitReport,
    FacetReport,
    FacetScan,
    MembershipReport,
    circuit_membership,
    facet_condition,
    facet_scan,
    inequality_membership,
    internal_node_points,
    root_depth_point,
    subtree_point,
)
from treetrop.tree import (
    PathToSubtree,
    SubtreeRef,
    TreeError,
    WeightedTree,
    leaf_free_subtrees,
    random_tree,
    subtree_weight,
    trees_isomorphic,
)
from treetrop.tropical import (
    MAX,
    MIN,
    AllInfiniteError,
    ExtremumWitness,
    TropicalPlueckerVector,
    TropicalPolynomial,
    extremum_achieved_twice,
    trop_eval,
)
from treetrop.verify import VerifyConfig, VerifyReport, run_verify

__all__ = [name for name in dir() if not name.startswith("_")]
