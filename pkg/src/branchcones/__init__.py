"""Polyhedral models of type-A branching problems with exact certification.

The package builds H-descriptions of string cones, tensor-product cones,
Levi branching cones, and tree fiber-product cones, plus the triangle
diagrams and quilts that model the same multiplicities combinatorially for
SL(m).  Every count the cones produce can be checked against an independent
character-theoretic oracle; all arithmetic is exact.
"""

from .rootsys import (
    RootSystem,
    Weight,
    Word,
    build_root_system,
    coroot_pairing,
    dominance_leq,
    dual_weight,
    fundamental_weight,
    is_dominant,
    is_longest_word,
    longest_element_word,
    levi_complement_word,
    positive_roots,
    simple_reflection,
    simple_root,
    validate_reduced_word,
    w0_word,
    weyl_vector,
)
from .oracle import (
    irrep_dimension,
    levi_branching,
    multi_tensor_invariant_dim,
    tensor_decomposition,
    tensor_multiplicity,
    weight_multiplicities,
)
from .itrails import ITrail, WeightDiagram, d_vector, enumerate_itrails, minuscule_weight_diagram
from .cones import (
    Block,
    ConeH,
    ConeVariant,
    CoweightTuple,
    DEFAULT_VARIANT,
    Tree,
    build_tree,
    cone_blocks_sidecar,
    cone_hrep_text,
    coweight_tuple,
    coweight_value,
    degeneracy_pullback,
    face_pullback,
    in_dual_chamber,
    leaf_edge_block,
    levi_cone,
    parse_tree,
    string_cone,
    tree_fiber_cone,
    triple_cone,
)
from .lattice import (
    Polytope,
    ResourceLimitError,
    UnboundedRegionError,
    count_points,
    enumerate_points,
    point_satisfies,
    slice_cone,
)
from .bz import (
    BZFilling,
    BZTemplate,
    HexagonViolationError,
    Quilt,
    boundary_weights,
    bz_template,
    count_quilts,
    enumerate_bz,
    enumerate_quilts,
    filling_to_json,
    quilt_to_json,
)

__version__ = "0.1.0"
