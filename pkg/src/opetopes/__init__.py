"""Opetopes: shapes of the iterated slice tower, opetopic sets, and the
weak n-category checker.

The package decides, for finite inputs, whether an opetopic set satisfies
the two weak n-category conditions -- every niche has a universal
occupant, and composites of universal cells are universal -- on top of a
small symbolic engine for typed operads, the slice construction, and
opetope enumeration.
"""

from .errors import (
    ArityMismatch,
    BoundExceeded,
    CarrierMismatch,
    CompositeMismatch,
    DegreeMismatch,
    DimensionOverflow,
    DimOutOfRange,
    DocumentError,
    IllTyped,
    InsufficientDimension,
    InvalidSet,
    MalformedConfig,
    NoSuchNode,
    OpetopeError,
    TypeMismatch,
    UnknownCell,
    UnknownFixture,
    UnsupportedOperad,
    ZeroDimensional,
)
from .trees import PasteTree, TreeNode, empty_tree, single_node_tree
from .shapes import (
    ARROW,
    POINT,
    Opetope,
    enumerate_opetopes,
    faces,
    from_code,
    from_metatree,
    identity_on,
    metatree_stages,
    render_metatree,
)
from .operads import (
    Algebra,
    AxiomReport,
    Operation,
    OperadLevel,
    TableOperad,
    TypeId,
    as_type,
    block_permutation,
    check_algebra_axioms,
    check_operad_axioms,
    compose,
    compose_perms,
    direct_sum_permutation,
    eval_algebra,
    from_type,
    identity_perm,
    initial_operad,
    permute,
)
from .slices import ReductionLaw, graft_composite, slice_operad, substitute
from .counting import brute_force_count
from .osets import (
    BoundaryConfig,
    OpetopicSet,
    competitors,
    enumerate_configs,
    frame_of,
    make_config,
    niche_of,
    occupants,
    outface_extensions,
    validate,
)
from .universality import (
    CheckContext,
    CheckVerdict,
    Verdict,
    check_weak_n_category,
    composites,
    is_balanced,
    is_universal,
)
from .fixtures import FIXTURES, build_fixture, induced_binary_table, monoid_set

__version__ = "0.1.0"
