"""quadembed: exact-arithmetic embeddings of quadratic spaces into algebras."""

from .scalars import (
    QQ,
    RingError,
    Scalar,
    ScalarMatrix,
    ShapeError,
    ZZ,
    Zmod,
    is_nonzerodivisor,
    is_unit,
    rank_over_fractions,
    solve_in_ring,
)
from .qspace import (
    QuadraticSpace,
    bilinear,
    diagonal_space,
    evaluate_q,
    find_isometry,
    hyperbolic,
    is_nondegenerate,
    is_nonsingular,
    negate,
    orthogonal_sum,
)
from .clifford import (
    CliffordElement,
    CliffordRelationError,
    check_graded_iso_sum,
    cl_mul,
    embed_vector,
    extend_universal,
    grade_component,
    grade_involution,
    graded_tensor,
    is_homogeneous,
    pbw_basis,
    standard_involution,
)
from .algmat import (
    AlgMatrix,
    CliffordCoeffs,
    ScalarCoeffs,
    block2,
    determinant,
    generated_algebra_rank,
    mat_add,
    mat_mul,
    parity_of_block_matrix,
    scalar_mul,
    span_coords,
    transpose,
)
from .embedding import (
    Embedding,
    EmbeddingError,
    InvolutionForm,
    build_phi,
    check_alpha_order_two,
    clifford_self_embedding,
    involutions_conflict_check,
    jordan_product,
    lift_involution,
    validate_embedding,
)
from .suslin import (
    SuslinPair,
    catalog_generators,
    catalog_space,
    check_suslin_identities,
    derive_j,
    hyperbolic_clifford_iso,
    suslin,
    suslin_bar,
    suslin_embedding,
)
from .spin import EvenPair, GroupElement, SpinContext

__all__ = [name for name in dir() if not name.startswith("_")]
