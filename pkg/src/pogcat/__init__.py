"""Exact computational algebra for graded and filtered categories.

Partially ordered grading groups, monoid rings with Novikov style
truncation, graded modules and persistence, orbit categories for group
actions, curved A-infinity categories with quotients, twisted complexes
and bounding cochains, and an exact integer homology engine.  Everything
runs over Z or F2 with rational gradings; no floating point anywhere.
"""

from .pog import (
    InclusionError,
    Pog,
    PogError,
    PogMismatchError,
    Quotient,
    Rationals,
    UnorderedPogError,
    ZScaled,
    ceil_to,
    exhaustion,
    floor_to,
    hom_witness,
    is_subpog,
    parse_pog,
)
from .scalars import (
    AlmostSetup,
    CutoffError,
    MonoidRingElt,
    NovikovElt,
    TruncatedMap,
    TruncatedModule,
    almost_iso,
    almost_zero,
    idempotent_split,
    novikov_truncate,
)
from .homology import (
    AbGroup,
    ChainComplexZ,
    cokernel,
    homology,
    invariant_factors,
    is_quasi_iso,
    kernel_basis,
    mapping_cone,
    smith_normal_form,
    solve_int,
)
from .modules import (
    GradedModule,
    ModuleError,
    PersistenceModule,
    Presentation,
    TruncatedRing,
    complete_persistence,
    equivariantize,
    extend_persistence,
    free_line,
    hom_rank,
    ideal_quotient_ranks,
    interval_module,
    module_check,
    restrict,
    restrict_persistence,
    ring_completion,
    tensor,
)
from .orbit import (
    EnrichedCategory,
    GroupAction,
    Mor,
    OrbitError,
    change_of_enrichment,
    check_enriched,
    compare_categories,
    continuation_morphism,
    filtration_check,
    full_subcategory,
    group_ring_category,
    orbit,
    orbit_pog,
    orbit_quotient,
    point_category,
    reconstruct,
    shift_action_on_unorbit,
    spread_category,
    trivial_action,
    unorbit,
    unorbit_pog,
    unorbit_quotient,
)
from .cainf import (
    CAinf,
    CAinfError,
    CAinfFunctor,
    ModuleData,
    cch_instance,
    check_cainf,
    check_functor,
    check_module,
    flat,
    functor_curvature,
    gr,
    hom_stratum_complex,
    identity_functor,
    module_curvature,
    module_value_complex,
    reduce_mod2,
    relation_residual,
    restrict_objects,
    unit_category,
    yoneda,
)
from .constructions import (
    QuotientCategory,
    TwObject,
    bounding_cochains,
    check_quotient,
    check_quotient_functor,
    cone,
    embed,
    induced_quotient_functor,
    localize,
    localize_module,
    mc_residual,
    quotient,
    twisted,
)
from .report import CheckItem, Report
from .workspace import (
    ParseError,
    Workspace,
    parse_category,
    parse_category_text,
    parse_workspace,
    parse_workspace_text,
    twist_window,
)

__version__ = "0.1.0"
