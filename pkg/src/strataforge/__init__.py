"""strataforge: combinatorics and rewriting tools for moduli of curves.

Five submodules, one concern each: stable_graphs enumerates boundary
strata, strata_classes decorates them and tracks socle degrees,
filling_engine runs the cited-fact fixed-point inference over the (g, n)
grid, hurwitz_profiles handles ramification bookkeeping,
linear_conditions computes independence degree bounds, and
graded_rewriter reduces polynomials against the plane, trigonal, and
tetragonal relation presets. The cli module fronts all of them.
"""

from .errors import (
    CapExceeded,
    DegenerateInput,
    DegreeTooSmall,
    DivisorZero,
    InconsistentFacts,
    IndexOutOfRange,
    InvalidGraph,
    InvalidSpec,
    MissingCitation,
    NotInUniverse,
    ProfileTooRamified,
    SplittingInvalid,
    StrataforgeError,
    UniverseMismatch,
    UnknownKey,
    UnknownLabel,
    UnstablePair,
    UnstableResult,
    UsageError,
)
from .filling_engine import (
    Derivation,
    Fact,
    FactFile,
    GridStatus,
    explain_chain,
    load_packaged_facts,
    propagate,
    replay_chain,
)
from .graded_rewriter import (
    GradedPoly,
    ModuleGenerator,
    RelationPreset,
    cubic_relation,
    defining_relations,
    eliminate_zeta_cubes,
    module_generators,
    normal_form,
    parse_poly,
    plane_preset,
    r_class,
    spans_module_generators,
    substitute_z,
    tetragonal_preset,
    trigonal_preset,
    zeta_cube_reduction,
)
from .hurwitz_profiles import (
    ComponentDescriptor,
    FphProfile,
    ProfileReport,
    RamCycleSpec,
    RamificationProfile,
    component_labels,
    cycle_codim,
    fph_profile,
    simple_profile,
    validate_profile,
)
from .linear_conditions import (
    LineBundleOnCurve,
    expected_sections,
    independence_bound,
    plane_bound,
    tetragonal_bound,
    tetragonal_summand_degrees,
    trigonal_bound,
    trigonal_sections,
)
from .stable_graphs import (
    ContractionPoset,
    GraphClass,
    StableGraph,
    automorphism_count,
    canonical_key,
    classify,
    contract_edge,
    distinguished_vertex_graphs,
    enumerate_by_edges,
    enumerate_graphs,
    half_edge_automorphisms,
    has_separating_edge,
    is_open_union,
    key_to_graph,
)
from .strata_classes import (
    DecoratedStratum,
    SpaceKind,
    enumerate_decorated,
    forget_leg,
    make_decorated,
    socle_degree,
)
