"""Finite-group toolkit and canonical-formula analyzer."""

from .errors import (
    ClosureViolation,
    ConflictingPairs,
    DuplicateLabel,
    GroupTooLarge,
    InconsistentRule,
    IndexOutOfRange,
    InvalidAssignment,
    LengthMismatch,
    MissingInverse,
    NoIdentity,
    NonAssociative,
    NonCommutativeGroup,
    NotAutomorphism,
    NotBijective,
    ParseError,
    SourceTargetMismatch,
    ToolkitError,
    UnknownKind,
    UnknownLabel,
    UnsatisfiableConstraint,
    WrongIdentity,
)
from .groups import (
    ElementSubset,
    FiniteGroup,
    FractionTransformation,
    FractionTransformationGroup,
    StructureFlags,
    build_group,
    catalog,
    catalog_group,
    center,
    element_order,
    fraction_transformation_group,
    generated_subgroup,
    inverse_of,
    standard_group,
    structure_flags,
)
from .morphisms import (
    GroupMap,
    SymmetryGroup,
    are_isomorphic,
    classify_map,
    compose_maps,
    enumerate_symmetries,
    find_isomorphism,
    identity_map,
    inner_automorphisms,
    inversion_map,
    invert_map,
    is_outer,
    isomorphisms,
    map_to_json,
    q8_symmetry,
    symmetry_group,
)
from .formula import (
    BUILTIN_VARIANTS,
    CLASSIC,
    DUAL,
    MOSKO,
    ROLES,
    CFVariant,
    ChainResult,
    ChainStep,
    FormulaSide,
    PartialMap,
    RoleAssignment,
    RoleTerm,
    apply_rule,
    assignment_to_json,
    chain_to_json,
    enumerate_assignments,
    evaluate_role_term,
    induced_partial_map,
    iterate_chain,
    mosko_degeneration_check,
    realizations,
    rewrite_side,
    variant_by_name,
    verify_fraction_rule,
)
from .dsl import (
    load_builtin_group_file,
    parse_formula,
    parse_group_file,
    render_formula,
    render_group_file,
)

__version__ = "0.1.0"
