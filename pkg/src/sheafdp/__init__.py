"""Dynamic programming as sheaf computation on finite topological spaces."""

from .engine import (
    CANONICAL,
    Canonical,
    ComputationTrace,
    Explicit,
    ExtensionRule,
    constant_rule,
    format_trace,
    parse_trace,
    replay,
    run,
    verify_well_definedness,
)
from .rings import INTEGERS, RATIONALS, Integers, PrimeField, Rationals, Reals
from .sheaf import (
    Germ,
    Section,
    SheafMorphism,
    check_morphism,
    check_sheaf_axioms,
    germ_at,
    glue,
    restrict,
    section_ring_ops,
    sections_equal_on_cover,
)
from .topology import (
    Base,
    Topology,
    check_minimal_extension_property,
    generate_topology,
    is_noetherian,
    minimal_open_supersets,
    subspace_topology,
    validate_base,
)

__version__ = "0.1.0"
