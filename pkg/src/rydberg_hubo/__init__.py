"""Compile higher-order binary cost functions into weighted Rydberg atom
graphs, verify ground-state equivalence exactly, and simulate adiabatic
solution extraction."""

from .compiler import (
    CompileError,
    CompiledGraph,
    GadgetPlan,
    GadgetSpec,
    MODE_ADDRESSING,
    MODE_DUPLICATION,
    PAIR_RULE_FIRST,
    PAIR_RULE_LAST,
    assemble,
    compile_polynomial,
    dump_graph_json,
    effective_polynomial,
    load_graph_json,
    lower,
    to_dot,
)
from .expand import (
    ExpansionError,
    ExpansionSpec,
    ResourceEstimate,
    complete_hypergraph_entries,
    estimate_atoms,
    expand_superatom,
    verify_expansion,
)
from .gadgets import (
    Atom,
    AtomGraph,
    GadgetFragment,
    energy_profile,
    negative_hyperedge,
    offset_gadget,
    positive_hyperedge,
    profile_entry,
)
from .models import build_factorization_hubo, build_sierpinski_hubo
from .mwis import (
    EquivalenceCertificate,
    GroundReport,
    MwisResult,
    ground_manifold,
    max_weight_independent_sets,
    verify_equivalence,
)
from .poly import (
    EnumerationBoundError,
    HuboParseError,
    PolyBuilder,
    Polynomial,
    brute_force_minima,
    parse_hubo,
)
from .sim import (
    RydbergParams,
    Schedule,
    adiabatic_sweep,
    build_hamiltonian,
    default_blockade,
    ground_state,
)

__version__ = "0.1.0"
