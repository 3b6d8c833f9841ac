"""Exact certificates for span colorings, power-operation actions, and
realizability of graph-indexed monomial-ideal algebras."""

from .algebra import (
    AlgebraElement,
    FreePolynomialAlgebra,
    JoinComplex,
    Monomial,
    ideal_membership,
    maximal_faces,
    multiply,
    parse_free_algebra,
    reduce_monomial,
)
from .errors import (
    ContractError,
    GraphParseError,
    IncompleteTableError,
    SearchSpaceExceeded,
    SrChromaError,
)
from .families import FamilySpec, build_complex, parse_family
from .graph import (
    Coloring,
    Graph,
    chromatic_number,
    coloring_is_valid,
    neighbors,
    parse_graph,
    serialize_graph,
    two_core,
)
from .realize import (
    AndersonGrodalFamily,
    DegreeMultisetFamily,
    ExplicitFamily,
    Partition,
    RealizabilityVerdict,
    check_realizable,
    chromatic_bounds,
    decompose_s,
    load_family_file,
    multiset_decomposable,
    partition_from_coloring,
    partition_from_decomposition,
    sufficiency_partition,
    verify_partition,
    verify_partition_family,
)
from .search import SearchOutcome, search_action
from .span import (
    FpVector,
    SpanColoring,
    span_chromatic_number,
    span_membership,
    verify_span_coloring,
)
from .steenrod import (
    CheckReport,
    GFunction,
    NecessaryOutcome,
    PowerRelation,
    PpDecomposition,
    SteenrodTable,
    adem_relation,
    cartan_extend,
    check_ideal_preservation,
    check_relations,
    check_unstability,
    cokernel_report,
    coloring_from_action,
    decompose_pp,
    default_relation_set,
    full_adem_relation_set,
    necessary_condition,
    parse_element,
    parse_table,
)

__version__ = "0.1.0"
