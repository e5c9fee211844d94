"""Exact computations with path algebras KE of finite directed multigraphs."""

from .algebra import (
    CornerClass,
    CornerKind,
    Element,
    Path,
    corner_classify,
    elem_mul,
    enumerate_paths,
    ideal_contains,
    make_path,
    parse_element,
    path_compose,
    peirce_project,
    quotient_project,
    trivial_path,
)
from .classify import (
    ClassificationReport,
    Decomposition,
    Kind,
    NoetherInvariant,
    TriangularForm,
    Verdict,
    classify,
    decompose_mod_radical,
    decompose_semiprime,
    is_artinian,
    is_noetherian,
    is_prime,
    is_primitive,
    is_semiartinian,
    is_semiprime,
    is_simple,
    noether_invariant,
    radical_contains,
    radical_edges,
    socle,
    socle_chain_ideal,
    triangular_form,
)
from .cycle import (
    AdmissiblePair,
    CycleAlgebra,
    center_generator,
    centralizer_extend,
    centroid_descriptor,
    closure_preimage,
    m_exp,
    n_exp,
    omega,
    omega_inverse,
    tau_embed,
    tau_preimage,
    theta,
)
from .errors import (
    AmbientMismatch,
    CycleCapExceeded,
    GraphError,
    ParseError,
    PreconditionError,
    QuiverkitError,
)
from .fields import GF, QQ, Poly, PolyMatrix, RatFunc, RatMatrix, mat_mul, parse_field
from .graph import (
    Graph,
    cycle_graph,
    disjoint_union,
    enumerate_simple_cycles,
    line_graph,
    parse_graph,
    reverse_graph,
    rose_graph,
    scc_condense,
    skeleton,
    source_chain,
)

__version__ = "0.1.0"
