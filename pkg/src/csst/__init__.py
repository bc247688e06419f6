"""Transversal T on stabilizer codes: CSS-T checks, logical actions and search."""

from .checker import (
    CssTPairReport,
    Mode,
    Theorem1Report,
    WitnessBudgetExceeded,
    check_css_t_pair,
    check_theorem1,
    compute_Zj,
    css_t_sign_offset,
    cssify,
    dual_containment_on_support,
    find_self_dual_subcode,
    signed_css_stabilizer,
)
from .codes import (
    LinearCode,
    MonomialSet,
    dual,
    is_decreasing,
    is_even,
    is_triorthogonal,
    min_distance,
    monomial_code,
    reed_muller,
    star_containment,
)
from .gf2 import BitMatrix, BitVector
from .logical import (
    Anf,
    LogicalActionReport,
    Theorem2Report,
    anf_from_phases,
    check_logical_identity,
    check_theorem2,
    dense_preservation_and_action,
    logical_phases,
    qrm_admissible,
)
from .pauli import PauliOperator, SignRule, StabilizerCode, css_stabilizer
from .qfd import QfdGate, qfd_coefficients, qfd_conjugate, transversal_t_conjugate
from .search import SearchResult, SearchSpec, cmd_search

__version__ = "0.1.0"
