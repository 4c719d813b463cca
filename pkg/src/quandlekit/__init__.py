"""Finite quandles, quandle terms, orders on quandles, the Magnus order on free
groups, and torus-link presentations with non-orderability certificates."""
from .certificates import (
    Certificate,
    Step,
    VerifyResult,
    certificate_from_json,
    certificate_to_json,
    make_certificate,
    trefoil_left_derivation,
    verify_certificate,
)
from .free_orders import (
    RackElement,
    eps,
    finite_ga_quandle,
    magnus_compare,
    magnus_expand,
    parse_free_word,
    quandle_compare,
    quandle_normalize,
    quandle_op,
    rack_compare,
    rack_op,
)
from .groups import FiniteGroup, cyclic, dihedral_group, group_catalog, symmetric
from .links import BraidWord, closure_presentation, count_homs, parse_braid, torus_braid, torus_presentation
from .ordering import (
    ADMISSIBLE_TYPES,
    EQ,
    GT,
    LT,
    FiniteOrder,
    OrderSymbol,
    alexander_classify,
    alexander_sample_check,
    classify_order,
    search_order,
)
from .quandles import (
    FiniteQuandle,
    QuandleAxiomError,
    alexander,
    conj,
    core,
    dihedral,
    property_report,
    trivial,
    validate_quandle,
)
from .terms import LeftWord, QuandlePresentation, canonicalize, env_presentation, mul, parse_presentation, parse_term

__version__ = "0.1.0"
