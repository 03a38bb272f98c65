"""riskspan: exact-arithmetic risk measures on non-solid spans.

Convex bodies of attainable claims over finite probability spaces, their
gauges and polars, polyhedral risk functions with exact Fenchel duality and
maximal/monotone extensions, and finite market trees whose incomplete-market
ball of attainable claims fails to be solid.  Everything is computed in
exact rational arithmetic with certified linear programming underneath.
"""

from .bodies import (
    AbsolutelyConvexBody,
    Subspace,
    bipolar_member,
    gauge,
    member,
    polar_gauge,
    solid_check,
    solid_hull,
    solid_hull_member,
    span_basis,
)
from .errors import (
    CertificateError,
    KBoundViolationError,
    PreconditionError,
    RiskspanError,
    SpaceMismatchError,
    ValidationError,
)
from .exactlp import (
    LinearConstraint,
    LinearProgram,
    LPOutcome,
    LPStatus,
    record_outcomes,
    solve,
    verify_outcome,
    vertex_enumeration,
)
from .market import (
    MarketNode,
    MarketTree,
    MartingaleMeasureSet,
    StrategyBasis,
    Witness,
    attainable,
    attainable_ball,
    emm_set,
    nonsolidity_witness,
    replicates,
    strategy_basis,
    viability,
    viability_certificate,
)
from .measure import (
    FiniteProbabilitySpace,
    Measure,
    RandomVariable,
    abs_pairing,
    compactifying_measure,
    expectation,
    ky_fan_distance,
    pairing,
)
from .rational import INF, ExtendedValue, format_extended, format_rational, parse_rational
from .risk import (
    PolyhedralRiskFunction,
    conjugate,
    dual_rep_evaluate,
    evaluate,
    extend,
    fatou_probe,
    monotone_certifiable,
)

__version__ = "0.1.0"
