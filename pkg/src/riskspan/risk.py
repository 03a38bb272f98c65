"""Polyhedral risk functions on the span of a body: duality and extensions.

A risk function is stored by its dual data: finitely many scenarios g_j with
penalties alpha_j, meaning max_j(pairing(f, g_j) - alpha_j) on span(K) and
+inf off it.  The Fenchel conjugate, the dual-representation evaluator and
the two extension operators are all exact LPs over that data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .bodies import AbsolutelyConvexBody, gauge, span_basis
from .errors import PreconditionError, KBoundViolationError, SpaceMismatchError, ValidationError
from .exactlp import LinearConstraint, LinearProgram, LPStatus, solve
from .measure import RandomVariable, ky_fan_distance, pairing
from .rational import INF, ExtendedValue, parse_rational

_F0 = Fraction(0)
_F1 = Fraction(1)

FATOU_MIN_TAIL = 8


@dataclass(frozen=True)
class PolyhedralRiskFunction:
    """Dual data {(g_j, alpha_j)} over a body fixing K and span(K)."""

    body: AbsolutelyConvexBody
    scenarios: tuple[tuple[RandomVariable, Fraction], ...]

    def __post_init__(self) -> None:
        if not self.scenarios:
            raise ValidationError("a risk function needs at least one scenario")
        for g, _alpha in self.scenarios:
            if g.space != self.body.space:
                raise SpaceMismatchError("scenario lives on a different space")

    @classmethod
    def of(
        cls,
        body: AbsolutelyConvexBody,
        scenarios: Sequence[tuple[Sequence[object], object]],
    ) -> "PolyhedralRiskFunction":
        pairs = tuple(
            (RandomVariable.of(body.space, values), parse_rational(alpha))
            for values, alpha in scenarios
        )
        return cls(body, pairs)

    @property
    def space(self):
        return self.body.space


def evaluate(phi: PolyhedralRiskFunction, f: RandomVariable) -> ExtendedValue:
    """max_j(pairing(f, g_j) - alpha_j) on span(K); INF off the span."""
    if f.space != phi.space:
        raise SpaceMismatchError("point lives on a different space")
    if not span_basis(phi.body).contains(f):
        return INF
    return max(pairing(f, g) - alpha for g, alpha in phi.scenarios)


def conjugate(phi: PolyhedralRiskFunction, g: RandomVariable) -> ExtendedValue:
    """Fenchel conjugate at g: cheapest scenario mixture matching g on span(K).

    min sum lambda_j alpha_j over the simplex subject to the mixture pairing
    equally against every basis vector of span(K); infeasible means +inf.
    """
    if g.space != phi.space:
        raise SpaceMismatchError("point lives on a different space")
    return _conjugate_lp(phi, g)


@lru_cache(maxsize=4096)
def _conjugate_lp(phi: PolyhedralRiskFunction, g: RandomVariable) -> ExtendedValue:
    basis = span_basis(phi.body)
    m = len(phi.scenarios)
    rows = [LinearConstraint(tuple([_F1] * m), "=", _F1)]
    for e in basis.basis:
        coeffs = tuple(pairing(gj, e) for gj, _alpha in phi.scenarios)
        rows.append(LinearConstraint(coeffs, "=", pairing(g, e)))
    lp = LinearProgram.minimize(
        [alpha for _gj, alpha in phi.scenarios], rows, lower=[_F0] * m
    )
    outcome = solve(lp)
    if outcome.status is LPStatus.INFEASIBLE:
        return INF
    assert outcome.status is LPStatus.OPTIMAL
    return outcome.value


def dual_rep_evaluate(
    phi: PolyhedralRiskFunction, f: RandomVariable, duals: Sequence[RandomVariable]
) -> ExtendedValue:
    """max over supplied dual points of pairing(f, g) - conjugate(phi, g).

    Every supplied point must have a finite conjugate; with the scenario list
    itself this reproduces evaluate exactly.
    """
    if not duals:
        raise ValidationError("at least one dual point required")
    best: Optional[ExtendedValue] = None
    for g in duals:
        penalty = conjugate(phi, g)
        if penalty is INF:
            raise PreconditionError("dual point has infinite conjugate")
        candidate = pairing(f, g) - penalty
        if best is None or candidate > best:
            best = candidate
    return best


def extend(
    phi: PolyhedralRiskFunction, f: RandomVariable, mode: str = "full"
) -> ExtendedValue:
    """The dual-representation extension evaluated at f.

    One LP over a dual point g and a scenario mixture lambda: maximise
    pairing(f, g) - sum lambda_j alpha_j subject to g matching the mixture on
    span(K); mode "monotone" restricts g to the nonnegative cone.  An
    unbounded supremum is +inf.
    """
    if mode not in ("full", "monotone"):
        raise ValidationError(f"unknown extension mode {mode!r}")
    if f.space != phi.space:
        raise SpaceMismatchError("point lives on a different space")
    space = phi.space
    n = space.size
    m = len(phi.scenarios)
    mu = space.weights
    basis = span_basis(phi.body)
    # variables: lambda_1..lambda_m, g_1..g_n
    rows = [LinearConstraint(tuple([_F1] * m + [_F0] * n), "=", _F1)]
    for e in basis.basis:
        coeffs = [pairing(gj, e) for gj, _alpha in phi.scenarios]
        coeffs += [-(mu[i] * e.values[i]) for i in range(n)]
        rows.append(LinearConstraint(tuple(coeffs), "=", _F0))
    objective = [alpha for _gj, alpha in phi.scenarios]
    objective += [-(mu[i] * f.values[i]) for i in range(n)]
    g_lower = _F0 if mode == "monotone" else None
    lp = LinearProgram.minimize(
        objective, rows, lower=[_F0] * m + [g_lower] * n
    )
    outcome = solve(lp)
    if outcome.status is LPStatus.UNBOUNDED:
        return INF
    if outcome.status is LPStatus.INFEASIBLE:
        if mode == "full":
            raise AssertionError("full-mode extension LP cannot be infeasible")
        raise PreconditionError(
            "no nonnegative dual point matches any scenario mixture on span(K); "
            "the monotone extension is empty"
        )
    return -outcome.value


def monotone_certifiable(phi: PolyhedralRiskFunction) -> bool:
    """Whether every scenario agrees on span(K) with a nonnegative dual point."""
    space = phi.space
    n = space.size
    mu = space.weights
    basis = span_basis(phi.body)
    for gj, _alpha in phi.scenarios:
        rows = []
        for e in basis.basis:
            coeffs = tuple(mu[i] * e.values[i] for i in range(n))
            rows.append(LinearConstraint(coeffs, "=", pairing(gj, e)))
        lp = LinearProgram.minimize([_F0] * n, rows, lower=[_F0] * n)
        if solve(lp).status is not LPStatus.OPTIMAL:
            return False
    return True


def fatou_probe(
    evaluator: Callable[[RandomVariable], ExtendedValue],
    body: AbsolutelyConvexBody,
    sequence: Sequence[RandomVariable],
    limit: RandomVariable,
    bound: Fraction,
) -> bool:
    """Finite-prefix lower-semicontinuity probe along a K-bounded sequence.

    Preconditions: every element has gauge at most ``bound`` (violations
    raise KBoundViolationError, reported distinctly) and the Ky-Fan distance
    to the limit is nonincreasing along the prefix.  The liminf proxy is the
    minimum of the evaluator over the tail window (second half of the
    prefix, at least FATOU_MIN_TAIL elements); the probe passes when the
    evaluator at the limit does not exceed it.  This is a property-test
    harness, not a proof: the proxy underestimates the true liminf for
    sequences approaching strictly from below.
    """
    if not sequence:
        raise ValidationError("empty sequence")
    for f in sequence:
        g = gauge(body, f)
        if g is INF or g > bound:
            raise KBoundViolationError("sequence element escapes the gauge bound")
    previous = None
    for f in sequence:
        d = ky_fan_distance(f, limit)
        if previous is not None and d > previous:
            raise PreconditionError("Ky-Fan distances to the limit must be nonincreasing")
        previous = d
    tail_len = min(len(sequence), max((len(sequence) + 1) // 2, FATOU_MIN_TAIL))
    tail = sequence[len(sequence) - tail_len :]
    proxy = min(evaluator(f) for f in tail)
    return evaluator(limit) <= proxy


__all__ = [
    "PolyhedralRiskFunction",
    "evaluate",
    "conjugate",
    "dual_rep_evaluate",
    "extend",
    "monotone_certifiable",
    "fatou_probe",
    "FATOU_MIN_TAIL",
]
