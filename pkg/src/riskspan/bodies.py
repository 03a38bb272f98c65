"""Absolutely convex bodies by generators: gauges, polars, solid hulls.

A body K is the absolutely convex hull of finitely many generators; in a
finite-atom space it is automatically closed, bounded and absolutely convex,
so no runtime check is needed for those facts.  Polars are never
materialised as geometry: they enter only through the generator-max formula
for their gauge and through membership LPs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional

from . import linalg
from .errors import PreconditionError, SpaceMismatchError, ValidationError
from .exactlp import LinearConstraint, LinearProgram, LPStatus, solve
from .measure import FiniteProbabilitySpace, RandomVariable, abs_pairing
from .rational import INF, ExtendedValue

_F0 = Fraction(0)
_F1 = Fraction(1)

SIGN_PATTERN_ATOM_CAP = 12


@dataclass(frozen=True)
class AbsolutelyConvexBody:
    """K = {sum c_j v_j : sum |c_j| <= 1} for the stored generators v_j."""

    space: FiniteProbabilitySpace
    generators: tuple[RandomVariable, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            raise ValidationError("a body needs at least one generator")
        for g in self.generators:
            if g.space != self.space:
                raise SpaceMismatchError("generator lives on a different space")
        if all(g.is_zero() for g in self.generators):
            raise ValidationError("a body needs at least one nonzero generator")

    @classmethod
    def of(cls, space: FiniteProbabilitySpace, rows: Iterable[Iterable[object]]) -> "AbsolutelyConvexBody":
        return cls(space, tuple(RandomVariable.of(space, row) for row in rows))

    def scaled(self, factor: object) -> "AbsolutelyConvexBody":
        return AbsolutelyConvexBody(self.space, tuple(g.scaled(factor) for g in self.generators))


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of L0 given by an exactly independent basis."""

    space: FiniteProbabilitySpace
    basis: tuple[RandomVariable, ...]

    def __post_init__(self) -> None:
        for b in self.basis:
            if b.space != self.space:
                raise SpaceMismatchError("basis vector lives on a different space")
        rows = [list(b.values) for b in self.basis]
        if rows and linalg.rank(rows) != len(rows):
            raise ValidationError("basis vectors are not linearly independent")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, x: RandomVariable) -> bool:
        if x.space != self.space:
            raise SpaceMismatchError("vector lives on a different space")
        return linalg.in_span([list(b.values) for b in self.basis], list(x.values))


@lru_cache(maxsize=4096)
def span_basis(body: AbsolutelyConvexBody) -> Subspace:
    """The span of K, reduced to a maximal independent subset of generators."""
    rows = [list(g.values) for g in body.generators]
    kept = linalg.independent_rows(rows)
    return Subspace(body.space, tuple(body.generators[i] for i in kept))


def gauge(body: AbsolutelyConvexBody, x: RandomVariable) -> ExtendedValue:
    """Minkowski functional of K at x; INF off the span of K, 0 iff x = 0.

    Computed as min sum(a_j + b_j) subject to sum (a_j - b_j) v_j = x with
    a, b >= 0; infeasibility signals x outside span(K).
    """
    if x.space != body.space:
        raise SpaceMismatchError("point lives on a different space")
    m = len(body.generators)
    n = body.space.size
    rows = []
    for i in range(n):
        coeffs = [g.values[i] for g in body.generators] + [-g.values[i] for g in body.generators]
        rows.append(LinearConstraint(tuple(coeffs), "=", x.values[i]))
    lp = LinearProgram.minimize([_F1] * (2 * m), rows, lower=[_F0] * (2 * m))
    outcome = solve(lp)
    if outcome.status is LPStatus.INFEASIBLE:
        return INF
    assert outcome.status is LPStatus.OPTIMAL
    return outcome.value


def member(body: AbsolutelyConvexBody, x: RandomVariable) -> bool:
    return gauge(body, x) <= _F1


def polar_gauge(body: AbsolutelyConvexBody, g: RandomVariable) -> Fraction:
    """sup over f in K of the absolute pairing with g; attained at a generator."""
    if g.space != body.space:
        raise SpaceMismatchError("point lives on a different space")
    return max(abs_pairing(v, g) for v in body.generators)


def _sign_patterns(indices: list[int]) -> Iterable[tuple[int, ...]]:
    return product((1, -1), repeat=len(indices))


def solid_hull_member(
    body: AbsolutelyConvexBody, f: RandomVariable
) -> tuple[bool, Optional[RandomVariable]]:
    """Whether some g in K dominates |f| coordinatewise; returns the witness.

    One feasibility LP per sign pattern of g over the support of f (atoms
    where f vanishes impose nothing).  Support size is capped at
    SIGN_PATTERN_ATOM_CAP.
    """
    if f.space != body.space:
        raise SpaceMismatchError("point lives on a different space")
    support = [i for i, v in enumerate(f.values) if v != 0]
    if len(support) > SIGN_PATTERN_ATOM_CAP:
        raise PreconditionError(
            f"support size {len(support)} exceeds the sign-pattern cap {SIGN_PATTERN_ATOM_CAP}"
        )
    m = len(body.generators)
    norm_row = LinearConstraint(tuple([_F1] * (2 * m)), "<=", _F1)
    for pattern in _sign_patterns(support):
        rows = [norm_row]
        for s, i in zip(pattern, support):
            coeffs = [s * g.values[i] for g in body.generators]
            coeffs += [-s * g.values[i] for g in body.generators]
            rows.append(LinearConstraint(tuple(coeffs), ">=", abs(f.values[i])))
        lp = LinearProgram.minimize([_F0] * (2 * m), rows, lower=[_F0] * (2 * m))
        outcome = solve(lp)
        if outcome.status is LPStatus.OPTIMAL:
            point = outcome.point
            witness_values = [
                sum((point[j] - point[m + j]) * g.values[i] for j, g in enumerate(body.generators))
                for i in range(body.space.size)
            ]
            return True, RandomVariable(body.space, tuple(witness_values))
    return False, None


def bipolar_member(body: AbsolutelyConvexBody, f: RandomVariable) -> bool:
    """Membership in the bipolar of K, computed through the polar.

    f belongs to the bipolar iff sup over g in the polar of |pairing| is at
    most 1.  Objective and polar constraints depend on |g| only, so the sup
    is a single LP over h = |g| >= 0; an unbounded sup means f has mass on
    atoms the body never touches.
    """
    if f.space != body.space:
        raise SpaceMismatchError("point lives on a different space")
    n = body.space.size
    mu = body.space.weights
    rows = []
    for g in body.generators:
        coeffs = tuple(mu[i] * abs(g.values[i]) for i in range(n))
        rows.append(LinearConstraint(coeffs, "<=", _F1))
    objective = [-(mu[i] * abs(f.values[i])) for i in range(n)]
    lp = LinearProgram.minimize(objective, rows, lower=[_F0] * n)
    outcome = solve(lp)
    if outcome.status is LPStatus.UNBOUNDED:
        return False
    assert outcome.status is LPStatus.OPTIMAL
    return -outcome.value <= _F1


def solid_check(
    body: AbsolutelyConvexBody,
) -> tuple[bool, Optional[RandomVariable]]:
    """Whether K is solid; on failure returns a point of sol(K) outside K.

    K is solid iff every sign flip of |v| stays in K for every generator v:
    boxes over generators generate all boxes by convexity and coordinatewise
    clipping (cross-checked against a brute-force oracle in the test suite).
    """
    for v in body.generators:
        support = [i for i, val in enumerate(v.values) if val != 0]
        if len(support) > SIGN_PATTERN_ATOM_CAP:
            raise PreconditionError(
                f"support size {len(support)} exceeds the sign-pattern cap {SIGN_PATTERN_ATOM_CAP}"
            )
        for pattern in _sign_patterns(support):
            values = [_F0] * body.space.size
            for s, i in zip(pattern, support):
                values[i] = s * abs(v.values[i])
            candidate = RandomVariable(body.space, tuple(values))
            if not member(body, candidate):
                return False, candidate
    return True, None


def solid_hull(body: AbsolutelyConvexBody) -> AbsolutelyConvexBody:
    """The solid hull of K as a body: all sign flips of |v| over generators."""
    seen: set[tuple[Fraction, ...]] = set()
    hull: list[RandomVariable] = []
    for v in body.generators:
        if v.is_zero():
            continue
        support = [i for i, val in enumerate(v.values) if val != 0]
        if len(support) > SIGN_PATTERN_ATOM_CAP:
            raise PreconditionError(
                f"support size {len(support)} exceeds the sign-pattern cap {SIGN_PATTERN_ATOM_CAP}"
            )
        for pattern in _sign_patterns(support):
            values = [_F0] * body.space.size
            for s, i in zip(pattern, support):
                values[i] = s * abs(v.values[i])
            key = tuple(values)
            mirror = tuple(-x for x in values)
            if key in seen or mirror in seen:
                continue
            seen.add(key)
            hull.append(RandomVariable(body.space, key))
    return AbsolutelyConvexBody(body.space, tuple(hull))
