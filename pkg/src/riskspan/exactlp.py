"""Exact rational linear programming with status certificates.

Two-phase primal simplex over Fractions with Bland's anti-cycling rule.
Variable bounds are lifted into explicit rows internally, so optimality and
infeasibility certificates decompose into one multiplier per constraint plus
per-variable bound multipliers / reduced costs, all of which re-validate
against the original data by exact arithmetic.  ``solve`` self-checks every
certificate before returning.

Statuses:
  * OPTIMAL    -- primal point, value, dual multipliers, reduced costs;
                  dual objective equals the primal value exactly.
  * INFEASIBLE -- Farkas multipliers (rows + bounds) combining the
                  constraints into 0 >= positive.
  * UNBOUNDED  -- a feasible point plus an exact improving ray.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Sequence

from . import linalg
from .errors import CertificateError, PreconditionError, ValidationError
from .rational import parse_rational

_F0 = Fraction(0)
_F1 = Fraction(1)

RELATIONS = ("=", "<=", ">=")

VERTEX_DIMENSION_CAP = 8


@dataclass(frozen=True)
class LinearConstraint:
    coefficients: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self) -> None:
        if self.relation not in RELATIONS:
            raise ValidationError(f"unknown relation {self.relation!r}")

    @classmethod
    def of(cls, coefficients: Sequence[object], relation: str, rhs: object) -> "LinearConstraint":
        return cls(tuple(parse_rational(c) for c in coefficients), relation, parse_rational(rhs))


@dataclass(frozen=True)
class LinearProgram:
    """min objective . x subject to rows and optional per-variable bounds."""

    objective: tuple[Fraction, ...]
    constraints: tuple[LinearConstraint, ...]
    lower: tuple[Optional[Fraction], ...]
    upper: tuple[Optional[Fraction], ...]

    def __post_init__(self) -> None:
        n = len(self.objective)
        if n == 0:
            raise ValidationError("a program needs at least one variable")
        for con in self.constraints:
            if len(con.coefficients) != n:
                raise ValidationError("constraint row length differs from variable count")
        if len(self.lower) != n or len(self.upper) != n:
            raise ValidationError("one (optional) bound pair per variable required")

    @classmethod
    def minimize(
        cls,
        objective: Sequence[object],
        constraints: Sequence[LinearConstraint] = (),
        lower: Optional[Sequence[Optional[object]]] = None,
        upper: Optional[Sequence[Optional[object]]] = None,
    ) -> "LinearProgram":
        n = len(objective)
        lo = tuple(None if b is None else parse_rational(b) for b in (lower or [None] * n))
        up = tuple(None if b is None else parse_rational(b) for b in (upper or [None] * n))
        return cls(tuple(parse_rational(c) for c in objective), tuple(constraints), lo, up)


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPOutcome:
    status: LPStatus
    value: Optional[Fraction] = None
    point: Optional[tuple[Fraction, ...]] = None
    dual: Optional[tuple[Fraction, ...]] = None
    reduced_costs: Optional[tuple[Fraction, ...]] = None
    farkas: Optional[tuple[Fraction, ...]] = None
    farkas_lower: Optional[tuple[Fraction, ...]] = None
    farkas_upper: Optional[tuple[Fraction, ...]] = None
    ray: Optional[tuple[Fraction, ...]] = None


_RECORDERS: list[list] = []


@contextmanager
def record_outcomes(sink: list) -> Iterator[list]:
    """Collect every (lp, outcome) pair solved while the context is active."""
    _RECORDERS.append(sink)
    try:
        yield sink
    finally:
        _RECORDERS.remove(sink)


# ---------------------------------------------------------------------------
# simplex core


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    prow = tableau[row]
    if piv != 1:
        inv = _F1 / piv
        for j in range(len(prow)):
            if prow[j]:
                prow[j] *= inv
    for i, other in enumerate(tableau):
        if i != row and other[col]:
            factor = other[col]
            for j in range(len(prow)):
                if prow[j]:
                    other[j] -= factor * prow[j]
    basis[row] = col


def _reduced_cost_row(
    tableau: list[list[Fraction]], basis: list[int], cost: list[Fraction]
) -> list[Fraction]:
    width = len(tableau[0]) if tableau else 0
    row = cost[:] + [_F0] * (width - len(cost))
    for k, b in enumerate(basis):
        cb = cost[b]
        if cb:
            trow = tableau[k]
            for j in range(width):
                if trow[j]:
                    row[j] -= cb * trow[j]
    return row


def _bland_simplex(
    tableau: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
    enterable: int,
    evict_from: Optional[int] = None,
) -> tuple[str, Optional[int], list[Fraction]]:
    """Run Bland pivots to optimality or an unbounded column.

    ``enterable`` caps the column indices that may enter the basis (used to
    freeze artificial columns out in phase two).  With ``evict_from`` set,
    any basic variable at or beyond that column index is forced to leave at
    a ratio-zero pivot before it could take a positive value again; such
    columns sit at value zero after phase one, so feasibility is preserved
    even when the pivot element is negative.  Returns the final reduced-cost
    row, whose entries under the artificial columns encode the duals.
    """
    red = _reduced_cost_row(tableau, basis, cost)

    def apply_pivot(row: int, col: int) -> None:
        _pivot(tableau, basis, row, col)
        factor = red[col]
        prow = tableau[row]
        if factor:
            for j in range(len(red)):
                if prow[j]:
                    red[j] -= factor * prow[j]

    while True:
        enter = next((j for j in range(enterable) if red[j] < 0), None)
        if enter is None:
            return "optimal", None, red
        if evict_from is not None:
            evict = next(
                (
                    i
                    for i, row in enumerate(tableau)
                    if basis[i] >= evict_from and row[enter] != 0
                ),
                None,
            )
            if evict is not None:
                apply_pivot(evict, enter)
                continue
        leave = None
        best_ratio: Optional[Fraction] = None
        for i, row in enumerate(tableau):
            coeff = row[enter]
            if coeff > 0:
                ratio = row[-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave is None:
            return "unbounded", enter, red
        apply_pivot(leave, enter)


# ---------------------------------------------------------------------------
# standard-form assembly


@dataclass
class _Normalized:
    n: int
    rows: list[tuple[list[Fraction], str, Fraction, tuple]]  # (coeffs, rel, rhs, tag)
    matrix: list[list[Fraction]]  # sign-flipped standard-form matrix
    rhs: list[Fraction]  # nonnegative right-hand side
    rho: list[int]  # row sign flips
    art0: int  # first artificial column
    ncols: int


def _normalize(lp: LinearProgram) -> _Normalized:
    n = len(lp.objective)
    rows: list[tuple[list[Fraction], str, Fraction, tuple]] = []
    for i, con in enumerate(lp.constraints):
        rows.append((list(con.coefficients), con.relation, con.rhs, ("user", i)))
    for j in range(n):
        if lp.lower[j] is not None:
            unit = [_F0] * n
            unit[j] = _F1
            rows.append((unit, ">=", lp.lower[j], ("lower", j)))
        if lp.upper[j] is not None:
            unit = [_F0] * n
            unit[j] = _F1
            rows.append((unit, "<=", lp.upper[j], ("upper", j)))
    m = len(rows)
    n_slack = sum(1 for row in rows if row[1] != "=")
    art0 = 2 * n + n_slack
    ncols = art0 + m
    matrix = [[_F0] * ncols for _ in range(m)]
    rhs: list[Fraction] = []
    rho = [1] * m
    slack_col = 2 * n
    for k, (coeffs, rel, b, _tag) in enumerate(rows):
        row = matrix[k]
        for j, c in enumerate(coeffs):
            if c:
                row[j] = c
                row[n + j] = -c
        if rel == "<=":
            row[slack_col] = _F1
            slack_col += 1
        elif rel == ">=":
            row[slack_col] = -_F1
            slack_col += 1
        if b < 0:
            rho[k] = -1
            b = -b
            for j in range(art0):
                if row[j]:
                    row[j] = -row[j]
        row[art0 + k] = _F1
        rhs.append(b)
    return _Normalized(n, rows, matrix, rhs, rho, art0, ncols)


def _split_duals(
    norm: _Normalized, lp: LinearProgram, eta: Sequence[Fraction]
) -> tuple[list[Fraction], list[Fraction], list[Fraction]]:
    """Split per-row multipliers into user-row, lower-bound, upper-bound parts."""
    n = norm.n
    user = [_F0] * len(lp.constraints)
    lower = [_F0] * n
    upper = [_F0] * n
    for k, (_c, _rel, _b, tag) in enumerate(norm.rows):
        kind, idx = tag
        if kind == "user":
            user[idx] = eta[k]
        elif kind == "lower":
            lower[idx] = eta[k]
        else:
            upper[idx] = eta[k]
    return user, lower, upper


def solve(lp: LinearProgram) -> LPOutcome:
    """Exact two-phase simplex; the returned certificate is self-verified."""
    norm = _normalize(lp)
    m = len(norm.rows)
    outcome = _solve_normalized(lp, norm) if m else _solve_unconstrained(lp)
    verify_outcome(lp, outcome)
    for sink in _RECORDERS:
        sink.append((lp, outcome))
    return outcome


def _solve_unconstrained(lp: LinearProgram) -> LPOutcome:
    n = len(lp.objective)
    if any(c != 0 for c in lp.objective):
        ray = tuple(-c for c in lp.objective)
        return LPOutcome(LPStatus.UNBOUNDED, point=tuple([_F0] * n), ray=ray)
    return LPOutcome(
        LPStatus.OPTIMAL,
        value=_F0,
        point=tuple([_F0] * n),
        dual=(),
        reduced_costs=tuple(lp.objective),
    )


def _solve_normalized(lp: LinearProgram, norm: _Normalized) -> LPOutcome:
    m = len(norm.rows)
    n = norm.n
    tableau = [norm.matrix[k][:] + [norm.rhs[k]] for k in range(m)]
    basis = [norm.art0 + k for k in range(m)]

    cost1 = [_F0] * norm.ncols
    for k in range(m):
        cost1[norm.art0 + k] = _F1
    state, _enter, red = _bland_simplex(tableau, basis, cost1, norm.ncols)
    assert state == "optimal"
    phase1_value = sum((cost1[basis[k]] * tableau[k][-1] for k in range(m)), _F0)

    if phase1_value > 0:
        # Reduced cost under artificial column k is 1 - y_k for the flipped
        # system, so the Farkas multipliers fall out of the final cost row.
        eta = [norm.rho[k] * (_F1 - red[norm.art0 + k]) for k in range(m)]
        user, lower, upper = _split_duals(norm, lp, eta)
        return LPOutcome(
            LPStatus.INFEASIBLE,
            farkas=tuple(user),
            farkas_lower=tuple(lower),
            farkas_upper=tuple(upper),
        )

    cost2 = [_F0] * norm.ncols
    for j in range(n):
        cost2[j] = lp.objective[j]
        cost2[n + j] = -lp.objective[j]

    state, enter, red = _bland_simplex(
        tableau, basis, cost2, norm.art0, evict_from=norm.art0
    )
    point = _point_from_basis(norm, tableau, basis)
    if state == "unbounded":
        assert enter is not None
        direction = [_F0] * norm.ncols
        direction[enter] = _F1
        for i, row in enumerate(tableau):
            if row[enter]:
                direction[basis[i]] = -row[enter]
        ray = tuple(direction[j] - direction[n + j] for j in range(n))
        return LPOutcome(LPStatus.UNBOUNDED, point=point, ray=ray)

    value = sum((lp.objective[j] * point[j] for j in range(n)), _F0)
    # Artificial columns carry zero phase-two cost, so their reduced costs
    # are exactly -y for the flipped system.
    eta = [norm.rho[k] * (-red[norm.art0 + k]) for k in range(m)]
    user, lower, upper = _split_duals(norm, lp, eta)
    reduced = _reduced_costs(lp, user)
    return LPOutcome(
        LPStatus.OPTIMAL,
        value=value,
        point=point,
        dual=tuple(user),
        reduced_costs=tuple(reduced),
    )


def _point_from_basis(
    norm: _Normalized, tableau: list[list[Fraction]], basis: list[int]
) -> tuple[Fraction, ...]:
    assignment = [_F0] * norm.ncols
    for k, b in enumerate(basis):
        assignment[b] = tableau[k][-1]
    return tuple(assignment[j] - assignment[norm.n + j] for j in range(norm.n))


def _reduced_costs(lp: LinearProgram, user_dual: Sequence[Fraction]) -> list[Fraction]:
    n = len(lp.objective)
    reduced = list(lp.objective)
    for y, con in zip(user_dual, lp.constraints):
        if y:
            for j in range(n):
                if con.coefficients[j]:
                    reduced[j] -= y * con.coefficients[j]
    return reduced


# ---------------------------------------------------------------------------
# certificate verification


def _check_feasible(lp: LinearProgram, point: Sequence[Fraction]) -> None:
    n = len(lp.objective)
    if len(point) != n:
        raise CertificateError("point length differs from variable count")
    for con in lp.constraints:
        lhs = sum((c * x for c, x in zip(con.coefficients, point)), _F0)
        if con.relation == "=" and lhs != con.rhs:
            raise CertificateError("equality row violated")
        if con.relation == "<=" and lhs > con.rhs:
            raise CertificateError("<= row violated")
        if con.relation == ">=" and lhs < con.rhs:
            raise CertificateError(">= row violated")
    for j in range(n):
        if lp.lower[j] is not None and point[j] < lp.lower[j]:
            raise CertificateError("lower bound violated")
        if lp.upper[j] is not None and point[j] > lp.upper[j]:
            raise CertificateError("upper bound violated")


def verify_optimal(lp: LinearProgram, outcome: LPOutcome) -> None:
    if outcome.point is None or outcome.value is None or outcome.dual is None:
        raise CertificateError("optimal outcome lacks point/value/dual")
    if outcome.reduced_costs is None:
        raise CertificateError("optimal outcome lacks reduced costs")
    _check_feasible(lp, outcome.point)
    n = len(lp.objective)
    value = sum((c * x for c, x in zip(lp.objective, outcome.point)), _F0)
    if value != outcome.value:
        raise CertificateError("reported value differs from objective at point")
    if len(outcome.dual) != len(lp.constraints):
        raise CertificateError("one dual multiplier per constraint required")
    for y, con in zip(outcome.dual, lp.constraints):
        if con.relation == ">=" and y < 0:
            raise CertificateError("dual sign for >= row")
        if con.relation == "<=" and y > 0:
            raise CertificateError("dual sign for <= row")
    expected_reduced = _reduced_costs(lp, outcome.dual)
    if list(outcome.reduced_costs) != expected_reduced:
        raise CertificateError("reduced costs do not match dual multipliers")
    dual_value = sum((y * con.rhs for y, con in zip(outcome.dual, lp.constraints)), _F0)
    for j in range(n):
        r = outcome.reduced_costs[j]
        if r > 0:
            if lp.lower[j] is None:
                raise CertificateError("positive reduced cost on a variable without lower bound")
            dual_value += r * lp.lower[j]
        elif r < 0:
            if lp.upper[j] is None:
                raise CertificateError("negative reduced cost on a variable without upper bound")
            dual_value += r * lp.upper[j]
    if dual_value != outcome.value:
        raise CertificateError("dual objective does not match primal value")


def verify_infeasible(lp: LinearProgram, outcome: LPOutcome) -> None:
    if outcome.farkas is None or outcome.farkas_lower is None or outcome.farkas_upper is None:
        raise CertificateError("infeasible outcome lacks Farkas multipliers")
    n = len(lp.objective)
    if len(outcome.farkas) != len(lp.constraints):
        raise CertificateError("one Farkas multiplier per constraint required")
    for y, con in zip(outcome.farkas, lp.constraints):
        if con.relation == ">=" and y < 0:
            raise CertificateError("Farkas sign for >= row")
        if con.relation == "<=" and y > 0:
            raise CertificateError("Farkas sign for <= row")
    total = _F0
    for j in range(n):
        ylo = outcome.farkas_lower[j]
        yup = outcome.farkas_upper[j]
        if ylo < 0 or (lp.lower[j] is None and ylo != 0):
            raise CertificateError("Farkas lower-bound multiplier invalid")
        if yup > 0 or (lp.upper[j] is None and yup != 0):
            raise CertificateError("Farkas upper-bound multiplier invalid")
        combined = ylo + yup
        for y, con in zip(outcome.farkas, lp.constraints):
            if y and con.coefficients[j]:
                combined += y * con.coefficients[j]
        if combined != 0:
            raise CertificateError("Farkas combination is not the zero functional")
    total = sum((y * con.rhs for y, con in zip(outcome.farkas, lp.constraints)), _F0)
    for j in range(n):
        if outcome.farkas_lower[j]:
            total += outcome.farkas_lower[j] * lp.lower[j]
        if outcome.farkas_upper[j]:
            total += outcome.farkas_upper[j] * lp.upper[j]
    if total <= 0:
        raise CertificateError("Farkas value is not positive")


def verify_unbounded(lp: LinearProgram, outcome: LPOutcome) -> None:
    if outcome.point is None or outcome.ray is None:
        raise CertificateError("unbounded outcome lacks point/ray")
    _check_feasible(lp, outcome.point)
    n = len(lp.objective)
    ray = outcome.ray
    if len(ray) != n:
        raise CertificateError("ray length differs from variable count")
    for con in lp.constraints:
        drift = sum((c * d for c, d in zip(con.coefficients, ray)), _F0)
        if con.relation == "=" and drift != 0:
            raise CertificateError("ray leaves an equality row")
        if con.relation == "<=" and drift > 0:
            raise CertificateError("ray increases a <= row")
        if con.relation == ">=" and drift < 0:
            raise CertificateError("ray decreases a >= row")
    for j in range(n):
        if lp.lower[j] is not None and ray[j] < 0:
            raise CertificateError("ray dives below a lower bound")
        if lp.upper[j] is not None and ray[j] > 0:
            raise CertificateError("ray climbs above an upper bound")
    gain = sum((c * d for c, d in zip(lp.objective, ray)), _F0)
    if gain >= 0:
        raise CertificateError("ray does not improve the objective")


def verify_outcome(lp: LinearProgram, outcome: LPOutcome) -> None:
    if outcome.status is LPStatus.OPTIMAL:
        verify_optimal(lp, outcome)
    elif outcome.status is LPStatus.INFEASIBLE:
        verify_infeasible(lp, outcome)
    else:
        verify_unbounded(lp, outcome)


# ---------------------------------------------------------------------------
# vertex enumeration


def vertex_enumeration(
    constraints: Sequence[LinearConstraint], dimension: int
) -> list[tuple[Fraction, ...]]:
    """All vertices of a bounded H-polytope by basis enumeration.

    Brute force over d-subsets of rows with exact rank checks; intended for
    d <= 8 (the documented scalability boundary).  Raises PreconditionError
    when the region is unbounded; an infeasible region has no vertices.
    """
    if dimension < 1:
        raise ValidationError("dimension must be positive")
    if dimension > VERTEX_DIMENSION_CAP:
        raise PreconditionError(
            f"dimension {dimension} exceeds the vertex-enumeration cap {VERTEX_DIMENSION_CAP}"
        )
    for con in constraints:
        if len(con.coefficients) != dimension:
            raise ValidationError("constraint row length differs from dimension")

    for j in range(dimension):
        for sign in (1, -1):
            objective = [_F0] * dimension
            objective[j] = Fraction(sign)
            probe = solve(LinearProgram.minimize(objective, tuple(constraints)))
            if probe.status is LPStatus.UNBOUNDED:
                raise PreconditionError("unbounded input region")
            if probe.status is LPStatus.INFEASIBLE:
                return []

    vertices: set[tuple[Fraction, ...]] = set()
    rows = [list(con.coefficients) for con in constraints]
    for subset in combinations(range(len(constraints)), dimension):
        sub = [rows[i] for i in subset]
        if linalg.rank(sub) != dimension:
            continue
        point = linalg.solve_exact(sub, [constraints[i].rhs for i in subset])
        if point is None:
            continue
        if _satisfies_all(constraints, point):
            vertices.add(tuple(point))
    return sorted(vertices)


def _satisfies_all(constraints: Sequence[LinearConstraint], point: Sequence[Fraction]) -> bool:
    for con in constraints:
        lhs = sum((c * x for c, x in zip(con.coefficients, point)), _F0)
        if con.relation == "=" and lhs != con.rhs:
            return False
        if con.relation == "<=" and lhs > con.rhs:
            return False
        if con.relation == ">=" and lhs < con.rhs:
            return False
    return True
