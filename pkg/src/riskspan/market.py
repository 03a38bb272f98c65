"""Finite event-tree markets: martingale measures, attainability, the ball.

Trees have a single root, at least two children per internal node, and all
leaves on the terminal level; leaves are the atoms of the underlying space,
ordered by leaf id.  Prices are already discounted.  The set of equivalent
martingale measures is open; every optimisation here runs over its closure,
which is harmless because constancy of a linear functional over the closure
equals constancy over the (dense) set itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional, Sequence

from . import linalg
from .bodies import AbsolutelyConvexBody
from .errors import PreconditionError, SpaceMismatchError, ValidationError
from .exactlp import (
    VERTEX_DIMENSION_CAP,
    LinearConstraint,
    LinearProgram,
    LPStatus,
    solve,
    vertex_enumeration,
)
from .measure import FiniteProbabilitySpace, Measure, RandomVariable
from .rational import parse_rational

_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass(frozen=True)
class MarketNode:
    node_id: str
    parent: Optional[str]
    time: int
    prices: tuple[Fraction, ...]


class MarketTree:
    """Immutable finite event tree with adapted asset prices."""

    def __init__(self, nodes: Sequence[MarketNode], leaf_weights: Mapping[str, Fraction]):
        if not nodes:
            raise ValidationError("a market tree needs at least one node")
        by_id: dict[str, MarketNode] = {}
        for node in nodes:
            if node.node_id in by_id:
                raise ValidationError(f"duplicate node id {node.node_id!r}")
            by_id[node.node_id] = node
        roots = [n for n in nodes if n.parent is None]
        if len(roots) != 1:
            raise ValidationError("exactly one root node required")
        root = roots[0]
        if root.time != 0:
            raise ValidationError("the root must sit at time 0")
        children: dict[str, list[str]] = {n.node_id: [] for n in nodes}
        for node in nodes:
            if node.parent is not None:
                if node.parent not in by_id:
                    raise ValidationError(f"unknown parent {node.parent!r}")
                if node.time != by_id[node.parent].time + 1:
                    raise ValidationError("child time must be parent time + 1")
                children[node.parent].append(node.node_id)
        asset_count = len(root.prices)
        if asset_count < 1:
            raise ValidationError("at least one asset price per node required")
        for node in nodes:
            if len(node.prices) != asset_count:
                raise ValidationError("all nodes must price the same number of assets")
        leaf_ids = sorted(nid for nid, kids in children.items() if not kids)
        internal = [nid for nid, kids in children.items() if kids]
        for nid in internal:
            if len(children[nid]) < 2:
                raise ValidationError(f"internal node {nid!r} needs at least 2 children")
        terminal = max(n.time for n in nodes)
        for nid in leaf_ids:
            if by_id[nid].time != terminal:
                raise ValidationError("every leaf must sit at the terminal level")
        if set(leaf_weights) != set(leaf_ids):
            raise ValidationError("leaf weights must cover exactly the leaves")
        weights = tuple(leaf_weights[nid] for nid in leaf_ids)
        space = FiniteProbabilitySpace(tuple(leaf_ids), weights)

        self._by_id = by_id
        self._children = {nid: tuple(kids) for nid, kids in children.items()}
        self.nodes = tuple(nodes)
        self.root = root.node_id
        self.asset_count = asset_count
        self.terminal_time = terminal
        self.space = space
        self._leaves_below_cache: dict[str, tuple[str, ...]] = {}

    def node(self, node_id: str) -> MarketNode:
        try:
            return self._by_id[node_id]
        except KeyError:
            raise ValidationError(f"unknown node id {node_id!r}") from None

    def children(self, node_id: str) -> tuple[str, ...]:
        return self._children[node_id]

    def internal_nodes(self) -> list[str]:
        ids = [nid for nid, kids in self._children.items() if kids]
        return sorted(ids, key=lambda nid: (self._by_id[nid].time, nid))

    def leaves_below(self, node_id: str) -> tuple[str, ...]:
        cached = self._leaves_below_cache.get(node_id)
        if cached is not None:
            return cached
        kids = self._children[node_id]
        if not kids:
            result: tuple[str, ...] = (node_id,)
        else:
            collected: list[str] = []
            for kid in kids:
                collected.extend(self.leaves_below(kid))
            result = tuple(collected)
        self._leaves_below_cache[node_id] = result
        return result


@dataclass(frozen=True)
class StrategyBasis:
    """Terminal gains of the one-node-one-asset strategies plus the constant."""

    space: FiniteProbabilitySpace
    elements: tuple[RandomVariable, ...]
    labels: tuple[str, ...]


@dataclass(frozen=True)
class MartingaleMeasureSet:
    """Closure of the martingale measures, as exact equality rows over leaves."""

    space: FiniteProbabilitySpace
    rows: tuple[tuple[Fraction, ...], ...]

    def lp_constraints(self) -> list[LinearConstraint]:
        n = self.space.size
        out = [LinearConstraint(tuple([_F1] * n), "=", _F1)]
        for row in self.rows:
            out.append(LinearConstraint(row, "=", _F0))
        return out

    def contains(self, measure: Measure) -> bool:
        if measure.space != self.space:
            raise SpaceMismatchError("measure lives on a different space")
        if not measure.is_probability:
            return False
        for row in self.rows:
            if sum((c * q for c, q in zip(row, measure.weights)), _F0) != 0:
                return False
        return True

    def bounds(self, payoff: RandomVariable) -> tuple[Fraction, Fraction, Measure, Measure]:
        """Exact min and max of the payoff expectation over the closure."""
        if payoff.space != self.space:
            raise SpaceMismatchError("payoff lives on a different space")
        n = self.space.size
        rows = self.lp_constraints()
        lo = solve(LinearProgram.minimize(list(payoff.values), rows, lower=[_F0] * n))
        hi = solve(LinearProgram.minimize([-v for v in payoff.values], rows, lower=[_F0] * n))
        if lo.status is not LPStatus.OPTIMAL or hi.status is not LPStatus.OPTIMAL:
            raise PreconditionError("empty martingale measure set")
        return (
            lo.value,
            -hi.value,
            Measure(self.space, lo.point),
            Measure(self.space, hi.point),
        )

    def is_singleton(self) -> bool:
        for i in range(self.space.size):
            probe = RandomVariable.indicator(self.space, [self.space.atoms[i]])
            low, high, _m1, _m2 = self.bounds(probe)
            if low != high:
                return False
        return True

    def vertices(self) -> list[tuple[Fraction, ...]]:
        n = self.space.size
        rows = self.lp_constraints()
        for i in range(n):
            unit = [_F0] * n
            unit[i] = _F1
            rows.append(LinearConstraint(tuple(unit), ">=", _F0))
        return vertex_enumeration(rows, n)

    def affine_dimension(self) -> int:
        points = self.vertices()
        if not points:
            return -1
        origin = points[0]
        diffs = [[p[i] - origin[i] for i in range(len(origin))] for p in points[1:]]
        return linalg.rank(diffs) if diffs else 0


@dataclass(frozen=True)
class Witness:
    """A non-solidity witness: an event whose measure splits the EMM set."""

    event: tuple[str, ...]
    indicator: RandomVariable
    q_min: Fraction
    q_max: Fraction
    measure_min: Measure
    measure_max: Measure


def emm_set(tree: MarketTree) -> MartingaleMeasureSet:
    """One equality row per internal node per asset, in leaf-mass variables."""
    space = tree.space
    rows: list[tuple[Fraction, ...]] = []
    for nid in tree.internal_nodes():
        node = tree.node(nid)
        for k in range(tree.asset_count):
            coeffs = [_F0] * space.size
            for kid in tree.children(nid):
                move = tree.node(kid).prices[k] - node.prices[k]
                if move == 0:
                    continue
                for leaf in tree.leaves_below(kid):
                    coeffs[space.index(leaf)] = move
            rows.append(tuple(coeffs))
    return MartingaleMeasureSet(space, tuple(rows))


def viability_certificate(tree: MarketTree) -> tuple[Fraction, Optional[Measure]]:
    """max t subject to the EMM equalities and Q_i >= t; t > 0 iff viable.

    Returns the optimal slack and the maximising measure (None when even the
    closure is empty); the measure certifies viability whenever slack > 0.
    """
    emm = emm_set(tree)
    n = tree.space.size
    rows = []
    for con in emm.lp_constraints():
        rows.append(LinearConstraint(con.coefficients + (_F0,), con.relation, con.rhs))
    for i in range(n):
        coeffs = [_F0] * (n + 1)
        coeffs[i] = _F1
        coeffs[n] = -_F1
        rows.append(LinearConstraint(tuple(coeffs), ">=", _F0))
    objective = [_F0] * n + [-_F1]
    lp = LinearProgram.minimize(objective, rows, lower=[_F0] * n + [_F0])
    outcome = solve(lp)
    if outcome.status is LPStatus.INFEASIBLE:
        return _F0, None
    assert outcome.status is LPStatus.OPTIMAL
    slack = -outcome.value
    measure = Measure(tree.space, outcome.point[:n])
    return slack, measure


def viability(tree: MarketTree) -> bool:
    """Whether an equivalent martingale measure exists (all leaf masses > 0)."""
    slack, _measure = viability_certificate(tree)
    return slack > 0


def _require_viable(tree: MarketTree) -> None:
    if not viability(tree):
        raise PreconditionError("market is not viable: no equivalent martingale measure")


def strategy_basis(tree: MarketTree) -> StrategyBasis:
    """Constant 1 plus the terminal gain of each elementary one-step strategy."""
    space = tree.space
    elements = [RandomVariable.constant(space, 1)]
    labels = ["constant"]
    for nid in tree.internal_nodes():
        node = tree.node(nid)
        for k in range(tree.asset_count):
            values = [_F0] * space.size
            for kid in tree.children(nid):
                move = tree.node(kid).prices[k] - node.prices[k]
                if move == 0:
                    continue
                for leaf in tree.leaves_below(kid):
                    values[space.index(leaf)] = move
            elements.append(RandomVariable(space, tuple(values)))
            labels.append(f"{nid}/asset{k}")
    return StrategyBasis(space, tuple(elements), tuple(labels))


def attainable(
    tree: MarketTree, xi: RandomVariable
) -> tuple[bool, Optional[tuple[Fraction, dict[str, tuple[Fraction, ...]]]]]:
    """Attainability via matching expectation bounds; hedge by backward solve.

    Returns (True, (a, hedge)) with xi = a + accumulated hedge gains exactly,
    or (False, None).  The hedge maps each internal node to its asset vector.
    """
    if xi.space != tree.space:
        raise SpaceMismatchError("claim lives on a different space")
    _require_viable(tree)
    low, high, _m1, _m2 = emm_set(tree).bounds(xi)
    if low != high:
        return False, None

    values: dict[str, Fraction] = {
        leaf: xi.values[tree.space.index(leaf)] for leaf in tree.space.atoms
    }
    hedge: dict[str, tuple[Fraction, ...]] = {}
    for nid in reversed(tree.internal_nodes()):
        node = tree.node(nid)
        rows = []
        rhs = []
        for kid in tree.children(nid):
            kid_node = tree.node(kid)
            moves = [kid_node.prices[k] - node.prices[k] for k in range(tree.asset_count)]
            rows.append([_F1] + moves)
            rhs.append(values[kid])
        solution = linalg.solve_exact(rows, rhs)
        if solution is None:
            raise AssertionError("expectation bounds matched but replication failed")
        values[nid] = solution[0]
        hedge[nid] = tuple(solution[1:])
    return True, (values[tree.root], hedge)


def replicates(
    tree: MarketTree,
    initial: Fraction,
    hedge: Mapping[str, Sequence[Fraction]],
    xi: RandomVariable,
) -> bool:
    """Exact check that the strategy reproduces the claim leaf by leaf."""
    value: dict[str, Fraction] = {tree.root: initial}
    order = sorted(tree.nodes, key=lambda nd: (nd.time, nd.node_id))
    for node in order:
        if node.parent is None:
            continue
        parent = tree.node(node.parent)
        holding = hedge[parent.node_id]
        gain = sum(
            (Fraction(h) * (node.prices[k] - parent.prices[k]) for k, h in enumerate(holding)),
            _F0,
        )
        value[node.node_id] = value[parent.node_id] + gain
    return all(
        value[leaf] == xi.values[tree.space.index(leaf)] for leaf in tree.space.atoms
    )


def attainable_ball(tree: MarketTree) -> AbsolutelyConvexBody:
    """The attainable claims with sup-norm at most 1, in generator form.

    Intersects span(strategy gains + constant) with the unit box in span
    coordinates and converts to generators by vertex enumeration; raises
    when the span dimension exceeds the enumeration cap.
    """
    _require_viable(tree)
    basis_rows = [list(e.values) for e in strategy_basis(tree).elements]
    kept = linalg.independent_rows(basis_rows)
    basis = [basis_rows[i] for i in kept]
    dim = len(basis)
    if dim > VERTEX_DIMENSION_CAP:
        raise PreconditionError(
            f"span dimension {dim} exceeds the vertex-enumeration cap {VERTEX_DIMENSION_CAP}"
        )
    n = tree.space.size
    rows = []
    for i in range(n):
        coeffs = tuple(basis[b][i] for b in range(dim))
        rows.append(LinearConstraint(coeffs, "<=", _F1))
        rows.append(LinearConstraint(tuple(-c for c in coeffs), "<=", _F1))
    generators: list[RandomVariable] = []
    seen: set[tuple[Fraction, ...]] = set()
    for vertex in vertex_enumeration(rows, dim):
        values = tuple(
            sum((vertex[b] * basis[b][i] for b in range(dim)), _F0) for i in range(n)
        )
        # vertices come in +/- pairs; keep the one whose leading entry is positive
        first = next((v for v in values if v != 0), _F0)
        if first < 0:
            values = tuple(-v for v in values)
        if values in seen:
            continue
        seen.add(values)
        generators.append(RandomVariable(tree.space, values))
    return AbsolutelyConvexBody(tree.space, tuple(generators))


def nonsolidity_witness(tree: MarketTree) -> Optional[Witness]:
    """First event whose EMM mass is non-constant; None iff market complete.

    Scans singletons first, then larger events, in atom order; the two
    extremal measures certify the split.
    """
    _require_viable(tree)
    emm = emm_set(tree)
    space = tree.space
    n = space.size
    for size in range(1, n):
        for combo in combinations(range(n), size):
            event = tuple(space.atoms[i] for i in combo)
            indicator = RandomVariable.indicator(space, event)
            low, high, m_low, m_high = emm.bounds(indicator)
            if low != high:
                return Witness(event, indicator, low, high, m_low, m_high)
    return None


def market_tree_from_rows(
    nodes: Sequence[tuple[str, Optional[str], int, Sequence[object]]],
    leaf_weights: Mapping[str, object],
) -> MarketTree:
    built = [
        MarketNode(nid, parent, time, tuple(parse_rational(p) for p in prices))
        for nid, parent, time, prices in nodes
    ]
    weights = {nid: parse_rational(w) for nid, w in leaf_weights.items()}
    return MarketTree(built, weights)
