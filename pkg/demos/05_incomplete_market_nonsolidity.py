"""Incomplete markets: the ball of attainable claims fails to be solid.

A one-step binomial market is complete: one martingale measure, every claim
replicable, and the attainable ball is the whole sup-norm ball (solid).
Adding a middle state breaks completeness; the martingale measures form a
segment, indicator claims become unattainable, and the attainable ball is a
planar slice of the sup-norm ball that contains the constant 1 but not the
indicator it dominates.  Run:  python demos/05_incomplete_market_nonsolidity.py
"""

from fractions import Fraction

from riskspan import (
    RandomVariable,
    attainable,
    attainable_ball,
    emm_set,
    member,
    nonsolidity_witness,
    replicates,
    solid_check,
    solid_hull_member,
    viability,
)
from riskspan.market import MarketNode, MarketTree


def build(prices_by_leaf):
    nodes = [MarketNode("root", None, 0, (Fraction(1),))]
    weight = Fraction(1, len(prices_by_leaf))
    weights = {}
    for leaf, price in prices_by_leaf.items():
        nodes.append(MarketNode(leaf, "root", 1, (Fraction(price),)))
        weights[leaf] = weight
    return MarketTree(nodes, weights)


binomial = build({"u": 2, "w": Fraction(1, 2)})
trinomial = build({"u": 2, "v": 1, "w": Fraction(1, 2)})

print("== binomial market: complete ==")
print("  viable:", viability(binomial))
print("  martingale measures:", emm_set(binomial).vertices())
xi = RandomVariable.of(binomial.space, [2, "1/2"])
ok, (initial, hedge) = attainable(binomial, xi)
print(f"  replicating the terminal price: capital {initial}, hedge {hedge}")
print("  replication exact:", replicates(binomial, initial, hedge, xi))
ball = attainable_ball(binomial)
print("  attainable ball generators:", [g.values for g in ball.generators])
print("  ball solid:", solid_check(ball)[0])
print("  witness of non-solidity:", nonsolidity_witness(binomial))

print()
print("== trinomial market: incomplete ==")
print("  viable:", viability(trinomial))
print("  martingale measures form the segment:", emm_set(trinomial).vertices())
indicator = RandomVariable.indicator(trinomial.space, ["u"])
ok, _detail = attainable(trinomial, indicator)
print("  indicator of the up state attainable:", ok)
witness = nonsolidity_witness(trinomial)
print(
    f"  witness event {witness.event}: Q(A) ranges over"
    f" [{witness.q_min}, {witness.q_max}]"
)
print("  extremal measures:", witness.measure_min.weights, witness.measure_max.weights)

ball = attainable_ball(trinomial)
print("  attainable ball generators:", [g.values for g in ball.generators])
solid, counter = solid_check(ball)
print("  ball solid:", solid, " counterexample:", counter.values if counter else None)
inside, dominator = solid_hull_member(ball, witness.indicator)
print(
    "  indicator dominated by the attainable claim", dominator.values,
    "but member of the ball:", member(ball, witness.indicator),
)
print()
print("  the constant 1 is attainable and dominates the indicator, yet the")
print("  indicator is not attainable: the attainable ball cannot be solid in")
print("  any incomplete market, which is what the witness certifies.")
