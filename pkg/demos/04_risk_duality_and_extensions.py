"""Polyhedral risk functions: conjugates, dual representations, extensions.

A risk function is a finite max of priced scenarios on the span of a body.
Its conjugate prices dual directions by the cheapest matching scenario
mixture, the dual representation rebuilds the function from affine
minorants, and two extension operators push it beyond the span: the maximal
one explodes off the span, the monotone one stays finite and ordered.
Run:  python demos/04_risk_duality_and_extensions.py
"""

from fractions import Fraction

from riskspan import (
    INF,
    AbsolutelyConvexBody,
    FiniteProbabilitySpace,
    RandomVariable,
    conjugate,
    dual_rep_evaluate,
    evaluate,
    extend,
    fatou_probe,
    format_extended,
    gauge,
    monotone_certifiable,
)
from riskspan.risk import PolyhedralRiskFunction

space = FiniteProbabilitySpace.uniform(["up", "dn"])

print("== worst-case pricing over two scenarios ==")
cross = AbsolutelyConvexBody.of(space, [[1, 0], [0, 1]])
phi = PolyhedralRiskFunction.of(cross, [([2, 0], 0), ([0, 2], 0)])
for values in ([1, 0], [0, 0], [-1, 3], ["1/2", "1/2"]):
    f = RandomVariable.of(space, values)
    print(f"  phi({values!s:<14}) = {format_extended(evaluate(phi, f))}")

print()
print("== the conjugate prices dual directions ==")
for values in ([2, 0], [1, 1], [3, 0]):
    g = RandomVariable.of(space, values)
    print(f"  phi*({values!s:<8}) = {format_extended(conjugate(phi, g))}")
print("  (inf: the direction is outside the scenario mixtures on the span)")

print()
print("== dual representation rebuilds the primal exactly ==")
duals = [g for g, _alpha in phi.scenarios]
f = RandomVariable.of(space, [-1, 3])
print(f"  sup over scenarios of pairing - penalty: {dual_rep_evaluate(phi, f, duals)}")
print(f"  direct evaluation:                        {evaluate(phi, f)}")

print()
print("== extending from the span of a single constant ==")
one_body = AbsolutelyConvexBody.of(space, [[1, 1]])
psi = PolyhedralRiskFunction.of(one_body, [([1, 1], 0)])
print("  base function: psi(a * ones) = a, defined on constants only")
cases = [([1, 1], "full"), ([1, 0], "full"), ([1, 0], "monotone"), ([-2, 0], "monotone")]
for values, mode in cases:
    f = RandomVariable.of(space, values)
    print(f"  extend(psi, {values!s:<9}, {mode:<9}) = {format_extended(extend(psi, f, mode))}")
print("  the maximal extension explodes off the span along (1,-1); the")
print("  monotone one is the worst-case mean over nonnegative densities.")
print(f"  monotone certifiable: {monotone_certifiable(psi)}")

print()
print("== the lower-semicontinuity probe and its negative control ==")
v = one_body.generators[0]
seq = [v.scaled(Fraction(1, 2) + Fraction(1, 2 * n)) for n in range(1, 9)]
seq += [v.scaled(Fraction(1, 2))] * 8
limit = v.scaled(Fraction(1, 2))
ok = fatou_probe(lambda x: evaluate(psi, x), one_body, seq, limit, Fraction(2))
print(f"  max-affine function along a settling sequence: passes = {ok}")


def open_indicator(x):
    return Fraction(0) if gauge(one_body, x) < 1 else INF


control = [v.scaled(1 - Fraction(1, n)) for n in range(1, 17)]
bad = fatou_probe(open_indicator, one_body, control, v, Fraction(1))
print(f"  open-sublevel indicator along (1-1/n)v -> v:   passes = {bad}")
print("  the open sublevel set is not closed in probability, and the probe sees it.")
