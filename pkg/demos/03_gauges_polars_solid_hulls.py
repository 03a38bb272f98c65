"""Bodies of claims: gauges, polars, solid hulls, and a convexity surprise.

A body K is the absolutely convex hull of finitely many generators.  Its
gauge measures size in units of K, its polar gauge prices dual directions,
and the solid hull collects everything dominated in absolute value by some
member.  The last section shows why the domination hull and the bipolar are
not the same set.  Run:  python demos/03_gauges_polars_solid_hulls.py
"""

from fractions import Fraction

from riskspan import (
    AbsolutelyConvexBody,
    FiniteProbabilitySpace,
    RandomVariable,
    bipolar_member,
    format_extended,
    gauge,
    member,
    polar_gauge,
    solid_check,
    solid_hull,
    solid_hull_member,
    span_basis,
)

space = FiniteProbabilitySpace.uniform(["a", "b"])
cross = AbsolutelyConvexBody.of(space, [[1, 0], [0, 1]])
diag = AbsolutelyConvexBody.of(space, [[1, 1]])

print("== gauges: size in units of the body ==")
for values in ([1, 1], ["1/2", 0], [3, -3], [1, 0]):
    x = RandomVariable.of(space, values)
    print(
        f"  x={values!s:<14} gauge_cross={format_extended(gauge(cross, x)):<6}"
        f" gauge_diag={format_extended(gauge(diag, x))}"
    )
print("  (inf means the point is outside the span: the diagonal body only")
print("   spans constants, so (1,0) is unreachable at any scale)")

print()
print("== polar gauge: worst absolute pairing over the body ==")
for values in ([2, 2], [4, 0], [1, -1]):
    g = RandomVariable.of(space, values)
    print(f"  g={values!s:<10} polar_gauge over cross = {polar_gauge(cross, g)}")

print()
print("== solid hulls: domination with a witness ==")
f = RandomVariable.of(space, ["1/2", "-1/2"])
inside, witness = solid_hull_member(diag, f)
print(f"  (1/2,-1/2) dominated inside diag body: {inside}, witness {witness.values}")
inside, _w = solid_hull_member(diag, RandomVariable.of(space, ["3/2", 0]))
print(f"  (3/2,0) dominated: {inside}  (no member reaches height 3/2)")

print()
print("== solidity check with a counterexample ==")
solid, counter = solid_check(cross)
print(f"  cross body solid: {solid}")
solid, counter = solid_check(diag)
print(f"  diag body solid: {solid}, counterexample {counter.values}")
print("  the counterexample is dominated by the generator but is not a member")

print()
print("== the domination hull is not convex on 3+ atoms ==")
sp4 = FiniteProbabilitySpace(
    ("w0", "w1", "w2", "w3"),
    (Fraction(3, 10), Fraction(1, 5), Fraction(3, 10), Fraction(1, 5)),
)
K = AbsolutelyConvexBody.of(
    sp4,
    [["4/3", -1, "1/2", 2], [2, -1, 1, 0], ["-1/3", "3/2", -2, "3/2"], [1, 1, 4, "2/3"]],
)
f = RandomVariable.of(sp4, [1, 1, -1, "-4/3"])
dominated, _w = solid_hull_member(K, f)
print(f"  dominated by a single member: {dominated}")
print(f"  inside the bipolar (convex solid hull): {bipolar_member(K, f)}")
print(f"  member of the sign-flip hull body:      {member(solid_hull(K), f)}")
print("  the bipolar is the absolutely convex hull of the dominated set, and")
print("  this point is a mixture of dominated points without being one itself.")
print()
print(f"  span of K has dimension {span_basis(K).dimension};"
      f" its solid hull uses {len(solid_hull(K).generators)} generators")
