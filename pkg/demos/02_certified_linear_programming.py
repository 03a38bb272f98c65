"""The exact LP engine: every answer ships with a checkable certificate.

Optimal outcomes carry dual multipliers whose objective matches the primal
value exactly; infeasible outcomes carry a Farkas combination proving the
contradiction; unbounded outcomes carry a feasible point and an improving
ray.  Run:  python demos/02_certified_linear_programming.py
"""

from riskspan import (
    LinearConstraint,
    LinearProgram,
    solve,
    verify_outcome,
    vertex_enumeration,
)

print("== a tiny diet-style program ==")
lp = LinearProgram.minimize(
    [3, 2],
    (
        LinearConstraint.of([2, 1], ">=", 4),
        LinearConstraint.of([1, 3], ">=", 6),
    ),
    lower=[0, 0],
)
out = solve(lp)
print("  status:", out.status.value)
print("  point:", out.point, " value:", out.value)
print("  dual multipliers:", out.dual)
dual_value = sum(y * c.rhs for y, c in zip(out.dual, lp.constraints))
print("  dual objective:", dual_value, "(matches the primal value exactly)")
verify_outcome(lp, out)
print("  certificate re-verified from scratch")

print()
print("== an infeasible system and its Farkas certificate ==")
lp = LinearProgram.minimize(
    [0, 0],
    (
        LinearConstraint.of([1, 1], ">=", 3),
        LinearConstraint.of([1, 1], "<=", 1),
    ),
)
out = solve(lp)
print("  status:", out.status.value)
print("  row multipliers:", out.farkas)
combo = [
    sum(y * c.coefficients[j] for y, c in zip(out.farkas, lp.constraints))
    for j in range(2)
]
value = sum(y * c.rhs for y, c in zip(out.farkas, lp.constraints))
print("  combined row:", combo, " combined rhs:", value, "> 0  ->  contradiction")

print()
print("== an unbounded direction ==")
lp = LinearProgram.minimize([-1, 0], (LinearConstraint.of([0, 1], "=", 2),), lower=[0, None])
out = solve(lp)
print("  status:", out.status.value)
print("  feasible point:", out.point, " improving ray:", out.ray)

print()
print("== vertex enumeration of a diamond ==")
rows = [
    LinearConstraint.of([1, 1], "<=", 1),
    LinearConstraint.of([1, 1], ">=", -1),
    LinearConstraint.of([1, -1], "<=", 1),
    LinearConstraint.of([1, -1], ">=", -1),
]
for vertex in vertex_enumeration(rows, 2):
    print("  vertex:", vertex)
