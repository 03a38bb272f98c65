"""Finite probability spaces, exact pairings, and the Ky-Fan metric.

Everything is a Fraction: expectations, bilinear pairings, and even the
metric that measures convergence in probability come out as exact rationals.
Run:  python demos/01_spaces_and_convergence.py
"""

from fractions import Fraction

from riskspan import (
    FiniteProbabilitySpace,
    RandomVariable,
    abs_pairing,
    compactifying_measure,
    expectation,
    format_rational,
    ky_fan_distance,
    pairing,
)


def show(label, value):
    print(f"  {label:<42} {value}")


print("== a three-atom market of weather states ==")
space = FiniteProbabilitySpace.of(["rain", "cloud", "sun"], ["1/6", "1/3", "1/2"])
payout = RandomVariable.of(space, [6, 0, -2])
hedge = RandomVariable.of(space, [-3, 1, 1])
show("atoms", space.atoms)
show("weights", [format_rational(w) for w in space.weights])
show("E[payout]", format_rational(expectation(payout, space.mu)))
show("pairing(payout, hedge)", format_rational(pairing(payout, hedge)))
show("abs pairing (polar integrand)", format_rational(abs_pairing(payout, hedge)))

print()
print("== Ky-Fan distance: exact convergence in probability ==")
zero = RandomVariable.zero(space)
for n in (1, 2, 4, 8, 100):
    f_n = payout.scaled(Fraction(1, n))
    show(f"d(payout/{n}, 0)", format_rational(ky_fan_distance(f_n, zero)))
print("  the distance is the attained minimum of {eps : P(|f| > eps) <= eps},")
print("  so a shrinking tail shows up as an exactly shrinking rational.")

print()
print("== turning a strictly positive weight into an equivalent probability ==")
seed = RandomVariable.of(space, [5, "1/3", 2])
nu = compactifying_measure(seed)
show("density seed", [format_rational(v) for v in seed.values])
show("equivalent probability", [format_rational(w) for w in nu.weights])
show("is probability / equivalent", (nu.is_probability, nu.is_equivalent))
