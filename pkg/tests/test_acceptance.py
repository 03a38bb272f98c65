"""Acceptance suite: one test per criterion, every equality exact.

Each criterion prints a PASS line once its assertions hold.  LP outcomes
raised by criteria 1-7 are recorded and re-verified wholesale by criterion 8,
so run the module as a whole (it is also covered by a plain ``pytest``).
Expected runtime: well under a minute.

Criterion 1 is a documented expected failure: it asserts an identity between
the domination hull and the bipolar that is false for signed bodies on three
or more atoms (see its docstring and the pinned regression in test_bodies).
"""

import json
import os
import random
import subprocess
import sys
from fractions import Fraction

from riskspan import (
    INF,
    AbsolutelyConvexBody,
    FiniteProbabilitySpace,
    LPStatus,
    RandomVariable,
    attainable_ball,
    bipolar_member,
    compactifying_measure,
    dual_rep_evaluate,
    emm_set,
    evaluate,
    extend,
    fatou_probe,
    gauge,
    member,
    monotone_certifiable,
    nonsolidity_witness,
    record_outcomes,
    solid_check,
    solid_hull,
    solid_hull_member,
    span_basis,
    verify_outcome,
)
from riskspan.risk import PolyhedralRiskFunction
from support import (
    CLI_FIXTURE_COMMANDS,
    binomial_tree,
    random_body,
    random_member,
    random_risk,
    random_rv,
    random_space,
    random_span_point,
    trinomial_tree,
)

RECORDED: list = []

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def _passed(number: int, message: str) -> None:
    print(f"ACCEPTANCE {number}: PASS - {message}")


def _span_one_fixture() -> PolyhedralRiskFunction:
    sp = FiniteProbabilitySpace.uniform(["a", "b"])
    body = AbsolutelyConvexBody.of(sp, [[1, 1]])
    return PolyhedralRiskFunction.of(body, [([1, 1], 0)])


def _settled_sequence(rnd, phi, inside_solid_hull: bool):
    """An admissible 16-step sequence whose tail window sits on its limit."""
    if inside_solid_hull:
        hull = solid_hull(phi.body)
        base = random_member(rnd, hull)
        theta = [Fraction(rnd.randint(-4, 4), 4) for _ in phi.space.atoms]
        limit = RandomVariable(
            phi.space, tuple(t * abs(v) for t, v in zip(theta, base.values))
        )
        drift = random_member(rnd, hull)
        body = hull
    else:
        limit = random_member(rnd, phi.body)
        drift = random_span_point(rnd, phi.body)
        body = phi.body
    sequence = [limit + drift.scaled(Fraction(1, n)) for n in range(1, 9)]
    sequence += [limit] * 8
    bound = max(
        g for g in (gauge(body, f) for f in sequence + [limit]) if g is not INF
    )
    if any(gauge(body, f) is INF for f in sequence):
        return None  # drift escaped the span; caller retries
    return body, sequence, limit, max(bound, Fraction(1))


def test_criterion_01_bipolar_equals_solid_hull():
    """KNOWN RED: the identity this criterion asserts is false as stated.

    The domination hull {f : some g in K has |f| <= |g|} of a signed
    absolutely convex body is not convex on >= 3 atoms, while the bipolar
    always is, so random instances land in the gap (roughly 1% of draws at
    n = 3..4).  The test is kept faithful to the stated criterion and fails
    on the first gap instance; see
    tests/test_bodies.py::TestBipolar::test_bipolar_strictly_contains_domination_hull
    for a pinned counterexample and the decisions ledger for the analysis.
    Both operations are individually certificate-verified; one-sided
    inclusion and the convex-hull identity hold everywhere.
    """
    rnd = random.Random(101)
    with record_outcomes(RECORDED):
        agreements = 0
        hits = 0
        for _ in range(200):
            sp = random_space(rnd, rnd.randint(1, 4))
            K = random_body(rnd, sp, 4)
            if rnd.random() < 0.4:
                f = random_member(rnd, K).scaled(Fraction(rnd.randint(0, 3), 2))
            else:
                f = random_rv(rnd, sp)
            inside, witness = solid_hull_member(K, f)
            assert bipolar_member(K, f) == inside, (
                "bipolar and domination answers differ: the point lies in the "
                "(convex) bipolar but no single member of K dominates it; "
                "known identity gap, see the pinned regression test in "
                "tests/test_bodies.py"
            )
            if inside:
                hits += 1
                assert member(K, witness) and witness.dominates(f)
            agreements += 1
    assert agreements == 200
    assert 0 < hits < 200  # both answers exercised
    _passed(1, f"solid-hull and bipolar membership agree on {agreements} instances")


def test_criterion_02_fenchel_moreau_round_trip():
    rnd = random.Random(202)
    with record_outcomes(RECORDED):
        points = 0
        for _ in range(100):
            sp = random_space(rnd, rnd.randint(1, 5))
            phi = random_risk(rnd, sp, max_generators=5, max_scenarios=5)
            duals = [g for g, _alpha in phi.scenarios]
            for _ in range(10):
                f = random_span_point(rnd, phi.body)
                direct = evaluate(phi, f)
                assert direct is not INF
                assert extend(phi, f, "full") == direct
                assert dual_rep_evaluate(phi, f, duals) == direct
                points += 1
    assert points == 1000
    _passed(2, f"extension and dual representation reproduce evaluate at {points} points")


def test_criterion_03_maximal_extension_properties():
    rnd = random.Random(303)
    with record_outcomes(RECORDED):
        # restriction identity on span(K) points
        restriction_points = 0
        for _ in range(25):
            sp = random_space(rnd, rnd.randint(1, 3))
            phi = random_risk(rnd, sp)
            for _ in range(4):
                f = random_span_point(rnd, phi.body)
                assert extend(phi, f, "full") == evaluate(phi, f)
                restriction_points += 1

        # midpoint convexity along segments in the span of the solid hull
        segments = 0
        nontrivial = 0
        while segments < 100:
            sp = random_space(rnd, rnd.randint(1, 3))
            phi = random_risk(rnd, sp)
            hull = solid_hull(phi.body)
            def hull_point():
                if rnd.random() < 0.5:
                    return random_span_point(rnd, phi.body)
                scale = Fraction(rnd.randint(0, 4), 2)
                return random_member(rnd, hull).scaled(scale)
            x, y = hull_point(), hull_point()
            mid = (x + y).scaled(Fraction(1, 2))
            px, py, pm = (extend(phi, p, "full") for p in (x, y, mid))
            if px is INF or py is INF:
                assert pm <= INF
            else:
                assert 2 * pm <= px + py
                nontrivial += 1
            segments += 1
        assert nontrivial >= 30

        # the extension passes the probe along admissible solid-hull sequences
        probes = 0
        while probes < 20:
            sp = random_space(rnd, rnd.randint(1, 3))
            phi = random_risk(rnd, sp, max_generators=2, max_scenarios=2)
            built = _settled_sequence(rnd, phi, inside_solid_hull=True)
            if built is None:
                continue
            body, sequence, limit, bound = built
            assert fatou_probe(
                lambda f: extend(phi, f, "full"), body, sequence, limit, bound
            )
            probes += 1
    _passed(
        3,
        f"restriction identity at {restriction_points} points, convexity on "
        f"{segments} segments ({nontrivial} finite), {probes} probe sequences",
    )


def test_criterion_04_monotone_extension():
    rnd = random.Random(404)
    with record_outcomes(RECORDED):
        phi = _span_one_fixture()
        sp = phi.space
        assert extend(phi, RandomVariable.of(sp, [1, 0]), "monotone") == 1
        assert extend(phi, RandomVariable.of(sp, [-2, 0]), "monotone") == 0
        assert extend(phi, RandomVariable.of(sp, [1, 0]), "full") is INF

        pairs = 0
        for _ in range(60):
            f = RandomVariable(sp, tuple(Fraction(rnd.randint(-6, 6), 2) for _ in sp.atoms))
            bump = RandomVariable(sp, tuple(Fraction(rnd.randint(0, 4), 2) for _ in sp.atoms))
            assert extend(phi, f, "monotone") <= extend(phi, f + bump, "monotone")
            pairs += 1
        while pairs < 100:
            space = random_space(rnd, rnd.randint(1, 3))
            candidate = random_risk(rnd, space)
            if not monotone_certifiable(candidate):
                continue
            f = random_span_point(rnd, candidate.body)
            bump = RandomVariable(
                space, tuple(Fraction(rnd.randint(0, 3), 2) for _ in space.atoms)
            )
            assert extend(candidate, f, "monotone") <= extend(candidate, f + bump, "monotone")
            pairs += 1
    assert pairs >= 100
    _passed(4, f"worked fixture exact and monotonicity held on {pairs} ordered pairs")


def test_criterion_05_canonical_non_solidity():
    with record_outcomes(RECORDED):
        binom = binomial_tree()
        emm = emm_set(binom)
        assert emm.vertices() == [(Fraction(1, 3), Fraction(2, 3))]
        assert nonsolidity_witness(binom) is None

        tri = trinomial_tree()
        witness = nonsolidity_witness(tri)
        assert witness.event == ("u",)
        assert (witness.q_min, witness.q_max) == (Fraction(0), Fraction(1, 3))
        ball = attainable_ball(tri)
        inside, _g = solid_hull_member(ball, witness.indicator)
        assert inside
        assert not member(ball, witness.indicator)
        solid, counterexample = solid_check(ball)
        assert not solid and counterexample is not None
    _passed(5, "binomial complete, trinomial witness {u} with range [0,1/3], ball not solid")


def test_criterion_06_fatou_negative_control():
    rnd = random.Random(606)
    with record_outcomes(RECORDED):
        sp = FiniteProbabilitySpace.uniform(["a", "b"])
        body = AbsolutelyConvexBody.of(sp, [[1, 1]])
        v = body.generators[0]

        def open_indicator(f):
            return Fraction(0) if gauge(body, f) < 1 else INF

        control = [v.scaled(1 - Fraction(1, n)) for n in range(1, 17)]
        assert not fatou_probe(open_indicator, body, control, v, Fraction(1))

        passes = 0
        while passes < 50:
            space = random_space(rnd, rnd.randint(1, 3))
            phi = random_risk(rnd, space)
            built = _settled_sequence(rnd, phi, inside_solid_hull=False)
            if built is None:
                continue
            probe_body, sequence, limit, bound = built
            assert fatou_probe(
                lambda f: evaluate(phi, f), probe_body, sequence, limit, bound
            )
            passes += 1
    _passed(6, f"open-sublevel control fails, {passes} polyhedral sequences pass")


def test_criterion_07_gauge_axioms():
    rnd = random.Random(707)
    with record_outcomes(RECORDED):
        instances = 0
        for _ in range(200):
            sp = random_space(rnd, rnd.randint(1, 4))
            K = random_body(rnd, sp, 4)
            x = random_member(rnd, K).scaled(Fraction(rnd.randint(0, 4), 2))
            y = random_member(rnd, K).scaled(Fraction(rnd.randint(0, 4), 2))
            alpha = Fraction(rnd.randint(-6, 6), rnd.choice((1, 2, 3)))
            gx, gy = gauge(K, x), gauge(K, y)
            assert gauge(K, x.scaled(alpha)) == abs(alpha) * gx
            assert gauge(K, x + y) <= gx + gy
            probe = random_rv(rnd, sp)
            assert (gauge(K, probe) is not INF) == span_basis(K).contains(probe)
            instances += 1
    assert instances == 200
    _passed(7, f"homogeneity, subadditivity, and span dichotomy on {instances} instances")


def test_criterion_08_lp_certificates():
    # Criteria 1-7 funnel every LP they raise into RECORDED (and solve()
    # self-verifies besides); re-verify them all here from scratch.
    assert RECORDED, "criteria 1-7 must run before the certificate audit"
    counts = {status: 0 for status in LPStatus}
    for lp, outcome in RECORDED:
        verify_outcome(lp, outcome)
        counts[outcome.status] += 1
        if outcome.status is LPStatus.OPTIMAL:
            assert outcome.dual is not None and outcome.reduced_costs is not None
        elif outcome.status is LPStatus.INFEASIBLE:
            assert outcome.farkas is not None
    assert counts[LPStatus.OPTIMAL] > 0
    assert counts[LPStatus.INFEASIBLE] > 0
    _passed(
        8,
        "re-verified {} LP certificates (optimal {}, infeasible {}, unbounded {})".format(
            len(RECORDED),
            counts[LPStatus.OPTIMAL],
            counts[LPStatus.INFEASIBLE],
            counts[LPStatus.UNBOUNDED],
        ),
    )


def test_criterion_09_compactifying_measure():
    rnd = random.Random(909)
    sp = FiniteProbabilitySpace.uniform(["a", "b"])
    nu = compactifying_measure(RandomVariable.of(sp, [2, "1/2"]))
    assert nu.weights == (Fraction(2, 3), Fraction(1, 3))

    produced = 0
    for _ in range(50):
        space = random_space(rnd, rnd.randint(1, 5))
        xi = RandomVariable(
            space,
            tuple(Fraction(rnd.randint(1, 12), rnd.choice((1, 2, 3, 4))) for _ in space.atoms),
        )
        nu = compactifying_measure(xi)
        assert nu.is_probability and nu.is_equivalent
        produced += 1
    assert produced == 50
    _passed(9, f"fixture exact and {produced} random seeds give equivalent probabilities")


def test_criterion_10_cli_determinism():
    env = dict(os.environ)
    compared = 0
    for command, fixture, extra in CLI_FIXTURE_COMMANDS:
        argv = [
            sys.executable,
            "-m",
            "riskspan.cli",
            command,
            "--input",
            os.path.join(FIXTURES, fixture),
            *extra,
        ]
        first = subprocess.run(argv, capture_output=True, env=env)
        second = subprocess.run(argv, capture_output=True, env=env)
        assert first.returncode == 0, first.stderr.decode()
        assert second.returncode == 0
        assert first.stdout == second.stdout
        json.loads(first.stdout.decode())
        compared += 1
    assert compared == len(CLI_FIXTURE_COMMANDS)
    _passed(10, f"{compared} fixture commands produced byte-identical reports twice")
