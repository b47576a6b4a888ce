"""Acceptance gate: every shipped guarantee, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines; each
criterion is independent and fails loudly with the offending datum.
"""

import contextlib
import json
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from lagmatch.cli import _parse_descriptor, _parse_spinc_entries
from lagmatch.czindex import conley_zehnder, direct_sum
from lagmatch.exterior import (
    LatticeProjection,
    SpMatrix,
    SymplecticLattice,
    theta_divided,
    transvection,
    wedge,
)
from lagmatch.exterior import ExtElement, contract
from lagmatch.fixtures import FIXTURES
from lagmatch.spinc import (
    admissibility,
    common_fiber_pairing,
    formal_dimension,
    nu_function,
    taubes_convert,
)
from lagmatch.symprod import (
    SymClass,
    basis,
    cap_U_classical,
    cap_U_quantum_g0,
    cap_ext,
    poincare_polynomial_dimension,
    restriction_classes,
)
from lagmatch.tqft import (
    ElementaryMove,
    MorseCycle,
    alexander_cycle_value,
    alexander_fibered,
    connected_sum_invariant,
    down_map,
    evaluate_cycle,
    up_map,
    weighted_exterior_dimension,
    worked_example,
)


@contextlib.contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL")
        raise
    print(f"ACCEPTANCE {name}: PASS")


def random_primitive(rng, rank, spread=3):
    while True:
        v = [rng.randint(-spread, spread) for _ in range(rank)]
        if any(v) and math.gcd(*v) == 1:
            return tuple(v)


def random_sp(rng, lattice, length=3):
    m = SpMatrix.identity(lattice)
    if lattice.rank == 0:
        return m
    for _ in range(length):
        v = random_primitive(rng, lattice.rank, spread=2)
        m = m @ transvection(lattice, v, rng.choice([-1, 1]))
    return m


def fixture_descriptor(name):
    doc = FIXTURES[name]
    desc = _parse_descriptor(doc["fibration"])
    entries = _parse_spinc_entries(doc, desc)
    return desc, entries


def dim_report(spinc, desc):
    d = formal_dimension(spinc, desc)
    two_d = common_fiber_pairing(spinc, desc)
    chis = [sum(2 - 2 * c.genus for c in r.fibers) for r in desc.regions]
    nu = nu_function(chis, two_d)
    regime = admissibility(spinc, desc).regime
    return d, two_d, nu, regime


def test_dimension_goldens_and_speed():
    with criterion("formal-dimension goldens (1, 4, product grid) under 1 ms"):
        torus, torus_entries = fixture_descriptor("torus-section-sum")
        klein, klein_entries = fixture_descriptor("sphere-double-section")
        prod, prod_entries = fixture_descriptor("s2xs2-product")

        assert dim_report(torus_entries[0][0], torus)[0] == 1
        assert dim_report(torus_entries[0][0], torus)[3] == "monotone"
        assert dim_report(klein_entries[0][0], klein)[0] == 4
        assert prod_entries[0][1] == (1, 1)
        assert dim_report(prod_entries[0][0], prod)[0] == 6

        for m in range(-2, 5):
            for n in range(-2, 5):
                spinc = taubes_convert((m, n), prod)
                assert formal_dimension(spinc, prod) == 2 * (m * n + m + n), (m, n)

        # timing after warmup
        jobs = [(torus_entries[0][0], torus), (klein_entries[0][0], klein),
                (prod_entries[0][0], prod)]
        for spinc, desc in jobs:
            dim_report(spinc, desc)
        for spinc, desc in jobs:
            t0 = time.perf_counter()
            reps = 50
            for _ in range(reps):
                dim_report(spinc, desc)
            per_call = (time.perf_counter() - t0) / reps
            assert per_call < 1e-3, f"{per_call * 1e3:.3f} ms per dim call"


def test_worked_examples_golden_and_speed():
    with criterion("worked examples: unit values, gates, under 10 ms"):
        worked_example("s2xs2", 4, 4)  # warmup
        worked_example("s1s3-sum", 3, 4)
        for m in range(5):
            for n in range(5):
                t0 = time.perf_counter()
                report = worked_example("s2xs2", m, n)
                elapsed = time.perf_counter() - t0
                assert report.value == 1 and report.monomial == f"U^{n}"
                assert elapsed < 1e-2, (m, n, elapsed)
        assert worked_example("s2xs2", -1, 3).value == 0
        assert worked_example("s2xs2", 2, -1).value == 0
        for m in range(4):
            for n in range(1, 5):
                t0 = time.perf_counter()
                report = worked_example("s1s3-sum", m, n)
                elapsed = time.perf_counter() - t0
                assert abs(report.value) == 1
                assert report.monomial == f"U^{n - 1} lambda"
                assert elapsed < 1e-2, (m, n, elapsed)
        assert worked_example("s1s3-sum", -2, 3).value == 0


def test_separating_cycles_vanish():
    with criterion("randomized separating-circle cycles evaluate to exactly 0"):
        rng = random.Random(60)
        cases = 0
        for _ in range(6):
            g = rng.randint(1, 2)
            n0 = rng.randint(1, 3)
            zero = (0,) * (2 * g)
            moves = [
                ElementaryMove.twist(random_sp(rng, SymplecticLattice(g), length=2)),
                ElementaryMove.down(zero),
                ElementaryMove.up(random_primitive(rng, 2 * g)),
            ]
            cycle = MorseCycle([g, g, g - 1], moves, n0)
            report = connected_sum_invariant(cycle)
            assert report.value == 0
            assert report.move_index == 1
            cases += 1
        # one bigger fiber for good measure
        cycle = MorseCycle(
            [3, 2],
            [ElementaryMove.down((0,) * 6), ElementaryMove.up(random_primitive(rng, 6))],
            1,
        )
        assert connected_sum_invariant(cycle).value == 0
        cases += 1
        assert cases >= 5


def test_fibered_crosscheck_grid():
    with criterion("single-twist evaluation equals the weighted coefficient sum"):
        rng = random.Random(61)
        t0 = time.perf_counter()
        for g in (0, 1, 2):
            lat = SymplecticLattice(g)
            for n in (0, 1, 2):
                for _ in range(10):
                    m = random_sp(rng, lat)
                    cycle = MorseCycle([g], [ElementaryMove.twist(m)], n)
                    lhs = evaluate_cycle(cycle)
                    rhs = alexander_cycle_value(alexander_fibered(m), n, g)
                    assert lhs == rhs, (g, n, m.rows)
        assert time.perf_counter() - t0 < 5.0


def test_state_space_dimensions():
    with criterion("weighted dimension = monomial count = graded dimension"):
        for g in range(4):
            lat = SymplecticLattice(g)
            for n in range(7):
                count = len(basis(n, lat))
                assert count == poincare_polynomial_dimension(n, g)
                assert count == weighted_exterior_dimension(g - 1 - n, g)
                if n >= 2 * g - 1:
                    assert count == (n - g + 1) * 4**g


def test_restriction_class_identity():
    with criterion("restriction classes and their averaging identity"):
        for n in range(9):
            for g in range(9):
                r = restriction_classes(n, g)
                assert tuple(r.diagonal) == (2 * n, -2)
                assert tuple(r.canonical) == (2 - 2 * g, 0)
                assert tuple(r.macdonald) == (n + 1 - g, -1)
                assert 2 * r.macdonald.eta == r.diagonal.eta + r.canonical.eta
                assert 2 * r.macdonald.theta == r.diagonal.theta + r.canonical.theta


def test_algebraic_property_suites():
    with criterion("randomized algebraic property suites (>= 100 cases each)"):
        # 1. graded Leibniz rule for contraction, 120 cases
        rng = random.Random(62)
        lat3 = SymplecticLattice(3)
        kill = LatticeProjection.kill_first_pair(lat3)
        for _ in range(120):
            p, q = rng.randint(0, 3), rng.randint(0, 3)

            def rand_homog(k):
                terms = {}
                for _ in range(rng.randint(1, 3)):
                    subset = tuple(sorted(rng.sample(range(6), k)))
                    terms[subset] = Fraction(rng.randint(-3, 3))
                return ExtElement(lat3, terms)

            x, y = rand_homog(p), rand_homog(q)
            circle = random_primitive(rng, 6)
            lhs = contract(circle, wedge(x, y), kill)
            sign = -1 if p % 2 else 1
            rhs = wedge(contract(circle, x, kill), kill.map_element(y)) + sign * wedge(
                kill.map_element(x), contract(circle, y, kill)
            )
            assert lhs == rhs

        # 2. surgery down after surgery up is the zero map, >= 100 cases
        cases = 0
        while cases < 100:
            g = rng.randint(0, 1) if cases % 4 else 2
            n = rng.randint(0, 1)
            target = SymplecticLattice(g + 1)
            circle = random_primitive(rng, target.rank)
            up = up_map(circle, n, SymplecticLattice(g))
            down = down_map(circle, n + 1, target)
            for key in up.src.monomials:
                assert down.apply(up.apply(up.src.element(key))).is_zero()
                cases += 1

        # 3. down-surgery commutes with the classical U-action, >= 100 cases
        lat5 = SymplecticLattice(5)
        cases = 0
        while cases < 100:
            circle = random_primitive(rng, 10)
            down = down_map(circle, 2, lat5)
            for (i, subset) in basis(2, lat5):
                if i + len(subset) > 1:
                    continue
                x = SymClass.monomial(2, lat5, i, subset)
                assert down.apply(cap_U_classical(x)).terms == cap_U_classical(
                    down.apply(x)
                ).terms
                cases += 1

        # 4. down-surgery commutes with capping by the invariant 2-form
        lat2, lat1 = SymplecticLattice(2), SymplecticLattice(1)
        th2, th1 = theta_divided(1, lat2), theta_divided(1, lat1)
        cases = 0
        while cases < 100:
            circle = random_primitive(rng, 4)
            down = down_map(circle, 4, lat2)
            for (i, subset) in basis(4, lat2):
                if i + len(subset) > 2:
                    continue
                x = SymClass.monomial(4, lat2, i, subset)
                assert down.apply(cap_ext(th2, x)).terms == cap_ext(
                    th1, down.apply(x)
                ).terms
                cases += 1

        # 5. graded cyclicity of the evaluation, >= 100 rotations
        lat1, lat2 = SymplecticLattice(1), SymplecticLattice(2)
        comparisons = 0
        while comparisons < 100:
            moves = [
                ElementaryMove.down(random_primitive(rng, 4)),
                ElementaryMove.twist(random_sp(rng, lat1, length=2)),
                ElementaryMove.up(random_primitive(rng, 4)),
                ElementaryMove.twist(random_sp(rng, lat2, length=2)),
            ]
            fibers = [2, 1, 1, 2]
            n0 = rng.randint(1, 2)
            base = evaluate_cycle(MorseCycle(fibers, moves, n0))
            sign = 1
            for r in range(1, 4):
                sign *= -1 if moves[r - 1].kind in ("down", "up") else 1
                rotated = MorseCycle(
                    fibers[r:] + fibers[:r],
                    moves[r:] + moves[:r],
                    n0 + fibers[r] - fibers[0],
                )
                assert evaluate_cycle(rotated) == sign * base
                comparisons += 1

        # 6. genus-0 quantum action has exact period n + 1, 120 cases
        lat0 = SymplecticLattice(0)
        for _ in range(120):
            n = rng.randint(0, 5)
            x = SymClass(
                n, lat0, {(i, ()): Fraction(rng.randint(-5, 5)) for i in range(n + 1)}
            )
            y = x
            for _ in range(n + 1):
                y = cap_U_quantum_g0(y)
            assert y.terms == x.terms


def _rotation(half_turns, count):
    out = []
    for k in range(count):
        th = half_turns * math.pi * k / (count - 1)
        out.append([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    return out


def _hyperbolic(rate, count):
    out = []
    for k in range(count):
        t = rate * k / (count - 1)
        out.append([[math.exp(t), 0.0], [0.0, math.exp(-t)]])
    return out


def test_crossing_parity_suite():
    with criterion("crossing index parity matches the endpoint determinant"):
        rng = random.Random(63)
        for case in range(100):
            kind = case % 3
            if kind == 0:
                k = rng.choice([1, 3])
                path = _rotation(k, 401)
                expected = k
            elif kind == 1:
                path = _hyperbolic(rng.uniform(0.4, 1.2), 101)
                expected = 0
            else:
                k = rng.choice([1, 3])
                path = [
                    direct_sum(a, b)
                    for a, b in zip(_rotation(k, 401), _hyperbolic(0.8, 401))
                ]
                expected = k
            res = conley_zehnder(path)
            assert res.index == expected
            assert res.parity == (res.index + res.half_dim) % 2
            assert res.parity == (0 if res.det_end_sign > 0 else 1)


CLI_BATTERY = [
    ["dim", "--input", "fixture:torus-section-sum"],
    ["dim", "--input", "fixture:sphere-double-section", "--json"],
    ["dim", "--input", "fixture:s2xs2-product", "--json"],
    ["tqft-eval", "--input", "fixture:anosov-cycle", "--json"],
    ["tqft-eval", "--input", "fixture:sphere-cycle"],
    ["tqft-eval", "--input", "fixture:separating-surgery", "--json"],
    ["cz", "--input", "fixture:rotation-path", "--json"],
    ["gradings", "--input", "fixture:torus-section-sum", "--json"],
    ["example", "s2xs2", "--m", "1", "--n", "2", "--json"],
    ["example", "s1s3-sum", "--m", "0", "--n", "3"],
]


def test_cli_deterministic_across_thread_setting():
    with criterion("command line output byte-identical for 1 and 4 threads"):
        for args in CLI_BATTERY:
            outputs = set()
            for threads in ("1", "4"):
                env = dict(os.environ, LAGMATCH_THREADS=threads)
                run = subprocess.run(
                    [sys.executable, "-m", "lagmatch", *args],
                    capture_output=True,
                    text=True,
                    env=env,
                )
                assert run.returncode == 0, (args, run.stderr)
                outputs.add(run.stdout)
            assert len(outputs) == 1, args
            # and the JSON battery stays parseable
            if "--json" in args:
                json.loads(outputs.pop())
