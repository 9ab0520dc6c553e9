"""One test per numbered acceptance criterion, at the stated tolerances.

``conftest.py`` prints a PASS/FAIL line for each criterion after the run.
"""

import time

import mpmath
import pytest

from errorlab import agmpi, bineuclid, claimlab, multable
from errorlab.claimlab import Verdict
from errorlab.hiprec import make_context, prime_zeta


@pytest.fixture(scope="module")
def ctx40():
    return make_context(40)


@pytest.fixture(scope="module")
def ctx10k():
    return make_context(10_000)


@pytest.mark.acceptance(1, "coefficient witness (30, -2, 0) at n_max = 100 in under 1 s")
def test_criterion_01_method1_witness():
    start = time.perf_counter()
    report = claimlab.run_method1(100)
    elapsed = time.perf_counter() - start
    w = report.witness
    assert (w["index"], w["lhs_coeff"], w["rhs_coeff"]) == (30, -2, 0)
    assert report.verdict is Verdict.FALSIFIED
    assert elapsed < 1


@pytest.mark.acceptance(2, "s = 2 at 40 digits: 1.2158542 vs 1.2230397, gap > 0.007, under 5 s")
def test_criterion_02_method2_values():
    start = time.perf_counter()
    ctx = make_context(40)
    lhs, rhs, gap = claimlab.eval_claim_eq2(ctx, 2)
    report = claimlab.run_method2(ctx, [2])
    elapsed = time.perf_counter() - start
    assert abs(lhs - ctx.real("1.2158542")) < 5e-8
    assert abs(rhs - ctx.real("1.2230397")) < 5e-8
    assert gap > 0.007
    assert report.verdict is Verdict.FALSIFIED
    assert elapsed < 5


@pytest.mark.acceptance(3, "nested radical 0.4588 vs P(2) = 0.4522, difference > 0.006")
def test_criterion_03_nested_radical(ctx40):
    for depth in (20, 30):
        value = claimlab.nested_radical(ctx40, 2, depth, accelerated=True)
        assert abs(value - ctx40.real("0.4588")) < 5e-5
    p2 = prime_zeta(ctx40, 2)
    assert abs(p2 - ctx40.real("0.4522")) < 5e-5
    assert abs(value - p2) > 0.006


@pytest.mark.acceptance(4, "singularity scan: lhs/eps in (1.5, 2.5), rhs/(log eps)^2 within 20%")
def test_criterion_04_method3_scan(ctx40):
    eps = ["1e-3", "1e-4", "1e-5", "1e-6"]
    report = claimlab.run_method3(ctx40, eps)
    rows = report.witness["scan"]
    assert len(rows) == 4
    mp = ctx40.mp
    for row in rows:
        e = ctx40.real(row["epsilon"])
        lhs, rhs, _ = claimlab.eval_claim_eq2(ctx40, 1 + e)
        assert 1.5 < lhs / e < 2.5
        row["check"] = rhs / mp.log(e) ** 2
    ratios = [row["check"] for row in rows]
    assert (max(ratios) - min(ratios)) / abs(ratios[-1]) < 0.2
    assert report.verdict is Verdict.FALSIFIED


@pytest.mark.acceptance(5, "binary Euclid: corrected form to 1e-35, gap = x P(lg x), 8-digit rerun blind")
def test_criterion_05_binary_euclid(ctx40):
    start = time.perf_counter()
    mp = ctx40.mp
    for x in ("0.1", "0.3", "0.5", "0.7", "0.9"):
        diff = bineuclid.f_closed_correct(ctx40, x) - bineuclid.f_direct(ctx40, x)
        assert abs(diff) < mp.mpf(10) ** -35
    grid = [mp.mpf(i) / 101 for i in range(1, 101)]
    for x in grid:
        gap = bineuclid.f_direct(ctx40, x) - bineuclid.f_closed_incorrect(ctx40, x)
        assert abs(gap) <= bineuclid.PERIODIC_BOUND * x
        predicted = x * bineuclid.periodic_term(ctx40, mp.log(x, 2)).value
        # agreement to 25 significant digits, or to 1e-25 x where P nearly vanishes
        assert abs(gap - predicted) < mp.mpf(10) ** -25 * max(abs(predicted), x * mp.mpf(10) ** -12)
    low = bineuclid.low_precision_scan(8)
    assert not any(r.detected for r in low)
    assert time.perf_counter() - start < 30


@pytest.mark.acceptance(6, "max |P(t)| on 1000 points in (7.0e-12, 7.8e-12) near t = 1/4; sinh > 1.16e12")
def test_criterion_06_periodic_bound(ctx40):
    t, peak = bineuclid.max_periodic_on_grid(ctx40, 1000)
    assert 7.0e-12 < peak < 7.8e-12
    assert abs(t - 0.25) < 0.01
    assert bineuclid.smallest_sinh_denominator(ctx40) > 1.16e12


@pytest.mark.acceptance(7, "GL1 n_max = 6 and BB4 n_max = 3 at 10^4 digits obey their bounds, under 60 s")
def test_criterion_07_agm_bounds(ctx10k):
    start = time.perf_counter()
    for trace in (agmpi.gl1_run(ctx10k, 6), agmpi.bb4_run(ctx10k, 3)):
        checks = agmpi.check_bounds(trace)
        assert all(c.resolved and c.passed for c in checks)
        assert all(e > 0 for e in trace.errors)
        assert all(b < a for a, b in zip(trace.errors, trace.errors[1:]))
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance(8, "max over n <= 3 of |pi''_n - pi'_2n| < 1e-9990 at 10^4 digits")
def test_criterion_08_agm_equivalence(ctx10k):
    worst, deviations = agmpi.check_equivalence(ctx10k, 4)
    assert len(deviations) == 4
    assert worst < ctx10k.mp.mpf(10) ** -9990


@pytest.mark.acceptance(9, "convergence order 2 (GL1) and 4 (BB4) within 10% over the certified window")
def test_criterion_09_convergence_orders(ctx10k):
    gl1 = agmpi.convergence_orders(agmpi.gl1_run(ctx10k, 6))
    bb4 = agmpi.convergence_orders(agmpi.bb4_run(ctx10k, 3))
    assert len(gl1["lg_error"]) == 6 and len(bb4["lg_error"]) == 3
    assert all(abs(o - 2) < 0.2 for o in gl1["order"][1:])
    assert all(abs(o - 4) < 0.4 for o in bb4["order"][1:])


@pytest.mark.acceptance(10, "M(N) exact to N = 512, band (0.995, 1.007) for n = 5..14 in under 2 min")
def test_criterion_10_multiplication_table():
    seen, oracle = set(), [0]
    for n in range(512):
        seen.update(n * j for j in range(n + 1))
        oracle.append(len(seen))
    for N in range(2, 513):
        assert multable.count_products(N) == oracle[N]
    assert multable.count_products(2) == 2 and multable.count_products(4) == 7

    start = time.perf_counter()
    results = [multable.count_distinct_products(2**n) for n in range(5, 15)]
    elapsed = time.perf_counter() - start
    for r in results:
        assert multable.BAND[0] < r.ratio < multable.BAND[1], (r.N, r.ratio)
        assert r.m_value >= r.lower_bound
    for N in range(4, 513):
        assert oracle[N] >= multable.lower_bound(N)
    report = multable.conjecture_report(results)
    assert report["asymptotics_reproducible"] is False
    assert report["confirms_conjecture"] is False
    assert elapsed < 120


@pytest.mark.acceptance(11, "all four falsification routes return FALSIFIED")
def test_criterion_11_cross_method(ctx40):
    reports = claimlab.falsification_routes(ctx40)
    assert len(reports) == 4
    assert [r.verdict for r in reports] == [Verdict.FALSIFIED] * 4
    methods = {r.method for r in reports}
    assert {claimlab.Method.COEFFICIENTS, claimlab.Method.NUMERIC, claimlab.Method.NESTED_RADICAL} <= methods
