import mpmath
import pytest

from errorlab.bineuclid import (
    PERIODIC_BOUND,
    SINH_FLOOR,
    discrepancy_scan,
    f_closed_correct,
    f_closed_incorrect,
    f_direct,
    low_precision_scan,
    max_periodic_on_grid,
    periodic_term,
    smallest_sinh_denominator,
    truncation_terms,
)
from errorlab.hiprec import make_context


@pytest.fixture(scope="module")
def ctx():
    return make_context(40)


def oracle_f(x, dps=60):
    with mpmath.workdps(dps):
        return mpmath.nsum(lambda k: 2**-k / (1 + 2**k * mpmath.mpf(x)), [1, mpmath.inf])


@pytest.mark.parametrize("x", ["0.1", "0.5", "1", "1.5", "7"])
def test_f_direct_against_nsum(ctx, x):
    assert abs(f_direct(ctx, x) - oracle_f(x)) < ctx.tolerance


def test_f_at_one(ctx):
    # partial sums with the 2^-K tail bound pin the value to 0.2355, not 0.2645
    partial = sum(2.0**-k / (1 + 2.0**k) for k in range(1, 40))
    assert abs(f_direct(ctx, 1) - partial) < 2.0**-39
    assert ctx.mp.nstr(f_direct(ctx, 1), 4) == "0.2355"


@pytest.mark.parametrize("x", ["0.1", "0.3", "0.5", "0.7", "0.9"])
def test_corrected_closed_form(ctx, x):
    assert abs(f_closed_correct(ctx, x) - f_direct(ctx, x)) < ctx.mp.mpf(10) ** -35


def test_corrected_closed_form_tiny_x(ctx):
    x = ctx.mp.mpf(2) ** -200
    assert abs(f_closed_correct(ctx, x) - f_direct(ctx, x)) < ctx.tolerance


def test_incorrect_form_is_close_but_wrong(ctx):
    for x in ("0.1", "0.3", "0.7"):
        gap = abs(f_direct(ctx, x) - f_closed_incorrect(ctx, x))
        assert 1e-14 < gap <= PERIODIC_BOUND * float(x)


def test_incorrect_form_on_one_to_two(ctx):
    # the uncorrected form is accepted up to 2; the gap stays tiny there too
    gap = abs(f_direct(ctx, "1.5") - f_closed_incorrect(ctx, "1.5"))
    assert gap <= PERIODIC_BOUND * 1.5


@pytest.mark.parametrize("func, x", [
    (f_closed_correct, "0"), (f_closed_correct, "1"),
    (f_closed_incorrect, "2"), (f_closed_incorrect, "-0.5"),
    (f_direct, "0"),
])
def test_domain_errors(ctx, func, x):
    with pytest.raises(ValueError):
        func(ctx, x)


def test_periodic_term_properties(ctx):
    mp = ctx.mp
    for t in ("0.1", "0.37", "0.8"):
        p = periodic_term(ctx, t).value
        assert abs(periodic_term(ctx, ctx.real(t) + 1).value - p) < ctx.tolerance * 1e-12
        assert abs(periodic_term(ctx, ctx.real(t) - 5).value - p) < ctx.tolerance * 1e-12
        assert abs(periodic_term(ctx, -ctx.real(t)).value + p) < ctx.tolerance * 1e-12
    assert periodic_term(ctx, 0).value == 0
    assert abs(periodic_term(ctx, "0.5").value) < ctx.tolerance * 1e-12
    # leading term alone
    lead = 2 * mp.pi / mp.ln2 / mp.sinh(2 * mp.pi**2 / mp.ln2)
    assert abs(periodic_term(ctx, "0.25").value - lead) < 1e-30


def test_periodic_term_count(ctx):
    assert periodic_term(ctx, "0.3").terms_used == truncation_terms(ctx.working_digits)


def test_sinh_floor(ctx):
    assert smallest_sinh_denominator(ctx) > SINH_FLOOR


def test_max_on_grid(ctx):
    t, value = max_periodic_on_grid(ctx)
    assert 7.0e-12 < value < PERIODIC_BOUND
    assert abs(t - 0.25) < 0.01


def test_discrepancy_scan_matches_prediction(ctx):
    rows = discrepancy_scan(ctx)
    # P vanishes at integer t, so x = 1/2 carries no discrepancy
    assert [r.detected for r in rows] == [str(r.x) != "0.5" for r in rows]
    for r in rows:
        assert r.residual < 1e-38
        assert abs(r.discrepancy) <= PERIODIC_BOUND * r.x


def test_low_precision_misses_the_term():
    rows = low_precision_scan(8)
    assert len(rows) == 9
    assert not any(r.detected for r in rows)
    assert any(abs(r.predicted) > 1e-13 for r in rows)


def test_low_precision_rejects():
    with pytest.raises(ValueError):
        low_precision_scan(0)
    with pytest.raises(ValueError):
        low_precision_scan(8, ["1.2"])
