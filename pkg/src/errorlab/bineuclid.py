"""The binary-Euclid series f(x) = sum_{k>=1} 2^-k / (1 + 2^k x) and its closed forms.

The historical closed form (``f_closed_incorrect``) misses a periodic term
x P(lg x) of size below 7.8e-12 x.  At eight significant digits the two
agree; at forty digits the gap is plain.  ``discrepancy_scan`` and
``low_precision_scan`` reproduce both observations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from mpmath.ctx_mp import MPContext

from .hiprec import PrecisionContext

# the published bound on |P(t)| and on its smallest sinh denominator
PERIODIC_BOUND = 7.8e-12
SINH_FLOOR = 1.16e12
DEFAULT_GRID = ("0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9")


@dataclass(frozen=True)
class PeriodicTermEval:
    t: object
    value: object
    terms_used: int


@dataclass(frozen=True)
class DiscrepancyRow:
    x: object
    discrepancy: object  # f_direct - f_closed_incorrect
    predicted: object  # x * P(lg x)
    residual: object  # |discrepancy - predicted|
    detected: bool


def _open_interval(ctx, x, low, high, what):
    x = ctx.real(x)
    if not low < x < high:
        raise ValueError(f"{what} needs {low} < x < {high}, got {x}")
    return x


def _f_direct(mp, x, eps):
    # tail after K terms is below sum_{k>K} 2^-k = 2^-K
    k_max = int(-mp.log(eps, 2)) + 2
    return mp.fsum(mp.ldexp(1, -k) / (1 + mp.ldexp(x, k)) for k in range(1, k_max + 1))


def _f_closed_incorrect(mp, x, eps):
    if abs(mp.log(x)) > mp.dps:
        # x lg x is tiny here; extra digits keep its relative error honest
        with mp.extradps(int(mp.log10(abs(mp.log(x)))) + 5):
            x_lg_x = x * mp.log(x) / mp.ln2
    else:
        x_lg_x = x * mp.log(x) / mp.ln2
    head = 1 + x_lg_x + x / 2 - x * x / (1 + x)
    # consecutive terms shrink by less than x/2, so the tail is geometric
    cutoff = eps * (1 - x / 2)
    series = []
    power = x
    k = 1
    while True:
        power *= x
        term = power / (mp.ldexp(1, k) - 1)
        if term < cutoff:
            break
        series.append(-term if k % 2 else term)
        k += 1
    return head + mp.fsum(series)


def f_direct(ctx: PrecisionContext, x):
    x = ctx.real(x)
    if x <= 0:
        raise ValueError(f"f is summed directly only for x > 0, got {x}")
    return _f_direct(ctx.mp, x, ctx.truncation)


def f_closed_incorrect(ctx: PrecisionContext, x):
    """The closed form without the periodic term, stated for 0 < x < 2."""
    x = _open_interval(ctx, x, 0, 2, "the uncorrected closed form")
    return _f_closed_incorrect(ctx.mp, x, ctx.truncation)


def smallest_sinh_denominator(ctx: PrecisionContext):
    mp = ctx.mp
    return mp.sinh(2 * mp.pi**2 / mp.ln2)


def periodic_term(ctx: PrecisionContext, t) -> PeriodicTermEval:
    """P(t) = (2 pi / ln 2) sum_n sin(2 n pi t) / sinh(2 n pi^2 / ln 2)."""
    mp = ctx.mp
    t = ctx.real(t)
    step = 2 * mp.pi**2 / mp.ln2
    stop = mp.mpf(10) ** ctx.working_digits
    # reduce t mod 1 so sin(2 n pi t) never sees a huge argument
    frac = t - mp.floor(t)
    total = mp.mpf(0)
    n = 0
    while True:
        n += 1
        denom = mp.sinh(n * step)
        total += mp.sinpi(2 * n * frac) / denom
        if denom > stop:
            break
    return PeriodicTermEval(t, 2 * mp.pi / mp.ln2 * total, n)


def f_closed_correct(ctx: PrecisionContext, x):
    """Uncorrected closed form plus x P(lg x), valid on (0, 1)."""
    x = _open_interval(ctx, x, 0, 1, "the corrected closed form")
    mp = ctx.mp
    lg_x = mp.log(x) / mp.ln2
    return _f_closed_incorrect(mp, x, ctx.truncation) + x * periodic_term(ctx, lg_x).value


def discrepancy_scan(ctx: PrecisionContext, xs: Sequence = DEFAULT_GRID) -> list[DiscrepancyRow]:
    """f_direct - f_closed_incorrect against the predicted x P(lg x).

    A discrepancy counts as detected when it is ten times larger than the
    context tolerance.
    """
    mp = ctx.mp
    threshold = 10 * ctx.tolerance
    rows = []
    for x in xs:
        x = _open_interval(ctx, x, 0, 1, "discrepancy_scan")
        diff = f_direct(ctx, x) - f_closed_incorrect(ctx, x)
        predicted = x * periodic_term(ctx, mp.log(x) / mp.ln2).value
        rows.append(DiscrepancyRow(x, diff, predicted, abs(diff - predicted), abs(diff) > threshold))
    return rows


def low_precision_scan(digits: int = 8, xs: Sequence = DEFAULT_GRID) -> list[DiscrepancyRow]:
    """Rerun the comparison in short floating point, as a 1970s check would.

    Both sides are evaluated with ``digits`` significant digits and no guard
    digits; a discrepancy is only claimed if it exceeds ``10**-digits``,
    the rounding level of that arithmetic.  ``predicted`` is the true
    x P(lg x), evaluated at full precision for comparison.
    """
    if digits < 1:
        raise ValueError("digits must be positive")
    mp = MPContext()
    mp.dps = digits
    eps = mp.mpf(10) ** (-digits)
    threshold = eps
    reference = PrecisionContext(20)
    rows = []
    for x in xs:
        x = mp.mpf(x)
        if not 0 < x < 1:
            raise ValueError(f"low_precision_scan needs 0 < x < 1, got {x}")
        diff = _f_direct(mp, x, eps) - _f_closed_incorrect(mp, x, eps)
        predicted = reference.real(x) * periodic_term(reference, reference.mp.log(x, 2)).value
        rows.append(DiscrepancyRow(x, diff, predicted, abs(diff - predicted), abs(diff) > threshold))
    return rows


def max_periodic_on_grid(ctx: PrecisionContext, points: int = 1000):
    """Largest |P(t)| over t = i/points and the t where it occurs."""
    mp = ctx.mp
    best_t, best = None, mp.mpf(0)
    for i in range(points):
        t = mp.mpf(i) / points
        value = abs(periodic_term(ctx, t).value)
        if value > best:
            best_t, best = t, value
    return best_t, best


def truncation_terms(digits: int) -> int:
    """Number of periodic-term summands needed for ``digits`` digits."""
    step = 2 * math.pi**2 / math.log(2)
    # first n with sinh(n step) > 10**digits, using sinh(y) ~ e^y / 2
    return math.ceil((digits * math.log(10) + math.log(2)) / step)
