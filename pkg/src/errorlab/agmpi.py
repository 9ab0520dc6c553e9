"""Gauss-Legendre (GL1) and Borwein quartic (BB4) iterations for pi.

Both follow the published pseudocode literally, including the guard that
skips the state update after the last output.  Errors are measured against
a pi that certifies itself: GL1 run far enough that its own a-priori error
bound is below the requested accuracy.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .hiprec import PrecisionContext

MIN_AGM_DIGITS = 20
# an error counts as resolved when it exceeds the working ulp by this margin
_RESOLUTION_DIGITS = 10


class Algorithm(str, enum.Enum):
    GL1 = "gl1"
    BB4 = "bb4"


class PrecisionShortfall(ArithmeticError):
    """Working precision ran out before the iteration or comparison finished."""


@dataclass
class AgmTrace:
    algorithm: Algorithm
    iterates: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    bounds: list = field(default_factory=list)
    digits_used: int = 0

    def __len__(self):
        return len(self.iterates)


@dataclass(frozen=True)
class BoundCheck:
    n: int
    passed: bool
    resolved: bool
    error: object
    bound: object


def _check_args(ctx: PrecisionContext, n_max: int):
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if ctx.decimal_digits < MIN_AGM_DIGITS:
        raise ValueError(f"AGM runs need at least {MIN_AGM_DIGITS} digits")


def error_bound(ctx: PrecisionContext, algorithm: Algorithm, n: int):
    """A-priori bound on pi minus the n-th iterate.

    GL1: pi^2 2^(n+4) exp(-2^(n+1) pi);  BB4: the same with n -> 2n.
    """
    mp = ctx.mp
    m = n if Algorithm(algorithm) is Algorithm.GL1 else 2 * n
    return mp.pi**2 * mp.mpf(2) ** (m + 4) * mp.exp(-(mp.mpf(2) ** (m + 1)) * mp.pi)


def _gl1_iterates(mp, n_max: int) -> list:
    a = mp.mpf(1)
    b = 1 / mp.sqrt(2)
    s = mp.mpf(1) / 4
    out = []
    for n in range(n_max):
        a_next = (a + b) / 2
        c = a - a_next
        out.append(a_next**2 / s)
        if n < n_max - 1:
            b = mp.sqrt(a * b)
            s = s - mp.mpf(2) ** n * c**2
            if s <= 0:
                raise PrecisionShortfall(f"GL1: s_{n + 1} <= 0")
        a = a_next
    return out


def _bb4_iterates(mp, n_max: int) -> list:
    y = mp.sqrt(2) - 1
    z = 2 * y**2
    out = []
    for n in range(n_max):
        out.append(1 / z)
        if n < n_max - 1:
            r = mp.root(1 - y**4, 4)
            y = (1 - r) / (1 + r)
            z = z * (1 + y) ** 4 - mp.mpf(2) ** (2 * n + 3) * y * (1 + y + y * y)
            if z <= 0:
                raise PrecisionShortfall(f"BB4: z_{n + 1} <= 0")
    return out


def reference_pi(ctx: PrecisionContext):
    """pi to the context's working precision, certified by the GL1 bound."""
    inner = ctx.derive(ctx.working_digits + 20)
    n = iterations_for_digits(ctx.working_digits + 10)
    return ctx.mp.mpf(_gl1_iterates(inner.mp, n + 1)[-1])


def iterations_for_digits(digits: int) -> int:
    """Smallest GL1 index n whose error bound is below ``10**-digits``."""
    n = 0
    while True:
        log10_bound = (2 * math.log10(math.pi) + (n + 4) * math.log10(2)
                       - 2 ** (n + 1) * math.pi / math.log(10))
        if log10_bound < -digits:
            return n
        n += 1


def _run(ctx: PrecisionContext, algorithm: Algorithm, n_max: int) -> AgmTrace:
    _check_args(ctx, n_max)
    mp = ctx.mp
    pi = reference_pi(ctx)
    iterates = _gl1_iterates(mp, n_max) if algorithm is Algorithm.GL1 else _bb4_iterates(mp, n_max)
    return AgmTrace(
        algorithm=algorithm,
        iterates=iterates,
        errors=[pi - x for x in iterates],
        bounds=[error_bound(ctx, algorithm, n) for n in range(n_max)],
        digits_used=ctx.working_digits,
    )


def gl1_run(ctx: PrecisionContext, n_max: int) -> AgmTrace:
    return _run(ctx, Algorithm.GL1, n_max)


def bb4_run(ctx: PrecisionContext, n_max: int) -> AgmTrace:
    return _run(ctx, Algorithm.BB4, n_max)


def check_bounds(trace: AgmTrace) -> list[BoundCheck]:
    """Per iterate: is ``0 < error < bound``?

    An iterate whose bound sits within ``_RESOLUTION_DIGITS`` of the working
    precision is reported as unresolved rather than as a pass or failure.
    """
    out = []
    for n, (err, bound) in enumerate(zip(trace.errors, trace.bounds)):
        resolved = -_lg(bound) * math.log10(2) + _RESOLUTION_DIGITS <= trace.digits_used
        passed = resolved and 0 < err < bound
        out.append(BoundCheck(n, passed, resolved, err, bound))
    return out


def check_equivalence(ctx: PrecisionContext, n_max: int):
    """Deviations |pi''_n - pi'_2n| for n < n_max.

    Returns ``(max_deviation, deviations)``.  Raises
    :class:`PrecisionShortfall` when the smallest bound involved is not
    resolved at the working precision, or when rounding pushes a deviation
    past ``10**(5 - digits)``.
    """
    _check_args(ctx, n_max)
    mp = ctx.mp
    smallest = error_bound(ctx, Algorithm.BB4, n_max - 1)
    if -mp.log10(smallest) + _RESOLUTION_DIGITS > ctx.working_digits:
        raise PrecisionShortfall(
            f"{ctx.working_digits} working digits cannot resolve the BB4 bound at n = {n_max - 1}"
        )
    quartic = _bb4_iterates(mp, n_max)
    quadratic = _gl1_iterates(mp, 2 * (n_max - 1) + 1)
    deviations = [abs(quartic[n] - quadratic[2 * n]) for n in range(n_max)]
    worst = max(deviations)
    if worst >= mp.mpf(10) ** (5 - ctx.decimal_digits):
        raise PrecisionShortfall(f"deviation {mp.nstr(worst, 5)} exceeds rounding slack")
    return worst, deviations


def convergence_orders(trace: AgmTrace) -> dict[str, list]:
    """Two estimates of the convergence order over the certified iterates.

    Only the leading run of iterates whose bound is resolved at the working
    precision (see :func:`check_bounds`) is used; beyond it the "error" is
    rounding noise.  ``lg_ratio[n]`` is lg(e_{n+1}) / lg(e_n), which tends
    to the order only asymptotically because lg e_n carries an additive
    O(n) term.  ``order[n]`` is lg(e_{n+1}/e_n) / lg(e_n/e_{n-1}), the usual
    estimator, in which those terms largely cancel; ``order[0]`` is None.
    """
    logs = []
    for check in check_bounds(trace):
        if not check.resolved or check.error <= 0:
            break
        logs.append(_lg(check.error))
    lg_ratio = [logs[n + 1] / logs[n] for n in range(len(logs) - 1)]
    order = [None] + [
        (logs[n + 1] - logs[n]) / (logs[n] - logs[n - 1]) for n in range(1, len(logs) - 1)
    ]
    return {"lg_error": logs, "lg_ratio": lg_ratio, "order": order}


def _lg(x) -> float:
    """log2 of a positive mpf as a float, safe for tiny exponents."""
    if x <= 0:
        raise ValueError(f"lg of nonpositive value {x}")
    man, exp = int(x.man), int(x.exp)
    shift = max(man.bit_length() - 53, 0)
    return math.log2(man >> shift) + shift + exp
