"""Encodings of the Vassilev-Missana / Agélas claims and the routes that refute them.

With the principal character the two first claims collapse to the single
relation

    2/zeta(s) = 2 - 2 P(s) + P(s)**2 - P(2s)                      (*)

and the nested-radical claim reduces to (*) after one substitution s -> 2s
and squaring.  Every ``run_*`` function returns a :class:`ClaimReport`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import dseries
from .hiprec import PrecisionContext, prime_zeta, zeta_real

# verdict threshold: a gap must beat the certified error by this factor
FALSIFY_FACTOR = 1000
DEFAULT_N_MAX = 100
DEFAULT_DEPTH = 30
METHOD3_EPSILONS = ("1e-3", "1e-4", "1e-5", "1e-6")
METHOD3_LHS_BAND = (1.5, 2.5)
METHOD3_STABILITY = 0.2


class ClaimId(str, enum.Enum):
    VM_THEOREM_1 = "vm-theorem-1"
    AGELAS_LEMMA_2_3 = "agelas-lemma-2-3"
    VM_THEOREM_2 = "vm-theorem-2"


class Method(str, enum.Enum):
    COEFFICIENTS = "coefficients"
    NUMERIC = "numeric"
    SINGULARITY = "singularity"
    NESTED_RADICAL = "nested-radical"


class Verdict(str, enum.Enum):
    FALSIFIED = "FALSIFIED"
    CONSISTENT = "CONSISTENT"


# claims 2 and 3 are the same relation (*); claim 4 is the radical
RELATION_CLAIMS = (ClaimId.VM_THEOREM_1, ClaimId.AGELAS_LEMMA_2_3)
APPLICABLE_METHODS = {
    ClaimId.VM_THEOREM_1: (Method.COEFFICIENTS, Method.NUMERIC, Method.SINGULARITY),
    ClaimId.AGELAS_LEMMA_2_3: (Method.COEFFICIENTS, Method.NUMERIC, Method.SINGULARITY),
    ClaimId.VM_THEOREM_2: (Method.COEFFICIENTS, Method.NESTED_RADICAL),
}


@dataclass(frozen=True)
class ClaimReport:
    claim: ClaimId
    method: Method
    verdict: Verdict
    witness: dict[str, Any] = field(default_factory=dict)
    digits_used: int = 0

    def __post_init__(self):
        if self.verdict is Verdict.FALSIFIED and not self.witness:
            raise ValueError("a FALSIFIED verdict needs a witness")

    @property
    def falsified(self) -> bool:
        return self.verdict is Verdict.FALSIFIED


class NegativeRadicandError(ValueError):
    def __init__(self, depth: int, radicand):
        super().__init__(f"negative radicand {radicand} at nesting depth {depth}")
        self.depth = depth
        self.radicand = radicand


def _relation_claim(claim: ClaimId) -> ClaimId:
    claim = ClaimId(claim)
    if claim not in RELATION_CLAIMS:
        raise ValueError(f"{claim.value} is not an instance of relation (*)")
    return claim


def eval_claim_eq2(ctx: PrecisionContext, s):
    """Return ``(lhs, rhs, |lhs - rhs|)`` of relation (*) at real ``s > 1``."""
    s = ctx.real(s)
    if s <= 1:
        raise ValueError(f"relation (*) is evaluated for s > 1 only, got {s}")
    p = prime_zeta(ctx, s)
    p2 = prime_zeta(ctx, 2 * s)
    lhs = 2 / zeta_real(ctx, s)
    rhs = 2 - 2 * p + p * p - p2
    return lhs, rhs, abs(lhs - rhs)


def run_method1(n_max: int = DEFAULT_N_MAX, claim: ClaimId = ClaimId.VM_THEOREM_1) -> ClaimReport:
    """Compare exact Dirichlet coefficients of both sides of (*)."""
    claim = _relation_claim(claim)
    if n_max < 30:
        raise ValueError("n_max must be >= 30 to reach the n = 30 witness")
    lhs, rhs = dseries.claim_sides(n_max)
    mismatch = dseries.first_mismatch(lhs, rhs)
    if mismatch is None:
        return ClaimReport(claim, Method.COEFFICIENTS, Verdict.CONSISTENT, {"n_max": n_max})
    index, a, b = mismatch
    witness = {"n_max": n_max, "index": index, "lhs_coeff": a, "rhs_coeff": b}
    return ClaimReport(claim, Method.COEFFICIENTS, Verdict.FALSIFIED, witness)


def run_squaring_reduction(n_max: int = DEFAULT_N_MAX) -> ClaimReport:
    """Algebraic route against the nested radical.

    Self-substitution turns the radical into 1 - P(s) = sqrt(2/zeta(s) - (1 - P(2s)));
    its square is compared coefficientwise.
    """
    if n_max < 30:
        raise ValueError("n_max must be >= 30 to reach the n = 30 witness")
    lhs, rhs = dseries.squared_radical_sides(n_max)
    relation = dseries.linear_combine([(1, lhs), (-1, rhs)])
    eq2_lhs, eq2_rhs = dseries.claim_sides(n_max)
    # squaring must reproduce (*) exactly, up to moving terms across
    same_relation = relation == dseries.linear_combine([(1, eq2_rhs), (-1, eq2_lhs)])
    mismatch = dseries.first_mismatch(lhs, rhs)
    if mismatch is None:
        return ClaimReport(ClaimId.VM_THEOREM_2, Method.COEFFICIENTS, Verdict.CONSISTENT,
                           {"n_max": n_max, "reduces_to_relation": same_relation})
    index, a, b = mismatch
    witness = {
        "n_max": n_max,
        "index": index,
        "lhs_coeff": a,
        "rhs_coeff": b,
        "reduces_to_relation": same_relation,
    }
    return ClaimReport(ClaimId.VM_THEOREM_2, Method.COEFFICIENTS, Verdict.FALSIFIED, witness)


def run_method2(ctx: PrecisionContext, s_values: Sequence = (2,),
                claim: ClaimId = ClaimId.VM_THEOREM_1) -> ClaimReport:
    """Evaluate (*) numerically and keep the largest gap as the witness."""
    claim = _relation_claim(claim)
    if not s_values:
        raise ValueError("need at least one s value")
    # each side is good to ctx.tolerance, so the gap is good to twice that
    certified = 2 * ctx.tolerance
    rows = []
    for s in s_values:
        lhs, rhs, gap = eval_claim_eq2(ctx, s)
        rows.append({"s": ctx.real(s), "lhs": lhs, "rhs": rhs, "gap": gap})
    best = max(rows, key=lambda r: r["gap"])
    verdict = Verdict.FALSIFIED if best["gap"] > FALSIFY_FACTOR * certified else Verdict.CONSISTENT
    witness = dict(best, certified_error=certified, scan=rows)
    return ClaimReport(claim, Method.NUMERIC, verdict, witness, ctx.decimal_digits)


def run_method3(ctx: PrecisionContext, epsilons: Sequence = METHOD3_EPSILONS,
                claim: ClaimId = ClaimId.VM_THEOREM_1) -> ClaimReport:
    """Scan s = 1 + eps: simple zero on the left, squared-log growth on the right.

    The left side must track ``2*eps`` (``lhs/eps`` inside ``METHOD3_LHS_BAND``)
    while ``rhs/log(eps)**2`` settles on a nonzero constant: its spread over
    the scan, relative to the value at the smallest eps, stays below
    ``METHOD3_STABILITY``.
    """
    claim = _relation_claim(claim)
    mp = ctx.mp
    eps_values = [ctx.real(e) for e in epsilons]
    if len(eps_values) < 2:
        raise ValueError("a singularity scan needs at least two epsilons")
    for e in eps_values:
        if not 0 < e <= mp.mpf("0.01"):
            raise ValueError(f"epsilon {e} outside (0, 1e-2]")
    if any(b >= a for a, b in zip(eps_values, eps_values[1:])):
        raise ValueError("epsilons must be strictly descending")

    rows = []
    for e in eps_values:
        lhs, rhs, _ = eval_claim_eq2(ctx, 1 + e)
        rows.append({
            "epsilon": e,
            "lhs": lhs,
            "rhs": rhs,
            "lhs_over_eps": lhs / e,
            "rhs_over_log2": rhs / mp.log(e) ** 2,
        })
    ratios = [r["rhs_over_log2"] for r in rows]
    limit = ratios[-1]
    spread = (max(ratios) - min(ratios)) / abs(limit) if limit else mp.inf
    low, high = METHOD3_LHS_BAND
    simple_zero = all(low < r["lhs_over_eps"] < high for r in rows)
    log_squared = limit > 0 and spread < METHOD3_STABILITY
    verdict = Verdict.FALSIFIED if simple_zero and log_squared else Verdict.CONSISTENT
    witness = {
        "scan": rows,
        "simple_zero_on_lhs": simple_zero,
        "log_squared_on_rhs": log_squared,
        "rhs_ratio_spread": spread,
    }
    return ClaimReport(claim, Method.SINGULARITY, verdict, witness, ctx.decimal_digits)


def nested_radical(ctx: PrecisionContext, s, depth: int = DEFAULT_DEPTH, accelerated: bool = True):
    """1 - sqrt(2/zeta(s) - sqrt(2/zeta(2s) - ... sqrt(2/zeta(2**depth s))))

    Evaluated innermost first.  With ``accelerated`` the innermost radicand
    is ``2/zeta(2**depth s) - 1``, which has the same limit but converges
    much faster.
    """
    mp = ctx.mp
    s = ctx.real(s)
    if s < 2:
        raise ValueError(f"nested radical requires s >= 2, got {s}")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    radicand = 2 / zeta_real(ctx, 2**depth * s)
    if accelerated:
        radicand -= 1
    for level in range(depth - 1, -1, -1):
        if radicand < 0:
            raise NegativeRadicandError(level + 1, radicand)
        radicand = 2 / zeta_real(ctx, 2**level * s) - mp.sqrt(radicand)
    if radicand < 0:
        raise NegativeRadicandError(0, radicand)
    return 1 - mp.sqrt(radicand)


def nested_radical_limit(ctx: PrecisionContext, s, depth: int = DEFAULT_DEPTH):
    """Accelerated radical at ``depth`` plus the change from ``depth - 1``.

    Raises if the last two depths differ by more than ``10**-(digits/2)``.
    """
    value = nested_radical(ctx, s, depth, accelerated=True)
    previous = nested_radical(ctx, s, depth - 1, accelerated=True) if depth > 1 else value
    change = abs(value - previous)
    if change > ctx.mp.mpf(10) ** (-(ctx.decimal_digits // 2)):
        raise ArithmeticError(f"nested radical not converged at depth {depth}: change {change}")
    return value, change


def run_nested_radical_check(ctx: PrecisionContext, s=2, depth: int = DEFAULT_DEPTH,
                             n_max: int = DEFAULT_N_MAX) -> ClaimReport:
    radical, change = nested_radical_limit(ctx, s, depth)
    p = prime_zeta(ctx, s)
    gap = abs(radical - p)
    certified = 2 * ctx.tolerance + change
    verdict = Verdict.FALSIFIED if gap > FALSIFY_FACTOR * certified else Verdict.CONSISTENT
    algebraic = run_squaring_reduction(n_max)
    witness = {
        "s": ctx.real(s),
        "nested_radical": radical,
        "prime_zeta": p,
        "gap": gap,
        "depth": depth,
        "certified_error": certified,
        "algebraic_route": {
            "verdict": algebraic.verdict,
            "index": algebraic.witness.get("index"),
            "lhs_coeff": algebraic.witness.get("lhs_coeff"),
            "rhs_coeff": algebraic.witness.get("rhs_coeff"),
        },
    }
    return ClaimReport(ClaimId.VM_THEOREM_2, Method.NESTED_RADICAL, verdict, witness, ctx.decimal_digits)


def run_claim(ctx: PrecisionContext, claim: ClaimId, method: Method) -> ClaimReport:
    """Dispatch one (claim, method) pair with default parameters."""
    claim, method = ClaimId(claim), Method(method)
    if method not in APPLICABLE_METHODS[claim]:
        raise ValueError(f"method {method.value} does not apply to {claim.value}")
    if claim is ClaimId.VM_THEOREM_2:
        if method is Method.COEFFICIENTS:
            return run_squaring_reduction()
        return run_nested_radical_check(ctx)
    if method is Method.COEFFICIENTS:
        return run_method1(claim=claim)
    if method is Method.NUMERIC:
        return run_method2(ctx, claim=claim)
    return run_method3(ctx, claim=claim)


def falsification_routes(ctx: PrecisionContext) -> list[ClaimReport]:
    """The four independent refutations: coefficients, numerics, radical, squaring."""
    return [
        run_method1(),
        run_method2(ctx),
        run_nested_radical_check(ctx),
        run_squaring_reduction(),
    ]
