"""Distinct products in the multiplication table, M(N) = |{ij : 0 <= i, j < N}|.

Products live in [0, (N-1)^2].  The range is split into segments no larger
than the memory budget; within a segment every product i*j with 1 <= i <= j
is flagged with one strided numpy assignment per row i, and the flags are
counted.  Zero is added analytically.  Flags are held one byte each (numpy
bool), so ``memory_budget`` bytes buys a segment of that many products.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import BinaryIO, Sequence

import numpy as np

DEFAULT_MEMORY_BUDGET = 256 * 2**20
MIN_SEGMENT = 1024
# (N-1)^2 must fit the int64 offsets numpy uses for slicing
MAX_N = math.isqrt(2**63 - 1)
MSTAR_OFFSET = 0.71
BAND = (0.995, 1.007)
# exponent c = 1 - (1 + ln ln 2)/ln 2 in M(N) = N^2/(log N)^(c+o(1))
ERDOS_EXPONENT = 1 - (1 + math.log(math.log(2))) / math.log(2)


@dataclass(frozen=True)
class MultableResult:
    N: int
    m_value: int
    mstar: float | None
    ratio: float | None
    lower_bound: float
    exponent_estimate: float | None
    elapsed: float = field(default=0.0, compare=False)


def _segments(top: int, size: int):
    lo = 0
    while lo <= top:
        hi = min(top + 1, lo + size)
        yield lo, hi
        lo = hi


def _mark_segment(N: int, lo: int, hi: int) -> np.ndarray:
    flags = np.zeros(hi - lo, dtype=bool)
    for i in range(1, N):
        if i * i >= hi:
            break
        j_lo = max(i, -(-lo // i))
        j_hi = min(N - 1, (hi - 1) // i)
        if j_lo <= j_hi:
            flags[i * j_lo - lo : i * j_hi - lo + 1 : i] = True
    if lo == 0:
        flags[0] = True
    return flags


def _validate(N: int, memory_budget: int) -> int:
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    if N > MAX_N:
        raise OverflowError(f"N = {N} exceeds {MAX_N}; (N-1)^2 would overflow int64 indices")
    if memory_budget < MIN_SEGMENT:
        raise MemoryError(f"memory budget {memory_budget} B is below one {MIN_SEGMENT}-byte segment")
    return memory_budget


def count_products(N: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> int:
    """Exact M(N) with the zero-based definition."""
    segment = _validate(N, memory_budget)
    top = (N - 1) ** 2
    return sum(int(np.count_nonzero(_mark_segment(N, lo, hi))) for lo, hi in _segments(top, segment))


def count_products_one_based(N: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> int:
    """|{ij : 1 <= i, j <= N}|, the number-theory convention.

    The zero-based table of size N+1 holds exactly these products plus 0.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    return count_products(N + 1, memory_budget) - 1


def brute_force_products(N: int, one_based: bool = False) -> int:
    """Set-based oracle, quadratic in N."""
    values = range(1, N + 1) if one_based else range(N)
    return len({i * j for i in values for j in values})


def mstar(N: int) -> float:
    """Empirical fit N^2 / (0.71 + lg lg N)."""
    if N < 4:
        raise ValueError("mstar needs N >= 4 so that lg lg N >= 1")
    return N * N / (MSTAR_OFFSET + math.log2(math.log2(N)))


def lower_bound(N: int) -> float:
    """N^2 / (2 ln N); a lower bound on M(N) for N >= 4."""
    return N * N / (2 * math.log(N))


def exponent_estimate(N: int, m_value: int) -> float | None:
    """log(N^2/M) / log log N; tends to the Erdős exponent only as N -> infinity."""
    if N < 3:
        return None
    return math.log(N * N / m_value) / math.log(math.log(N))


def count_distinct_products(N: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> MultableResult:
    start = time.perf_counter()
    m = count_products(N, memory_budget)
    elapsed = time.perf_counter() - start
    fit = mstar(N) if N >= 4 else None
    return MultableResult(
        N=N,
        m_value=m,
        mstar=fit,
        ratio=m / fit if fit else None,
        lower_bound=lower_bound(N),
        exponent_estimate=exponent_estimate(N, m),
        elapsed=elapsed,
    )


def dump_bitmap(N: int, stream: BinaryIO, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> int:
    """Write the product bitmap: bit k of byte b (little-endian) marks product 8b + k.

    Returns the number of bytes written.  Segment sizes are rounded to a
    multiple of 8 so bytes never straddle segments.
    """
    segment = _validate(N, memory_budget) // 8 * 8
    written = 0
    for lo, hi in _segments((N - 1) ** 2, segment):
        packed = np.packbits(_mark_segment(N, lo, hi), bitorder="little")
        stream.write(packed.tobytes())
        written += packed.size
    return written


def conjecture_report(results: Sequence[MultableResult]) -> dict:
    """Tabulate the numerics against the fitted band and the slow asymptotics.

    The conjectured limit M lg lg N / N^2 -> 1 is false; at reachable N
    the data cannot show it, so the report only tabulates and labels.
    """
    ordered = sorted(results, key=lambda r: r.N)
    rows = []
    for r in ordered:
        lglg = math.log2(math.log2(r.N)) if r.N >= 4 else None
        rows.append({
            "N": r.N,
            "n": r.N.bit_length() - 1 if r.N & (r.N - 1) == 0 else None,
            "M": r.m_value,
            "mstar": r.mstar,
            "ratio": r.ratio,
            "in_band": r.ratio is not None and BAND[0] < r.ratio < BAND[1],
            "lower_bound": r.lower_bound,
            "above_lower_bound": r.N < 4 or r.m_value >= r.lower_bound,
            "conjecture_quantity": r.m_value * lglg / r.N**2 if lglg else None,
            "exponent_estimate": r.exponent_estimate,
        })
    return {
        "rows": rows,
        "band": list(BAND),
        "erdos_exponent": ERDOS_EXPONENT,
        "conjecture_status": (
            "falsified by Erdős (1960): M(N) = N^2/(log N)^(c+o(1)); "
            "slow divergence not visible at desk scale"
        ),
        "asymptotics_reproducible": False,
        "confirms_conjecture": False,
    }
