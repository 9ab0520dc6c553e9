"""Exact formal Dirichlet series sum a_n n^-s with integer coefficients.

Only finitely many coefficients are kept (``n = 1 .. n_max``); products are
truncated Dirichlet convolutions, which is exact for every retained index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .hiprec import mobius, primes_up_to


@dataclass(frozen=True)
class DirichletCoeffs:
    n_max: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        if len(self.coeffs) != self.n_max:
            raise ValueError(f"expected {self.n_max} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_list(cls, values: Sequence[int]) -> "DirichletCoeffs":
        return cls(len(values), tuple(int(v) for v in values))

    def __getitem__(self, n: int) -> int:
        """Coefficient of ``n**-s`` (1-based)."""
        if not 1 <= n <= self.n_max:
            raise IndexError(n)
        return self.coeffs[n - 1]

    def __add__(self, other: "DirichletCoeffs") -> "DirichletCoeffs":
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other: "DirichletCoeffs") -> "DirichletCoeffs":
        return linear_combine([(1, self), (-1, other)])

    def __mul__(self, other: "DirichletCoeffs") -> "DirichletCoeffs":
        return convolve(self, other)

    def nonzero(self) -> dict[int, int]:
        return {n: a for n, a in enumerate(self.coeffs, start=1) if a}


def _check_same_length(tables: Iterable[DirichletCoeffs]) -> int:
    sizes = {t.n_max for t in tables}
    if len(sizes) != 1:
        raise ValueError(f"Dirichlet tables have mismatched n_max: {sorted(sizes)}")
    return sizes.pop()


def series_unit(n_max: int) -> DirichletCoeffs:
    return DirichletCoeffs(n_max, (1,) + (0,) * (n_max - 1))


def series_constant_ones(n_max: int) -> DirichletCoeffs:
    """zeta(s) itself: every coefficient is 1."""
    return DirichletCoeffs(n_max, (1,) * n_max)


def series_mobius(n_max: int) -> DirichletCoeffs:
    """1/zeta(s)."""
    return DirichletCoeffs(n_max, tuple(mobius(n) for n in range(1, n_max + 1)))


def series_two_over_zeta(n_max: int) -> DirichletCoeffs:
    return linear_combine([(2, series_mobius(n_max))])


def series_prime_indicator(n_max: int, stride: int = 1) -> DirichletCoeffs:
    """P(s) for ``stride=1``; P(2s) (ones at prime squares) for ``stride=2``."""
    if stride not in (1, 2):
        raise ValueError(f"stride must be 1 or 2, got {stride}")
    coeffs = [0] * n_max
    for p in primes_up_to(n_max):
        q = p**stride
        if q > n_max:
            break
        coeffs[q - 1] = 1
    return DirichletCoeffs(n_max, tuple(coeffs))


def convolve(a: DirichletCoeffs, b: DirichletCoeffs) -> DirichletCoeffs:
    """Dirichlet product c_n = sum_{d | n} a_d b_{n/d}."""
    n_max = _check_same_length((a, b))
    out = [0] * n_max
    for d in range(1, n_max + 1):
        ad = a.coeffs[d - 1]
        if not ad:
            continue
        for m in range(1, n_max // d + 1):
            bm = b.coeffs[m - 1]
            if bm:
                out[d * m - 1] += ad * bm
    return DirichletCoeffs(n_max, tuple(out))


def linear_combine(terms: Sequence[tuple[int, DirichletCoeffs]], constant: int = 0) -> DirichletCoeffs:
    """sum of scalar * table, plus ``constant`` (which only touches a_1)."""
    if not terms:
        raise ValueError("linear_combine needs at least one table")
    n_max = _check_same_length(t for _, t in terms)
    out = [0] * n_max
    for scalar, table in terms:
        if scalar:
            for i, value in enumerate(table.coeffs):
                out[i] += scalar * value
    out[0] += constant
    return DirichletCoeffs(n_max, tuple(out))


def first_mismatch(a: DirichletCoeffs, b: DirichletCoeffs) -> tuple[int, int, int] | None:
    _check_same_length((a, b))
    for n, (x, y) in enumerate(zip(a.coeffs, b.coeffs), start=1):
        if x != y:
            return n, x, y
    return None


def claim_sides(n_max: int) -> tuple[DirichletCoeffs, DirichletCoeffs]:
    """Both sides of 2/zeta(s) = 2 - 2P(s) + P(s)**2 - P(2s)."""
    p = series_prime_indicator(n_max, 1)
    p2 = series_prime_indicator(n_max, 2)
    lhs = series_two_over_zeta(n_max)
    rhs = linear_combine([(-2, p), (1, convolve(p, p)), (-1, p2)], constant=2)
    return lhs, rhs


def squared_radical_sides(n_max: int) -> tuple[DirichletCoeffs, DirichletCoeffs]:
    """Both sides of (1 - P(s))**2 = 2/zeta(s) - (1 - P(2s)).

    This is what the nested-radical claim becomes after substituting s -> 2s
    into itself and squaring.
    """
    one_minus_p = linear_combine([(-1, series_prime_indicator(n_max, 1))], constant=1)
    lhs = convolve(one_minus_p, one_minus_p)
    rhs = linear_combine(
        [(1, series_two_over_zeta(n_max)), (1, series_prime_indicator(n_max, 2))],
        constant=-1,
    )
    return lhs, rhs
