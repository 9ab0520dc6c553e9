"""Precision contexts and the special functions everything else is built on.

Every numeric routine takes a :class:`PrecisionContext`.  The context owns a
private :class:`mpmath.ctx_mp.MPContext`, so evaluations at different
precisions never touch mpmath's global state and can run side by side.
Values returned by these routines are ``mpf`` numbers of the context's
``mp`` (that is what the rest of the package calls a "high-precision real").
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from mpmath.ctx_mp import MPContext

MIN_DIGITS = 10
DEFAULT_GUARD = 15
# closest approach to the pole of zeta that zeta_real accepts
MIN_POLE_DISTANCE = "1e-8"
# largest direct-sum length used before switching to Euler-Maclaurin
_DIRECT_SUM_LIMIT = 64


@dataclass(frozen=True)
class PrecisionContext:
    """Requested accuracy plus the working precision derived from it.

    Results produced under a context are accurate to ``10**-decimal_digits``
    (absolute for magnitudes up to 10, relative beyond).  Internally every
    computation carries ``guard_digits`` extra digits.
    """

    decimal_digits: int
    guard_digits: int = DEFAULT_GUARD
    mp: MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.decimal_digits < MIN_DIGITS:
            raise ValueError(
                f"decimal_digits must be >= {MIN_DIGITS}, got {self.decimal_digits}"
            )
        if self.guard_digits < 1:
            raise ValueError("guard_digits must be positive")
        mp = MPContext()
        mp.dps = self.working_digits
        object.__setattr__(self, "mp", mp)

    @property
    def working_digits(self) -> int:
        return self.decimal_digits + self.guard_digits

    @property
    def tolerance(self):
        """The accuracy promised to callers, ``10**-decimal_digits``."""
        return self.mp.mpf(10) ** (-self.decimal_digits)

    @property
    def truncation(self):
        """Threshold below which series tails are dropped."""
        return self.mp.mpf(10) ** (-self.working_digits)

    def real(self, value):
        """Convert ``value`` (int, str, float, Fraction or mpf) into this context."""
        if isinstance(value, Fraction):
            return self.mp.mpf(value.numerator) / value.denominator
        return self.mp.mpf(value)

    def derive(self, decimal_digits: int) -> "PrecisionContext":
        return PrecisionContext(decimal_digits, self.guard_digits)


def make_context(decimal_digits: int, guard_digits: int = DEFAULT_GUARD) -> PrecisionContext:
    return PrecisionContext(int(decimal_digits), int(guard_digits))


# ---------------------------------------------------------------------------
# integer helpers

def mobius(n: int) -> int:
    """Möbius function by trial division."""
    if n < 1:
        raise ValueError(f"mobius needs n >= 1, got {n}")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


def primes_up_to(limit: int) -> list[int]:
    """Sieve of Eratosthenes; empty for ``limit < 2``."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


_bernoulli_cache: list[Fraction] = [Fraction(1), Fraction(-1, 2)]
_bernoulli_lock = threading.Lock()


def bernoulli(index: int) -> Fraction:
    """Exact Bernoulli number ``B_index`` (convention ``B_1 = -1/2``).

    Uses sum_{k=0}^{m} C(m+1, k) B_k = 0, memoized.  Odd indices above 1 are
    identically zero and are rejected rather than silently returned.
    """
    if index < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if index > 1 and index % 2:
        raise ValueError(f"B_{index} is zero for odd index > 1; refusing to compute it")
    with _bernoulli_lock:
        cache = _bernoulli_cache
        for m in range(len(cache), index + 1):
            if m % 2:
                cache.append(Fraction(0))
                continue
            total = Fraction(0)
            for k in range(m):
                if cache[k]:
                    total += comb(m + 1, k) * cache[k]
            cache.append(-total / (m + 1))
        return cache[index]


# ---------------------------------------------------------------------------
# zeta and friends

def _check_above_pole(ctx: PrecisionContext, s):
    s = ctx.real(s)
    if s <= 1:
        raise ValueError(f"zeta is only evaluated for real s > 1, got {s}")
    # slack of one working ulp so that "1.00000001" itself is accepted
    if s - 1 < ctx.real(MIN_POLE_DISTANCE) - ctx.truncation:
        raise ValueError(f"s - 1 = {s - 1} is closer to the pole than {MIN_POLE_DISTANCE}")
    return s


def zeta_even(ctx: PrecisionContext, k: int):
    """zeta(2k) from Euler's formula with exact Bernoulli numbers."""
    if k < 1:
        raise ValueError("k must be >= 1")
    mp = ctx.mp
    b = ctx.real(bernoulli(2 * k))
    value = (2 * mp.pi) ** (2 * k) * b / (2 * mp.factorial(2 * k))
    return value if k % 2 else -value


def _zeta_direct(mp, s, terms: int):
    return mp.fsum(mp.mpf(n) ** (-s) for n in range(1, terms))


def _zeta_euler_maclaurin(mp, s, n_terms: int, eps):
    """Euler-Maclaurin with ``n_terms - 1`` explicit terms, or None if the
    correction series stalls before reaching ``eps``."""
    N = mp.mpf(n_terms)
    head = _zeta_direct(mp, s, n_terms)
    npow = N ** (-s)
    total = head + N * npow / (s - 1) + npow / 2
    scale = abs(total)
    rising = s
    npow /= N
    inv_n2 = 1 / (N * N)
    previous = None
    j = 1
    while True:
        b = bernoulli(2 * j)
        term = mp.mpf(b.numerator) / b.denominator / mp.factorial(2 * j) * rising * npow
        size = abs(term)
        # remainder after j-1 corrections is bounded by |term| for real s > 1
        if size < eps * scale:
            return total
        if previous is not None and size >= previous:
            return None
        total += term
        previous = size
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        npow *= inv_n2
        j += 1


def zeta_real(ctx: PrecisionContext, s):
    """Riemann zeta at real ``s > 1`` (down to ``1 + 1e-8``)."""
    s = _check_above_pole(ctx, s)
    mp = ctx.mp
    eps = ctx.truncation
    # for large s the plain Dirichlet sum is already converged
    exponent = ctx.working_digits * math.log(10) / float(s - 1)
    if exponent < math.log(_DIRECT_SUM_LIMIT):
        terms = max(2, math.ceil(math.exp(exponent)))
        return _zeta_direct(mp, s, terms)
    n_terms = max(8, math.ceil(0.4 * ctx.working_digits) + 4)
    while True:
        value = _zeta_euler_maclaurin(mp, s, n_terms, eps)
        if value is not None:
            return value
        n_terms *= 2


def prime_zeta(ctx: PrecisionContext, s):
    """Prime zeta P(s) = sum_k mu(k)/k log zeta(ks) for real s > 1."""
    s = _check_above_pole(ctx, s)
    mp = ctx.mp
    # |log zeta(ks)| < 2 * 2**(-ks); stop once that is negligible
    k_max = math.ceil((ctx.working_digits + 2) * math.log2(10) / float(s)) + 1
    total = mp.mpf(0)
    for k in range(1, k_max + 1):
        mu = mobius(k)
        if mu:
            total += mp.log(zeta_real(ctx, k * s)) * mu / k
    return total


def prime_sum_enclosure(ctx: PrecisionContext, s, bound: int):
    """Direct sum over primes ``p <= bound`` of ``p**-s`` and a tail bound.

    ``P(s)`` lies in ``[partial, partial + tail]`` with
    ``tail = bound**(1-s)/(s-1)``.
    """
    s = _check_above_pole(ctx, s)
    mp = ctx.mp
    partial = mp.fsum(mp.mpf(p) ** (-s) for p in primes_up_to(bound))
    tail = mp.mpf(bound) ** (1 - s) / (s - 1)
    return partial, tail
