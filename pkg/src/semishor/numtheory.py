"""Integer and bit-level machinery for the period-finding pipeline.

Everything here is exact integer arithmetic: modular exponentiation,
brute-force order finding (the ground-truth oracle, never the sampled
path), continued-fraction recovery of d/L from a measured c_hat, factor
extraction from a recovered period, and the Hamming-weight coefficient
h(b, c) that modulates the semiclassical sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class BitRegister:
    """A non-negative integer with an explicit bit width l (q = 2**l).

    Bit i of value is the coefficient a_i in value = sum a_i 2**i.
    """

    value: int
    width: int

    def __post_init__(self):
        if not 1 <= self.width <= 63:
            raise ValueError("width must be in 1..63")
        if not 0 <= self.value < 1 << self.width:
            raise ValueError(f"value must fit in {self.width} bits")

    def bit(self, i: int) -> int:
        if not 0 <= i < self.width:
            raise ValueError("bit index out of range")
        return (self.value >> i) & 1

    def bits(self) -> list[int]:
        return [(self.value >> i) & 1 for i in range(self.width)]

    def __int__(self) -> int:
        return self.value


class NotCoprimeError(ValueError):
    """x shares a factor with N; the shared factor is a lucky find."""

    def __init__(self, x: int, N: int, common_factor: int):
        super().__init__(f"gcd({x}, {N}) = {common_factor} != 1")
        self.common_factor = common_factor


@dataclass(frozen=True)
class PeriodResult:
    """Outcome of testing one continued-fraction candidate period."""

    candidate_L: int
    convergent_d: int
    accepted: bool
    factors: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class FactorSplit:
    """Result of extract_factors: either a factor pair or a reason code."""

    factors: Optional[tuple[int, int]]
    reason: Optional[str] = None  # "odd-period" | "trivial-root"


def mod_exp(x: int, a: int, N: int) -> int:
    """x**a mod N by square-and-multiply, O(log a) multiplications."""
    if N < 2:
        raise ValueError(f"modulus must be >= 2, got {N}")
    if a < 0:
        raise ValueError("exponent must be non-negative")
    result = 1 % N
    base = x % N
    while a:
        if a & 1:
            result = result * base % N
        base = base * base % N
        a >>= 1
    return result


def multiplicative_order(x: int, N: int) -> int:
    """Smallest L >= 1 with x**L == 1 (mod N), by brute-force loop.

    This is the validation oracle; the sampled pipeline never calls it
    to find L, only to check what it found.
    """
    g = math.gcd(x, N)
    if g != 1:
        raise NotCoprimeError(x, N, g)
    L = 1
    v = x % N
    while v != 1:
        v = v * x % N
        L += 1
    return L


def continued_fraction_candidates(c_hat: int, q: int, N: int) -> list[tuple[int, int]]:
    """All convergents (d, L) of c_hat/q with L < N, in increasing L.

    The caller filters by the closeness condition |c_hat/q - d/L| < 1/(2q);
    c_hat = 0 degenerates to the single pair (0, 1).
    """
    if not 0 <= c_hat < q:
        raise ValueError(f"c_hat must lie in [0, {q}), got {c_hat}")
    if c_hat == 0:
        return [(0, 1)]
    out: list[tuple[int, int]] = []
    num, den = c_hat, q
    p_prev, p = 0, 1  # numerators h_{-2}, h_{-1}
    k_prev, k = 1, 0  # denominators k_{-2}, k_{-1}
    while den:
        a, rem = divmod(num, den)
        p_prev, p = p, a * p + p_prev
        k_prev, k = k, a * k + k_prev
        if k >= N:
            break
        out.append((p, k))
        num, den = den, rem
    return out


def convergent_is_close(c_hat: int, q: int, d: int, L: int) -> bool:
    """Exact integer test of |c_hat/q - d/L| < 1/(2q)."""
    return 2 * abs(c_hat * L - d * q) < L


def extract_factors(x: int, L: int, N: int) -> FactorSplit:
    """gcd(x**(L/2) -+ 1, N) when L is even and x**(L/2) is a nontrivial root."""
    if mod_exp(x, L, N) != 1:
        raise ValueError(f"{x}**{L} != 1 (mod {N}); L is not a period")
    if L % 2 == 1:
        return FactorSplit(None, "odd-period")
    t = mod_exp(x, L // 2, N)
    if t == 1 or t == N - 1:
        return FactorSplit(None, "trivial-root")
    return FactorSplit((math.gcd(t - 1, N), math.gcd(t + 1, N)))


def h_coefficient(b: int, c: int, l: int) -> int:
    """Product over bits of (1 + delta_{b_i c_i}) = 2**(l - HammingDistance)."""
    if not (0 <= b < 1 << l and 0 <= c < 1 << l):
        raise ValueError("b and c must fit in l bits")
    return 1 << (l - (b ^ c).bit_count())


def bit_reverse(a: int, l: int) -> int:
    """Reverse the l-bit string of a; an involution."""
    if not 0 <= a < 1 << l:
        raise ValueError("a must fit in l bits")
    out = 0
    for _ in range(l):
        out = (out << 1) | (a & 1)
        a >>= 1
    return out
