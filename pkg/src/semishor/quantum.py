"""The exact quantum side of the algorithm.

QFT amplitudes, the R/S controlled-phase gate string realizing the QFT
up to output bit reversal, the post-QFT state over (c_hat, residue class)
pairs, the closed-form measurement probability, and the good-c_hat set
from which the period is recovered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .numtheory import bit_reverse, mod_exp, multiplicative_order

MAX_DENSE_BITS = 10


class ResourceLimitError(ValueError):
    """Register too wide for a dense matrix build."""


@dataclass(frozen=True)
class GateDescriptor:
    """One gate of the QFT string: R (Hadamard-like) or S (controlled phase)."""

    kind: str  # "R" | "S"
    i: int
    j: Optional[int] = None
    theta: Optional[float] = None


@dataclass
class SemistateCoefficients:
    """Amplitudes of the measured state, indexed by (c_hat, residue class k).

    residues[k] = x**k mod N; amp has shape (q, L).
    """

    q: int
    residues: list[int]
    amp: np.ndarray

    @property
    def L(self) -> int:
        return len(self.residues)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amp) ** 2))

    def probabilities(self, k: Optional[int] = None) -> np.ndarray:
        """|amp|**2 for a fixed residue class, or summed over classes."""
        p = np.abs(self.amp) ** 2
        return p.sum(axis=1) if k is None else p[:, k]


@dataclass
class DistributionTable:
    """Per-c_hat probability rows for one (N, x, q) instance and mode."""

    q: int
    N: int
    x: int
    L: int
    mode: str  # "quantum" | "semi-paper" | "semi-strict"
    k: Optional[int]  # None means marginal over residue classes
    probability: np.ndarray = field(repr=False)
    is_good_c: np.ndarray = field(repr=False)

    @property
    def k_mode(self) -> str:
        return "marginal" if self.k is None else "fixed"

    @property
    def normalized(self) -> np.ndarray:
        return self.probability / self.probability.sum()


def qft_amplitude(a: int, c: int, q: int) -> complex:
    """q**(-1/2) * exp(2 pi i a c / q)."""
    return np.exp(2j * np.pi * (a * c % q) / q) / math.sqrt(q)


def qft_matrix(l: int) -> np.ndarray:
    """Dense QFT matrix F[c, a] = q**(-1/2) exp(2 pi i a c / q)."""
    q = 1 << l
    idx = np.arange(q)
    return np.exp(2j * np.pi * (np.outer(idx, idx) % q) / q) / math.sqrt(q)


def build_gate_string(l: int) -> list[GateDescriptor]:
    """The ordered string R_0 S_01 .. S_0,l-1 R_1 .. R_{l-1}.

    l gates of kind R and l(l-1)/2 of kind S, with theta_ij = pi / 2**(j-i).
    """
    if not 1 <= l <= 12:
        raise ValueError("l must be in 1..12")
    gates: list[GateDescriptor] = []
    for i in range(l):
        gates.append(GateDescriptor("R", i))
        for j in range(i + 1, l):
            gates.append(GateDescriptor("S", i, j, math.pi / (1 << (j - i))))
    return gates


def apply_gate_string(l: int) -> np.ndarray:
    """Dense product of the gate string; rightmost gate acts first on kets.

    Composing the result with output bit reversal gives the QFT matrix.
    """
    if l > MAX_DENSE_BITS:
        raise ResourceLimitError(f"l = {l} exceeds dense limit {MAX_DENSE_BITS}")
    q = 1 << l
    U = np.eye(q, dtype=complex)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    idx = np.arange(q)
    for g in build_gate_string(l):
        if g.kind == "R":
            lo = idx[(idx >> g.i) & 1 == 0]
            hi = lo | (1 << g.i)
            a, b = U[:, lo].copy(), U[:, hi].copy()
            U[:, lo] = (a + b) * inv_sqrt2
            U[:, hi] = (a - b) * inv_sqrt2
        else:
            both = idx[((idx >> g.i) & 1 == 1) & ((idx >> g.j) & 1 == 1)]
            U[:, both] *= np.exp(1j * g.theta)
    return U


def bit_reversed_rows(U: np.ndarray, l: int) -> np.ndarray:
    """Permute rows by the l-bit reversal (the omitted output-reordering step)."""
    perm = [bit_reverse(c, l) for c in range(1 << l)]
    return U[perm, :]


def residue_bracket(L: int, c_hat: int, q: int) -> int:
    """L*c_hat - d*q for the d minimizing the absolute value; lies in (-q/2, q/2].

    A tie at exactly q/2 resolves to +q/2.
    """
    r = L * c_hat % q
    return r - q if 2 * r > q else r


def shor_probability(c_hat: int, k: int, q: int, L: int) -> float:
    """Closed-form probability of measuring (c_hat, x**k mod N).

    Geometric sum of M = [ (q-k-1)/L ] + 1 unit phasors stepping by
    2 pi {L c_hat}_q / q; the zero-residue case degenerates to (M/q)**2.
    """
    M = (q - k - 1) // L + 1
    r = residue_bracket(L, c_hat, q)
    if r == 0:
        return (M / q) ** 2
    half = math.pi * r / q
    return (math.sin(M * half) / math.sin(half)) ** 2 / q**2


def good_c_values(q: int, L: int) -> set[int]:
    """All c_hat with |{L c_hat}_q| < L/2 (strict) -- the period-revealing set."""
    if L >= q:
        raise ValueError("need L < q")
    return {c for c in range(q) if 2 * abs(residue_bracket(L, c, q)) < L}


def probability_lower_bound(L: int) -> float:
    """4 / (pi L)**2, the worst-case probability over the good set."""
    return 4.0 / (math.pi * L) ** 2


def shor_state(N: int, x: int, l: int) -> SemistateCoefficients:
    """The exact post-QFT state for (N, x) on an l-bit first register.

    amp(c, k) = (1/q) sum_f exp(2 pi i (k + f L) c / q), f = 0..[(q-k-1)/L].
    """
    q = 1 << l
    if q < N:
        raise ValueError(f"need 2**l >= N, got q = {q} < {N}")
    L = multiplicative_order(x, N)
    c = np.arange(q)
    amp = np.empty((q, L), dtype=complex)
    for k in range(L):
        a_vals = np.arange(k, q, L)
        amp[:, k] = np.exp(2j * np.pi * (np.outer(c, a_vals) % q) / q).sum(axis=1) / q
    residues = [mod_exp(x, k, N) for k in range(L)]
    return SemistateCoefficients(q=q, residues=residues, amp=amp)


def quantum_distribution(
    N: int, x: int, l: int, k: Optional[int] = None
) -> DistributionTable:
    """Closed-form distribution over c_hat, fixed-k or marginal over k."""
    q = 1 << l
    if q < N:
        raise ValueError(f"need 2**l >= N, got q = {q} < {N}")
    L = multiplicative_order(x, N)
    ks = range(L) if k is None else [k]
    prob = np.zeros(q)
    for kk in ks:
        prob += np.array([shor_probability(c, kk, q, L) for c in range(q)])
    good = good_c_values(q, L)
    mask = np.array([c in good for c in range(q)])
    return DistributionTable(
        q=q, N=N, x=x, L=L, mode="quantum", k=k, probability=prob, is_good_c=mask
    )
