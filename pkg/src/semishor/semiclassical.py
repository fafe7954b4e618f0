"""Coherent-state approximation of the algorithm.

Gate symbols <lambda|G|lambda>, the lossless coefficient-tensor
representation of arbitrary matrices, the closed-form coherent integrals
with their per-bit selection rule, the modified measured state, its
probability distribution in two evaluation modes, and the scaling
ratios and envelope approximations.

Two modes are exposed throughout:

* "paper-formula": the b-sum runs over all q values with the integer
  quadratic phase b(b + c - a); this is the closed-form route.
* "strict-integral": only b with a per-bit-valid displacement
  d_i = b_i + c_i - a_i in {0, 1} contribute, which is what the
  coherent integrals actually enforce.

The two do not agree and their gap is reported, not hidden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .numtheory import h_coefficient, mod_exp, multiplicative_order
from .quantum import (
    DistributionTable,
    SemistateCoefficients,
    build_gate_string,
    good_c_values,
    residue_bracket,
    shor_probability,
)

PAPER_FORMULA = "paper-formula"
STRICT_INTEGRAL = "strict-integral"
MAX_SYMBOL_BITS = 8
MAX_STRICT_BITS = 9


@dataclass(frozen=True)
class SemiclassicalParams:
    """Evaluation-mode switches, immutable per run."""

    mode: str = PAPER_FORMULA
    coarse_grain: int = 0  # c_hat window half-width, 0 or 1

    def __post_init__(self):
        if self.mode not in (PAPER_FORMULA, STRICT_INTEGRAL):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.coarse_grain not in (0, 1):
            raise ValueError("coarse_grain must be 0 or 1")


@dataclass(frozen=True)
class CoherentSymbol:
    """Coefficient tensor of <lambda|M|lambda>, indexed by (row bits, col bits).

    The prefactor prod_i (1+|lambda_i|^2)^(-1) is a stored convention and is
    applied only on evaluation; the coefficients are exactly the matrix
    entries, so reconstruction is lossless.
    """

    width: int
    coeffs: np.ndarray

    def evaluate(self, lambdas: list[complex]) -> complex:
        """<lambda|M|lambda> at a point: Lambda * sum M_nm lbar^n l^m."""
        if len(lambdas) != self.width:
            raise ValueError("need one lambda per bit")
        lam = np.asarray(lambdas, dtype=complex)
        q = 1 << self.width
        idx = np.arange(q)
        bits = (idx[:, None] >> np.arange(self.width)[None, :]) & 1
        col_mono = np.prod(np.where(bits == 1, lam[None, :], 1.0), axis=1)
        row_mono = np.prod(np.where(bits == 1, lam.conj()[None, :], 1.0), axis=1)
        prefactor = np.prod(1.0 / (1.0 + np.abs(lam) ** 2))
        return complex(prefactor * (row_mono @ self.coeffs @ col_mono))


def symbol_of(M: np.ndarray, l: int) -> CoherentSymbol:
    """Store the coefficients M_nm of a 2**l x 2**l matrix."""
    M = np.asarray(M, dtype=complex)
    q = 1 << l
    if M.shape != (q, q):
        raise ValueError(f"matrix must be {q}x{q}")
    return CoherentSymbol(width=l, coeffs=M.copy())


def reconstruct(s: CoherentSymbol) -> np.ndarray:
    """Exact inverse of symbol_of; bit-for-bit the original matrix."""
    return s.coeffs.copy()


def symbol_trace_integral(s: CoherentSymbol) -> complex:
    """Integral of the symbol over the coherent measure.

    Diagonal monomials integrate to 1 per mode and off-diagonal ones to 0,
    so the value is the matrix trace; the quadrature oracle checks this
    from first principles.
    """
    return complex(np.trace(s.coeffs))


def r_symbol(lam: complex) -> complex:
    """Diagonal symbol of the R gate: Lambda (1 + l + lbar - l lbar)/sqrt(2)."""
    lb = lam.conjugate()
    return (1.0 + lam + lb - lam * lb) / ((1.0 + abs(lam) ** 2) * math.sqrt(2.0))


def s_symbol(lam_i: complex, lam_j: complex, theta: float) -> complex:
    """Diagonal symbol of the controlled-phase gate S_ij."""
    ri2 = abs(lam_i) ** 2
    rj2 = abs(lam_j) ** 2
    num = 1.0 + ri2 + rj2 + np.exp(1j * theta) * ri2 * rj2
    return complex(num / ((1.0 + ri2) * (1.0 + rj2)))


def phi_symbol(lambdas: list[complex]) -> complex:
    """Diagonal symbol of the full gate string, by the literal double bit sum.

    q^(-1/2) Lambda sum_{b,d} e^{2 pi i b d / q} prod_i l_i^{b_i} lbar_i^{d_{l-1-i}};
    the label reversal on d reflects the reversed readout of the gate string.
    """
    l = len(lambdas)
    if l > MAX_SYMBOL_BITS:
        raise ValueError(f"l = {l} exceeds symbol limit {MAX_SYMBOL_BITS}")
    lam = np.asarray(lambdas, dtype=complex)
    q = 1 << l
    idx = np.arange(q)
    bits = (idx[:, None] >> np.arange(l)[None, :]) & 1
    mono_l = np.prod(np.where(bits == 1, lam[None, :], 1.0), axis=1)
    # lbar_i gets the reversed label: exponent of lbar_i is d_{l-1-i}
    rev_bits = bits[:, ::-1]
    mono_lb = np.prod(np.where(rev_bits == 1, lam.conj()[None, :], 1.0), axis=1)
    E = np.exp(2j * np.pi * (np.outer(idx, idx) % q) / q)
    prefactor = np.prod(1.0 / (1.0 + np.abs(lam) ** 2)) / math.sqrt(q)
    return complex(prefactor * (mono_l @ E @ mono_lb))


def classical_phi_product(lambdas: list[complex]) -> complex:
    """Scalar product of gate symbols in string order (the high-spin limit).

    Not equal to phi_symbol in general: multiplying symbols generates
    powers beyond {0, 1} and loses the dimension matching.
    """
    l = len(lambdas)
    out = complex(1.0)
    for g in build_gate_string(l):
        if g.kind == "R":
            out *= r_symbol(lambdas[g.i])
        else:
            out *= s_symbol(lambdas[g.i], lambdas[g.j], g.theta)
    return out


def integral_I(a: int, c: int, b: int, d: int, l: int) -> float:
    """Closed form of the per-mode coherent integral product.

    Zero unless every bit satisfies d_i = b_i + c_i - a_i in {0, 1}
    (the angular selection rule); otherwise pi^l h(b, c) / (q 3^l).
    """
    q = 1 << l
    for i in range(l):
        di = ((b >> i) & 1) + ((c >> i) & 1) - ((a >> i) & 1)
        if di not in (0, 1) or di != ((d >> i) & 1):
            return 0.0
    return math.pi**l * h_coefficient(b, c, l) / (q * 3**l)


def _popcounts(q: int) -> np.ndarray:
    pc = np.zeros(q, dtype=np.int64)
    for i in range(1, q):
        pc[i] = pc[i >> 1] + (i & 1)
    return pc


def _paper_amp(q: int, L: int, ks: list[int]) -> np.ndarray:
    """amp(c, k) columns for the paper-formula mode, vectorized over b.

    amp(c, k) = (1/(3^l q)) sum_{a = k mod L} sum_b h(b, c) e^{2 pi i b(b+c-a)/q};
    O(q) per (c, k) row via a popcount table for h.
    """
    l = q.bit_length() - 1
    pc = _popcounts(q)
    b = np.arange(q, dtype=np.int64)
    pow2 = np.ldexp(np.ones(l + 1), np.arange(l, -1, -1))  # pow2[n] = 2**(l-n)
    phase_b2 = np.exp(2j * np.pi * (b * b % q) / q)
    # T[b, j] = sum over a = ks[j] mod L of e^{-2 pi i b a / q}
    T = np.empty((q, len(ks)), dtype=complex)
    for j, k in enumerate(ks):
        a_vals = np.arange(k, q, L, dtype=np.int64)
        T[:, j] = np.exp(-2j * np.pi * (np.outer(b, a_vals) % q) / q).sum(axis=1)
    amp = np.empty((q, len(ks)), dtype=complex)
    scale = 1.0 / (3**l * q)
    for c in range(q):
        w = pow2[pc[b ^ c]] * phase_b2 * np.exp(2j * np.pi * (b * c % q) / q)
        amp[c, :] = scale * (w @ T)
    return amp


def _strict_amp(q: int, L: int, ks: list[int]) -> np.ndarray:
    """amp(c, k) columns for the strict-integral mode.

    Only (a, b) pairs whose displacement is per-bit valid contribute:
    d_i = b_i + c_i - a_i must be 0 or 1, which forces a_i = b_i on every
    bit where b and c agree and leaves a_i free where they differ.
    """
    l = q.bit_length() - 1
    if l > MAX_STRICT_BITS:
        raise ValueError(f"l = {l} exceeds strict-mode limit {MAX_STRICT_BITS}")
    pc = _popcounts(q)
    b = np.arange(q, dtype=np.int64)
    B = b[:, None]
    # only columns a in the requested residue classes are ever needed
    a_lists = [np.arange(k, q, L, dtype=np.int64) for k in ks]
    a = np.concatenate(a_lists)
    sel = np.concatenate([np.full(len(av), j) for j, av in enumerate(a_lists)])
    A = a[None, :]
    pow2 = np.ldexp(np.ones(l + 1), np.arange(l, -1, -1))
    scale = 1.0 / (3**l * q)
    amp = np.zeros((q, len(ks)), dtype=complex)
    for c in range(q):
        valid = ((A ^ B) & ((B ^ c) ^ (q - 1))) == 0
        phase = np.exp(2j * np.pi * (B * ((B + c - A) % q) % q) / q)
        cols = (pow2[pc[b ^ c]][:, None] * phase * valid).sum(axis=0)
        np.add.at(amp[c, :], sel, scale * cols)
    return amp


def semistate_amplitudes(q: int, L: int, mode: str, ks: Optional[list[int]] = None) -> np.ndarray:
    """(q, len(ks)) amplitude array of the modified state for either mode."""
    if ks is None:
        ks = list(range(L))
    if mode == PAPER_FORMULA:
        return _paper_amp(q, L, ks)
    if mode == STRICT_INTEGRAL:
        return _strict_amp(q, L, ks)
    raise ValueError(f"unknown mode {mode!r}")


def semistate(N: int, x: int, l: int, params: SemiclassicalParams) -> SemistateCoefficients:
    """The modified measured state for (N, x) on an l-bit register."""
    q = 1 << l
    if q < N:
        raise ValueError(f"need 2**l >= N, got q = {q} < {N}")
    L = multiplicative_order(x, N)
    amp = semistate_amplitudes(q, L, params.mode)
    residues = [mod_exp(x, k, N) for k in range(L)]
    return SemistateCoefficients(q=q, residues=residues, amp=amp)


def semiclassical_probability(
    c_hat: int, k: int, q: int, L: int, params: SemiclassicalParams
) -> float:
    """|amp(c_hat, k)|**2 in the requested mode."""
    amp = semistate_amplitudes(q, L, params.mode, ks=[k])
    return float(np.abs(amp[c_hat, 0]) ** 2)


def leading_term(c_hat: int, k: int, q: int, L: int) -> float:
    """The b = c_hat contribution alone: 9^(-l) |sum_f e^{2 pi i f {Lc}_q / q}|^2."""
    l = q.bit_length() - 1
    return 9.0**-l * q**2 * shor_probability(c_hat, k, q, L)


def coarse_grained_probability(c_hat: int, k: int, q: int, L: int) -> float:
    """Leading term plus the one-bit-away band: factor (1 + l/4 + l/2)."""
    l = q.bit_length() - 1
    return (1.0 + l / 4.0 + l / 2.0) * leading_term(c_hat, k, q, L)


def semiclassical_distribution(
    N: int,
    x: int,
    l: int,
    params: SemiclassicalParams,
    k: Optional[int] = None,
) -> DistributionTable:
    """Distribution over c_hat in the requested mode, fixed-k or marginal."""
    q = 1 << l
    if q < N:
        raise ValueError(f"need 2**l >= N, got q = {q} < {N}")
    L = multiplicative_order(x, N)
    ks = list(range(L)) if k is None else [k]
    amp = semistate_amplitudes(q, L, params.mode, ks=ks)
    prob = np.sum(np.abs(amp) ** 2, axis=1)
    if params.coarse_grain == 1:
        prob = prob + np.roll(prob, 1) + np.roll(prob, -1)
    good = good_c_values(q, L)
    mask = np.array([c in good for c in range(q)])
    mode = "semi-paper" if params.mode == PAPER_FORMULA else "semi-strict"
    return DistributionTable(
        q=q, N=N, x=x, L=L, mode=mode, k=k, probability=prob, is_good_c=mask
    )


def ratio_R1(l: int) -> float:
    """(2/3)**(2l): how much smaller the leading semiclassical peak is."""
    return (2.0 / 3.0) ** (2 * l)


def ratio_R2(dist: DistributionTable) -> float:
    """Peak-to-floor ratio: max over good rows / min over nonzero rows."""
    good = dist.probability[dist.is_good_c]
    nonzero = dist.probability[dist.probability > 0]
    if nonzero.size == 0 or good.size == 0:
        raise ValueError("distribution has no nonzero rows")
    return float(good.max() / nonzero.min())


def htilde(z_hat: float, l: int) -> float:
    """9^(-l) (5 + 4 cos z)^l, the constant-effective-phase envelope."""
    if l < 0:
        raise ValueError("l must be >= 0")
    return ((5.0 + 4.0 * math.cos(z_hat)) / 9.0) ** l


def half_width_zeta(l: int) -> float:
    """The z where the envelope drops to 1/2: arccos((9/2^(1/l) - 5)/4)."""
    if l < 1:
        raise ValueError("l must be >= 1")
    return math.acos((9.0 / 2.0 ** (1.0 / l) - 5.0) / 4.0)


def appendixb_envelope(c_hat: int, k: int, q: int, L: int, z_hat: float) -> float:
    """Exact probability scaled by the oscillating envelope htilde(z, l)."""
    l = q.bit_length() - 1
    return htilde(z_hat, l) * shor_probability(c_hat, k, q, L)
