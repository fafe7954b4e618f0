"""Brute-force ground truth for every closed form in the package.

Nothing here is optimized. The quadrature routines integrate the coherent
measure numerically (trapezoid in the angle, the compactifying substitution
u = r^2/(1+r^2) in the radius), and the brute sums evaluate probability and
state amplitudes term by term. The fast modules are tested against these.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from .numtheory import h_coefficient, mod_exp, multiplicative_order
from .quantum import SemistateCoefficients, residue_bracket
from .semiclassical import PAPER_FORMULA, STRICT_INTEGRAL, CoherentSymbol, integral_I


def angular_integral(delta: int, n_phi: int = 2048) -> complex:
    """Trapezoid of e^{i delta phi} over [0, 2 pi]; exact below the alias limit."""
    if n_phi < 8:
        raise ValueError("n_phi too coarse")
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    return complex(np.exp(1j * delta * phi).sum() * (2.0 * np.pi / n_phi))


def radial_halfline(s: int, power: int, n_r: int = 2048, method: str = "gauss") -> float:
    """int_0^inf r^{1+s} (1 + r^2)^{-power} dr by quadrature on u = r^2/(1+r^2).

    The substitution maps the half-line to [0, 1) and turns the integrand
    into (1/2) u^{s/2} (1-u)^{power-2-s/2}, polynomial for even s.
    """
    if s < 0 or power - 2 - s / 2.0 < 0:
        raise ValueError("integral does not converge")
    if method == "gauss":
        nodes, weights = np.polynomial.legendre.leggauss(min(n_r, 256))
        u = 0.5 * (nodes + 1.0)
        w = 0.5 * weights
    elif method == "trapezoid":
        u = np.linspace(0.0, 1.0, n_r + 1)
        w = np.full(n_r + 1, 1.0 / n_r)
        w[0] = w[-1] = 0.5 / n_r
    else:
        raise ValueError(f"unknown method {method!r}")
    vals = 0.5 * u ** (s / 2.0) * (1.0 - u) ** (power - 2 - s / 2.0)
    return float(vals @ w)


def radial_moment(m: int, n_r: int = 2048, method: str = "gauss") -> float:
    """int_0^inf r^{2m+1} (1+r^2)^{-4} dr; 1/6 for m in {0, 2}, 1/12 for m = 1."""
    return radial_halfline(2 * m, 4, n_r=n_r, method=method)


def quadrature_convergence_ratio(s: int = 2, power: int = 4, n_r: int = 64) -> float:
    """Error shrink factor of the trapezoid radial rule when the grid doubles.

    Should approach 4 (second order) for the smooth integrands here; the
    verification suite gates on >= 3.
    """
    exact = radial_halfline(s, power, method="gauss")
    e1 = abs(radial_halfline(s, power, n_r=n_r, method="trapezoid") - exact)
    e2 = abs(radial_halfline(s, power, n_r=2 * n_r, method="trapezoid") - exact)
    if e2 == 0.0:
        return math.inf
    return e1 / e2


@lru_cache(maxsize=None)
def _mode_factor(n: int, m: int, power: int, n_phi: int, n_r: int) -> complex:
    """One-mode integral of lbar^n l^m against (1 + |l|^2)^{-power} d^2 lambda."""
    return angular_integral(m - n, n_phi) * radial_halfline(n + m, power, n_r)


def quadrature_integral_I(
    a: int, c: int, b: int, d: int, l: int, n_phi: int = 2048, n_r: int = 2048
) -> float:
    """Numeric value of the coherent integral behind integral_I.

    The integrand factorizes per mode into lbar^{a_i + d_i} l^{b_i + c_i}
    against (1 + r^2)^{-4} d^2 lambda; each factor is a 2D quadrature.
    """
    if l > 2:
        raise ValueError("quadrature oracle limited to l <= 2")
    out = complex(1.0)
    for i in range(l):
        n = ((a >> i) & 1) + ((d >> i) & 1)
        m = ((b >> i) & 1) + ((c >> i) & 1)
        out *= _mode_factor(n, m, 4, n_phi, n_r)
    if abs(out.imag) > 1e-9:
        raise ArithmeticError("quadrature produced a non-real value")
    return out.real


def quadrature_trace(M: np.ndarray, l: int, n_phi: int = 2048, n_r: int = 2048) -> complex:
    """Integral of the coherent symbol of M over the normalized measure.

    Per mode the measure is (2/pi) (1 + |lambda|^2)^{-2} d^2 lambda, and the
    symbol contributes lbar^n l^m / (1 + |lambda|^2) per bit; should match
    the matrix trace.
    """
    if l > 2:
        raise ValueError("quadrature oracle limited to l <= 2")
    M = np.asarray(M, dtype=complex)
    q = 1 << l
    if M.shape != (q, q):
        raise ValueError(f"matrix must be {q}x{q}")
    t = np.empty((2, 2), dtype=complex)
    for n in range(2):
        for m in range(2):
            t[n, m] = (2.0 / math.pi) * _mode_factor(n, m, 3, n_phi, n_r)
    W = np.ones((1, 1), dtype=complex)
    for _ in range(l):
        W = np.kron(W, t)
    return complex(np.sum(M * W))


def brute_shor_probability(c_hat: int, k: int, q: int, L: int) -> float:
    """Literal term-by-term |（1/q) sum_f e^{2 pi i f {Lc}_q / q}|^2."""
    if q > 1 << 16:
        raise ValueError("q too large for the brute sum")
    r = residue_bracket(L, c_hat, q)
    M = (q - k - 1) // L + 1
    total = sum(cmath.exp(2j * cmath.pi * f * r / q) for f in range(M))
    return abs(total / q) ** 2


def brute_semistate(
    N: int, x: int, l: int, mode: str = STRICT_INTEGRAL, use_quadrature: bool = False
) -> SemistateCoefficients:
    """Fully unoptimized amplitudes of the modified state, both modes.

    Strict mode loops over every (a, b, d) tuple and calls integral_I per
    term (or its quadrature twin at l <= 2); paper-formula mode is the
    literal double sum with the unconstrained integer phase b(b + c - a).
    """
    if l > 4:
        raise ValueError("brute oracle limited to l <= 4")
    if use_quadrature and l > 2:
        raise ValueError("quadrature path limited to l <= 2")
    q = 1 << l
    if q < N:
        raise ValueError(f"need 2**l >= N, got q = {q} < {N}")
    L = multiplicative_order(x, N)
    amp = np.zeros((q, L), dtype=complex)
    if mode == STRICT_INTEGRAL:
        for c in range(q):
            for a in range(q):
                for b in range(q):
                    for d in range(q):
                        if use_quadrature:
                            val = quadrature_integral_I(a, c, b, d, l)
                        else:
                            val = integral_I(a, c, b, d, l)
                        if val != 0.0:
                            phase = cmath.exp(2j * cmath.pi * b * d / q)
                            amp[c, a % L] += phase * val / math.pi**l
    elif mode == PAPER_FORMULA:
        scale = 1.0 / (3**l * q)
        for c in range(q):
            for a in range(q):
                for b in range(q):
                    phase = cmath.exp(2j * cmath.pi * b * (b + c - a) / q)
                    amp[c, a % L] += scale * h_coefficient(b, c, l) * phase
    else:
        raise ValueError(f"unknown mode {mode!r}")
    residues = [mod_exp(x, k, N) for k in range(L)]
    return SemistateCoefficients(q=q, residues=residues, amp=amp)


def brute_symbol_value(M: np.ndarray, lambdas: list[complex]) -> complex:
    """<lambda|M|lambda> from the raw state vectors, no symbol machinery."""
    M = np.asarray(M, dtype=complex)
    l = len(lambdas)
    q = 1 << l
    if M.shape != (q, q):
        raise ValueError(f"matrix must be {q}x{q}")
    ket = np.ones(1, dtype=complex)
    for lam in lambdas:
        # per-mode unnormalized state (1, lambda) in the {down, up} basis
        ket = np.kron(np.array([1.0, lam], dtype=complex), ket)
    norm = np.prod([1.0 + abs(lam) ** 2 for lam in lambdas])
    return complex(ket.conj() @ M @ ket) / norm


def brute_symbol_check(sym: CoherentSymbol, lambdas: list[complex], M: np.ndarray) -> float:
    """|symbol evaluation - raw bra-ket value|, the Appendix-independent check."""
    return abs(sym.evaluate(lambdas) - brute_symbol_value(M, lambdas))
