"""Named invariant suites with measured errors against explicit tolerances.

Each check returns the worst observed error so the CLI report can show the
margin, not just a boolean. Suites: gates, integrals, phasespace,
appendixa, appendixb, all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracles, phasespace, quantum, semiclassical

SUITES = ("gates", "integrals", "phasespace", "appendixa", "appendixb", "all")


@dataclass(frozen=True)
class CheckResult:
    name: str
    error: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.error <= self.tol


def _check(name: str, error: float, tol: float) -> CheckResult:
    return CheckResult(name=name, error=float(error), tol=float(tol))


def suite_gates(tol: float = 1e-12) -> list[CheckResult]:
    """Gate string vs direct transform and unitarity, l = 1..8."""
    out = []
    worst_qft = 0.0
    worst_unitary = 0.0
    for l in range(1, 9):
        U = quantum.apply_gate_string(l)
        F = quantum.qft_matrix(l)
        worst_qft = max(worst_qft, np.abs(quantum.bit_reversed_rows(U, l) - F).max())
        q = 1 << l
        worst_unitary = max(worst_unitary, np.abs(U.conj().T @ U - np.eye(q)).max())
    out.append(_check("gate-string-vs-transform-l1..8", worst_qft, tol))
    out.append(_check("gate-string-unitarity-l1..8", worst_unitary, tol))
    return out


def suite_integrals(tol: float = 1e-8) -> list[CheckResult]:
    """Closed-form coherent integrals and probability sums vs quadrature/brute."""
    out = []
    out.append(_check("radial-moment-m0", abs(oracles.radial_moment(0) - 1 / 6), tol))
    out.append(_check("radial-moment-m1", abs(oracles.radial_moment(1) - 1 / 12), tol))
    out.append(_check("radial-moment-m2", abs(oracles.radial_moment(2) - 1 / 6), tol))

    worst = 0.0
    for a in range(2):
        for c in range(2):
            for b in range(2):
                for d in range(2):
                    closed = semiclassical.integral_I(a, c, b, d, 1)
                    quad = oracles.quadrature_integral_I(a, c, b, d, 1)
                    worst = max(worst, abs(closed - quad))
    out.append(_check("integral-closed-vs-quadrature-l1", worst, tol))

    rng = np.random.default_rng(20260824)
    worst = 0.0
    for _ in range(400):
        a, c, b, d = rng.integers(0, 4, size=4)
        closed = semiclassical.integral_I(int(a), int(c), int(b), int(d), 2)
        quad = oracles.quadrature_integral_I(int(a), int(c), int(b), int(d), 2)
        worst = max(worst, abs(closed - quad))
    out.append(_check("integral-closed-vs-quadrature-l2", worst, tol))

    ratio = oracles.quadrature_convergence_ratio()
    out.append(_check("quadrature-order-ratio-inverse", 1.0 / ratio, 1.0 / 3.0))

    worst = 0.0
    for _ in range(200):
        l = int(rng.integers(4, 9))
        q = 1 << l
        L = int(rng.integers(2, 17))
        c_hat = int(rng.integers(0, q))
        k = int(rng.integers(0, L))
        worst = max(
            worst,
            abs(
                quantum.shor_probability(c_hat, k, q, L)
                - oracles.brute_shor_probability(c_hat, k, q, L)
            ),
        )
    out.append(_check("probability-closed-vs-brute", worst, 1e-12))
    return out


def suite_phasespace(tol: float = 1e-6) -> list[CheckResult]:
    """Bracket algebra, the flow contraction identity, and conservation laws."""
    out = []
    rng = np.random.default_rng(7)
    pts = rng.normal(size=100) + 1j * rng.normal(size=100)

    def jp(z):
        return phasespace.j_functions(z).jplus

    def jm(z):
        return phasespace.j_functions(z).jminus

    def j0(z):
        return phasespace.j_functions(z).j0

    worst_pm = max(
        abs(phasespace.poisson_bracket(jp, jm, z) - 2.0 * j0(z)) for z in pts
    )
    worst_0p = max(abs(phasespace.poisson_bracket(j0, jp, z) - jp(z)) for z in pts)
    worst_0m = max(abs(phasespace.poisson_bracket(j0, jm, z) + jm(z)) for z in pts)
    out.append(_check("bracket-jplus-jminus", worst_pm, tol))
    out.append(_check("bracket-j0-jplus", worst_0p, tol))
    out.append(_check("bracket-j0-jminus", worst_0m, tol))

    worst = 0.0
    for z in pts:
        dH, dHb = phasespace._wirtinger(phasespace.hamiltonian, z, 1e-5)
        comp_l, comp_lb = phasespace.interior_product_components(z)
        worst = max(worst, abs(comp_l + dH), abs(comp_lb + dHb))
    out.append(_check("flow-contraction-vs-minus-dH", worst, tol))

    traj = phasespace.evolve(0.7 + 0.2j, 2.0 * math.pi, 400)
    j0_drift = max(abs(p.spin.j0 - traj[0].spin.j0) for p in traj)
    cas_drift = max(abs(p.spin.casimir - 0.25) for p in traj)
    out.append(_check("flow-j0-conservation", j0_drift, 1e-14))
    out.append(_check("flow-casimir", cas_drift, 1e-14))
    return out


def suite_appendixa(tol: float = 1e-6) -> list[CheckResult]:
    """Symbol losslessness, trace preservation, and the l=2 reconstruction."""
    out = []
    rng = np.random.default_rng(11)
    worst_rt = 0.0
    worst_tr = 0.0
    for l in (1, 2, 3):
        q = 1 << l
        for _ in range(100):
            M = rng.normal(size=(q, q)) + 1j * rng.normal(size=(q, q))
            sym = semiclassical.symbol_of(M, l)
            worst_rt = max(worst_rt, np.abs(semiclassical.reconstruct(sym) - M).max())
            worst_tr = max(
                worst_tr,
                abs(semiclassical.symbol_trace_integral(sym) - np.trace(M)),
            )
    out.append(_check("symbol-round-trip", worst_rt, 0.0))
    out.append(_check("symbol-trace-analytic", worst_tr, 1e-12))

    U2 = quantum.apply_gate_string(2)
    sym2 = semiclassical.symbol_of(U2, 2)
    out.append(
        _check(
            "gate-string-l2-trace-analytic",
            abs(semiclassical.symbol_trace_integral(sym2) - (1j - 1.0) / 2.0),
            1e-12,
        )
    )
    out.append(
        _check(
            "gate-string-l2-trace-quadrature",
            abs(oracles.quadrature_trace(U2, 2) - (1j - 1.0) / 2.0),
            tol,
        )
    )

    worst = 0.0
    for _ in range(100):
        lams = list(rng.normal(size=2) + 1j * rng.normal(size=2))
        worst = max(worst, abs(semiclassical.phi_symbol(lams) - sym2.evaluate(lams)))
    out.append(_check("gate-string-symbol-vs-generic-l2", worst, 1e-10))
    return out


def suite_appendixb(tol: float = 1e-12) -> list[CheckResult]:
    """Envelope bounds, symmetry, periodicity, and half-width monotonicity."""
    out = []
    worst_ends = 0.0
    worst_sym = 0.0
    for l in range(1, 17):
        worst_ends = max(
            worst_ends,
            abs(semiclassical.htilde(0.0, l) - 1.0),
            abs(semiclassical.htilde(math.pi, l) - 9.0**-l),
        )
        for z in np.linspace(0.0, math.pi, 37):
            worst_sym = max(
                worst_sym,
                abs(semiclassical.htilde(z, l) - semiclassical.htilde(-z, l)),
                abs(semiclassical.htilde(z, l) - semiclassical.htilde(z + 2 * math.pi, l)),
            )
    out.append(_check("envelope-endpoints", worst_ends, tol))
    out.append(_check("envelope-symmetry-periodicity", worst_sym, tol))

    zetas = [semiclassical.half_width_zeta(l) for l in range(1, 17)]
    monotone_violation = max(
        (zetas[i + 1] - zetas[i] for i in range(len(zetas) - 1)), default=-1.0
    )
    out.append(_check("half-width-strictly-decreasing", monotone_violation, -1e-15))
    out.append(
        _check("half-width-l1", abs(zetas[0] - math.acos(-1.0 / 8.0)), 1e-12)
    )
    return out


def run_suite(name: str) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    if name == "all":
        results = []
        for sub in SUITES[:-1]:
            results.extend(run_suite(sub))
        return results
    return {
        "gates": suite_gates,
        "integrals": suite_integrals,
        "phasespace": suite_phasespace,
        "appendixa": suite_appendixa,
        "appendixb": suite_appendixb,
    }[name]()
