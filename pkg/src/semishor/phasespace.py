"""Classical phase space of a spin-1/2 coherent state.

The complex coordinate lambda is a stereographic chart on the radius-1/2
sphere. J-functions, the symplectic density from the Kahler potential
ln(1 + |lambda|^2), finite-difference Poisson brackets, the precession
Hamiltonian, and the rotation flow lambda(phi) = lambda_0 e^{i phi}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

CHART_LIMIT = 1e8  # |lambda| beyond this is out of the stereographic chart

Field = Callable[[complex], complex]


@dataclass(frozen=True)
class CoherentPoint:
    """A point of the classical phase space, one complex chart coordinate."""

    lam: complex

    @property
    def r(self) -> float:
        return abs(self.lam)

    @property
    def phi(self) -> float:
        return cmath.phase(self.lam) % (2.0 * math.pi)

    @classmethod
    def from_polar(cls, r: float, phi: float) -> "CoherentPoint":
        if r < 0:
            raise ValueError("r must be >= 0")
        return cls(r * cmath.exp(1j * phi))


@dataclass(frozen=True)
class SpinTriple:
    """Coherent-state expectation values of the spin generators."""

    j0: float
    jplus: complex

    @property
    def jminus(self) -> complex:
        return self.jplus.conjugate()

    @property
    def casimir(self) -> float:
        """jplus*jminus + j0^2; pinned to 1/4 for spin 1/2."""
        return abs(self.jplus) ** 2 + self.j0**2


@dataclass(frozen=True)
class TrajectoryPoint:
    step: int
    phi: float
    lam: complex
    spin: SpinTriple


def _as_lambda(p) -> complex:
    """Accept either a bare complex coordinate or a CoherentPoint."""
    lam = complex(p.lam) if isinstance(p, CoherentPoint) else complex(p)
    if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
        raise ValueError("lambda must be finite")
    if abs(lam) > CHART_LIMIT:
        raise ValueError(f"|lambda| > {CHART_LIMIT:g} is outside the chart")
    return lam


def j_functions(p) -> SpinTriple:
    """J0 = -(1/2)(1-|l|^2)/(1+|l|^2), J+ = conj(l)/(1+|l|^2)."""
    lam = _as_lambda(p)
    r2 = abs(lam) ** 2
    return SpinTriple(
        j0=-0.5 * (1.0 - r2) / (1.0 + r2),
        jplus=lam.conjugate() / (1.0 + r2),
    )


def symplectic_density(p) -> float:
    """(1 + |lambda|^2)^(-2), the mixed second derivative of the Kahler potential."""
    lam = _as_lambda(p)
    return (1.0 + abs(lam) ** 2) ** -2


def hamiltonian(p) -> float:
    """The precession Hamiltonian; identically equal to J0."""
    lam = _as_lambda(p)
    r2 = abs(lam) ** 2  # identical expression to j_functions, so H == J0 exactly
    return -0.5 * (1.0 - r2) / (1.0 + r2)


def _wirtinger(f: Field, lam: complex, step: float) -> tuple[complex, complex]:
    """(d/d lambda, d/d lambda-bar) by central differences in x and y."""
    fx = (f(lam + step) - f(lam - step)) / (2.0 * step)
    fy = (f(lam + 1j * step) - f(lam - 1j * step)) / (2.0 * step)
    return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)


def poisson_bracket(f: Field, g: Field, p, step: float = 1e-5) -> complex:
    """{f, g} = (1+|l|^2)^2 (d_l f d_lbar g - d_lbar f d_l g), error O(step^2).

    The sign is normalized so that {J+, J-} = 2 J0 and {J0, J+-} = +- J+-.
    """
    lam = _as_lambda(p)
    if not 1e-7 <= step <= 1e-3:
        raise ValueError("step must lie in [1e-7, 1e-3]")
    df, dfb = _wirtinger(f, lam, step)
    dg, dgb = _wirtinger(g, lam, step)
    val = df * dgb - dfb * dg
    return (1.0 + abs(lam) ** 2) ** 2 * val


def interior_product_components(p) -> tuple[complex, complex]:
    """(d lambda, d lambda-bar) components of i_v omega for the rotation flow.

    With the generator v^lambda = i lambda / 2 of lambda(phi) = lambda_0
    e^{i phi} and the form 2i (1+|lambda|^2)^{-2} dlambda ^ dlambda-bar,
    the contraction is (-lbar w, -l w), which equals -dH component-wise.
    """
    lam = _as_lambda(p)
    w = symplectic_density(lam)
    return -lam.conjugate() * w, -lam * w


def evolve(p0, phi_total: float, steps: int) -> list[TrajectoryPoint]:
    """Sample the precession flow lambda(phi) = lambda_0 e^{i phi} uniformly.

    Returns steps + 1 points including both endpoints; |lambda| and J0 are
    conserved exactly by construction.
    """
    lam0 = _as_lambda(p0)
    if steps < 1:
        raise ValueError("steps must be >= 1")
    out = []
    for n in range(steps + 1):
        phi = phi_total * n / steps
        lam = lam0 * cmath.exp(1j * phi)
        out.append(TrajectoryPoint(step=n, phi=phi, lam=lam, spin=j_functions(lam)))
    return out


TRAJECTORY_COLUMNS = [
    "step",
    "phi",
    "re_lambda",
    "im_lambda",
    "J0",
    "re_Jplus",
    "im_Jplus",
    "casimir",
]


def trajectory_rows(points: list[TrajectoryPoint]) -> list[list[float]]:
    """Flatten a trajectory into the CSV export schema."""
    return [
        [
            p.step,
            p.phi,
            p.lam.real,
            p.lam.imag,
            p.spin.j0,
            p.spin.jplus.real,
            p.spin.jplus.imag,
            p.spin.casimir,
        ]
        for p in points
    ]
