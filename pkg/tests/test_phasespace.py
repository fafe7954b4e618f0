import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semishor.phasespace import (
    CoherentPoint,
    _wirtinger,
    evolve,
    hamiltonian,
    interior_product_components,
    j_functions,
    poisson_bracket,
    symplectic_density,
    trajectory_rows,
)

finite_lambdas = st.complex_numbers(
    max_magnitude=50.0, allow_nan=False, allow_infinity=False
)


def jp(z):
    return j_functions(z).jplus


def jm(z):
    return j_functions(z).jminus


def j0(z):
    return j_functions(z).j0


class TestJFunctions:
    def test_south_pole(self):
        spin = j_functions(0j)
        assert spin.j0 == pytest.approx(-0.5)
        assert spin.jplus == 0

    def test_equator(self):
        spin = j_functions(1 + 0j)
        assert spin.j0 == pytest.approx(0.0)
        assert spin.jplus == pytest.approx(0.5)
        assert spin.jminus == pytest.approx(0.5)

    def test_accepts_coherent_point(self):
        p = CoherentPoint.from_polar(2.0, math.pi / 3)
        assert j_functions(p) == j_functions(2.0 * cmath.exp(1j * math.pi / 3))

    @given(finite_lambdas)
    @settings(max_examples=300)
    def test_casimir_pinned(self, lam):
        assert j_functions(lam).casimir == pytest.approx(0.25, abs=1e-12)

    def test_j0_range(self):
        for lam in (0j, 0.5 + 0.5j, 3 - 2j, 40j):
            assert -0.5 <= j_functions(lam).j0 <= 0.5

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            j_functions(complex("nan"))

    def test_rejects_outside_chart(self):
        with pytest.raises(ValueError):
            j_functions(1e9 + 0j)


class TestSymplecticDensity:
    def test_origin(self):
        assert symplectic_density(0j) == 1.0

    def test_unit_circle(self):
        assert symplectic_density(1j) == pytest.approx(0.25)

    @given(finite_lambdas)
    @settings(max_examples=100)
    def test_inverse_product(self, lam):
        w = symplectic_density(lam)
        assert w * (1 + abs(lam) ** 2) ** 2 == pytest.approx(1.0, abs=1e-14)


class TestHamiltonian:
    def test_south_pole(self):
        assert hamiltonian(0j) == pytest.approx(-0.5)

    def test_equator(self):
        assert hamiltonian(1 + 0j) == pytest.approx(0.0)

    def test_equals_j0_everywhere(self):
        rng = np.random.default_rng(5)
        for _ in range(1000):
            lam = complex(rng.normal(), rng.normal())
            assert hamiltonian(lam) == j_functions(lam).j0


class TestPoissonBracket:
    def test_antisymmetry_diagonal(self):
        assert poisson_bracket(jp, jp, 0.4 + 0.1j) == 0

    def test_plus_minus_at_origin(self):
        assert poisson_bracket(jp, jm, 0j) == pytest.approx(-1.0, abs=1e-8)

    def test_algebra_at_random_points(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            z = complex(rng.normal(), rng.normal())
            assert poisson_bracket(jp, jm, z) == pytest.approx(
                2 * j0(z), abs=1e-6
            )
            assert poisson_bracket(j0, jp, z) == pytest.approx(jp(z), abs=1e-6)
            assert poisson_bracket(j0, jm, z) == pytest.approx(-jm(z), abs=1e-6)

    def test_leibniz(self):
        rng = np.random.default_rng(23)

        def g(z):
            return z**2 + z.conjugate()

        def h(z):
            return 1.0 + z * z.conjugate()

        def gh(z):
            return g(z) * h(z)

        for _ in range(20):
            z = complex(rng.normal(scale=0.5), rng.normal(scale=0.5))
            lhs = poisson_bracket(jp, gh, z)
            rhs = g(z) * poisson_bracket(jp, h, z) + poisson_bracket(jp, g, z) * h(z)
            assert lhs == pytest.approx(rhs, abs=1e-5)

    def test_step_validation(self):
        with pytest.raises(ValueError):
            poisson_bracket(jp, jm, 0j, step=1e-2)


class TestFlowContraction:
    def test_matches_minus_dh(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            z = complex(rng.normal(), rng.normal())
            dh, dhb = _wirtinger(hamiltonian, z, 1e-5)
            comp_l, comp_lb = interior_product_components(z)
            assert comp_l == pytest.approx(-dh, abs=1e-6)
            assert comp_lb == pytest.approx(-dhb, abs=1e-6)


class TestEvolve:
    def test_quarter_turn_endpoint(self):
        traj = evolve(1 + 0j, math.pi / 2, 100)
        assert traj[-1].lam == pytest.approx(1j, abs=1e-12)
        assert all(abs(p.spin.j0) < 1e-15 for p in traj)

    def test_origin_fixed_point(self):
        traj = evolve(0j, 5.0, 10)
        assert all(p.lam == 0 for p in traj)

    def test_conservation(self):
        traj = evolve(0.7 - 0.3j, 2 * math.pi, 500)
        j0_0 = traj[0].spin.j0
        for p in traj:
            assert p.spin.j0 == pytest.approx(j0_0, abs=1e-15)
            assert p.spin.casimir == pytest.approx(0.25, abs=1e-14)

    def test_jplus_rotation_rate(self):
        dphi = 1e-4
        traj = evolve(0.9 + 0.2j, dphi * 2, 2)
        deriv = (traj[2].spin.jplus - traj[0].spin.jplus) / (2 * dphi)
        assert deriv == pytest.approx(-1j * traj[1].spin.jplus, abs=1e-6)

    def test_step_count(self):
        assert len(evolve(1j, 1.0, 7)) == 8
        with pytest.raises(ValueError):
            evolve(1j, 1.0, 0)

    def test_row_schema(self):
        rows = trajectory_rows(evolve(1 + 1j, 1.0, 3))
        assert len(rows) == 4 and len(rows[0]) == 8
        assert rows[0][0] == 0 and rows[-1][1] == pytest.approx(1.0)
