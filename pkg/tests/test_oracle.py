import math

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from solvable.errors import QuadratureNoConverge
from solvable.expr import parse
from solvable.oracle import (
    eigenvalues_below, fd_hamiltonian, fd_hamiltonian_indicial, integrate,
    residual_norm, richardson_eigenvalues, sturm_count,
)


class TestIntegrate:
    def test_gaussian(self):
        res = integrate(lambda s: np.exp(-s * s), (-math.inf, math.inf),
                        1e-10)
        assert res.value == pytest.approx(math.sqrt(math.pi), abs=1e-10)
        assert res.error_estimate <= 1e-10

    def test_unit_box(self):
        res = integrate(lambda s: np.ones_like(s), (0.0, 1.0), 1e-12)
        assert res.value == pytest.approx(1.0, abs=1e-13)

    def test_gamma_two(self):
        res = integrate(lambda s: s * np.exp(-s), (0.0, math.inf), 1e-10)
        assert res.value == pytest.approx(1.0, abs=1e-10)

    def test_polynomial_tail(self):
        res = integrate(lambda s: (1.0 + s) ** -3, (0.0, math.inf), 1e-10)
        assert res.value == pytest.approx(0.5, abs=1e-10)

    def test_integrable_endpoint_singularity(self):
        res = integrate(lambda s: 1.0 / np.sqrt(s), (0.0, 1.0), 1e-8)
        assert res.value == pytest.approx(2.0, abs=1e-8)

    def test_expr_input(self):
        res = integrate(parse("exp(-x)"), (0.0, math.inf), 1e-10)
        assert res.value == pytest.approx(1.0, abs=1e-10)

    def test_scalar_callable_input(self):
        res = integrate(lambda s: math.exp(-s * s), (-math.inf, math.inf),
                        1e-9)
        assert res.value == pytest.approx(math.sqrt(math.pi), abs=1e-9)

    def test_divergent_integral_raises(self):
        with pytest.raises(QuadratureNoConverge):
            integrate(lambda s: 1.0 / (1.0 + s), (0.0, math.inf), 1e-8)

    def test_error_estimate_decreases_under_refinement(self):
        f = lambda s: np.exp(-s * s) * np.cos(3 * s)
        coarse = integrate(f, (-math.inf, math.inf), 1e-6)
        fine = integrate(f, (-math.inf, math.inf), 1e-12)
        assert fine.error_estimate < coarse.error_estimate
        assert fine.nodes > coarse.nodes


class TestFDHamiltonian:
    def test_oscillator_spectrum(self):
        ham = fd_hamiltonian(lambda x: x * x - 1.0, -10.0, 10.0, 4000)
        got = eigenvalues_below(ham, 9.0)
        assert len(got) == 5
        for ell, e in enumerate(got):
            assert e == pytest.approx(2.0 * ell, abs=5e-4)

    def test_particle_in_a_box(self):
        ham = fd_hamiltonian(lambda x: np.zeros_like(x), 0.0, math.pi, 2000)
        got = eigenvalues_below(ham, 10.0)
        assert [round(e) for e in got] == [1, 4, 9]
        for e, want in zip(got, (1.0, 4.0, 9.0)):
            assert e == pytest.approx(want, abs=1e-3)

    def test_positive_operator_empty_list(self):
        ham = fd_hamiltonian(lambda x: np.zeros_like(x), 0.0, 1.0, 16)
        assert eigenvalues_below(ham, -1.0) == []

    def test_matches_lapack(self):
        ham = fd_hamiltonian(lambda x: 0.25 * x ** 4 - 2 * x * x,
                             -8.0, 8.0, 1000)
        ours = eigenvalues_below(ham, 2.0)
        off = np.full(len(ham.diag) - 1, ham.off)
        lo = float(np.min(ham.diag)) + 2.0 * ham.off - 1.0
        ref = eigh_tridiagonal(ham.diag, off, select="v",
                               select_range=(lo, 2.0))[0]
        assert len(ours) == len(ref)
        assert np.allclose(ours, ref, atol=1e-9)

    def test_order_of_accuracy(self):
        # halving h reduces the eigenvalue error by ~4 (h^2 stencil)
        errs = {}
        for n in (500, 1000):
            ham = fd_hamiltonian(lambda x: x * x - 1.0, -10.0, 10.0, n)
            got = eigenvalues_below(ham, 7.0)
            errs[n] = [abs(e - 2.0 * ell) for ell, e in enumerate(got)]
        for e_coarse, e_fine in zip(errs[500], errs[1000]):
            assert 3.5 <= e_coarse / e_fine <= 4.5

    def test_sturm_count_monotone_with_unit_jumps(self):
        ham = fd_hamiltonian(lambda x: x * x - 1.0, -10.0, 10.0, 800)
        evs = eigenvalues_below(ham, 9.0)
        shifts = np.sort(np.concatenate([
            np.array(evs) - 1e-6, np.array(evs) + 1e-6, [-5.0, 9.0]]))
        counts = sturm_count(ham, shifts)
        assert np.all(np.diff(counts) >= 0)
        for e in evs:
            below, above = sturm_count(ham, [e - 1e-6, e + 1e-6])
            assert above - below == 1

    def test_richardson_improves_oscillator(self):
        fine, coarse, extrap = richardson_eigenvalues(
            lambda x: x * x - 1.0, -10.0, 10.0, 2000, 7.0)
        for ell, (f, e) in enumerate(zip(fine, extrap)):
            assert abs(e - 2.0 * ell) < abs(f - 2.0 * ell)

    def test_indicial_fitted_matches_plain_for_regular_potential(self):
        # gamma = 0 or 1 has no singular part: r^gamma curvature is zero
        plain = fd_hamiltonian(lambda x: x * x, 1.0, 5.0, 200)
        fitted = fd_hamiltonian_indicial(lambda x: x * x, 1.0, 1.0, 5.0, 200)
        assert np.allclose(plain.diag, fitted.diag, rtol=1e-12)


class TestSingularContainment:
    def test_matched_fd_contains_generated_energies_coarsely(self):
        # Pins what the indicial-fitted, boundary-matched scheme actually
        # achieves for the singular cube-root system on the acceptance
        # grid: containment to a few times 1e-2, not the 2e-3 the
        # acceptance criterion asks for (limit-circle endpoint; see the
        # acceptance module).  Guards against regressions in the FD
        # machinery without overstating its accuracy.
        from solvable.expr import VAR, mul, pow_, simplify
        from solvable.generator import (
            boundary_ratio, cuberoot_potential, solve_params_quantsys,
        )

        lo, hi, n_sub = 1e-3, 40.0, 8000
        h = (hi - lo) / n_sub
        regular = simplify(cuberoot_potential(1.0, 0.0)
                           - mul(-5.0 / 36.0, pow_(VAR, -2)))
        for n in range(3):
            pair = solve_params_quantsys(1.0, 0.0, n, "+")
            ham = fd_hamiltonian_indicial(
                regular, 1.0 / 6.0, lo, hi, n_sub,
                left_ratio=boundary_ratio(pair, lo, lo + h))
            spectrum = eigenvalues_below(ham, pair.energy + 1.5)
            err = min(abs(e - pair.energy) for e in spectrum)
            assert err <= 5e-2


class TestResidualNorm:
    def test_exact_oscillator_pair(self):
        from solvable.families import FamilySpec, SigmaCase
        from solvable.schrodinger import potential

        fam = FamilySpec(SigmaCase.ONE, -2.0, 0.0)
        system = potential(fam, 0, attach_ells=(0,))
        assert residual_norm(system, 0) < 1e-10

    def test_wrong_eigenvalue_flagged(self):
        from solvable.families import FamilySpec, SigmaCase
        from solvable.schrodinger import potential, SchrodingerSystem

        fam = FamilySpec(SigmaCase.ONE, -2.0, 0.0)
        base = potential(fam, 0)
        bad = SchrodingerSystem(base.potential, base.interval,
                                ((0.1, parse("exp(-x^2/2)")),))
        assert residual_norm(bad, 0) > 1e-3

    def test_generated_pair(self):
        from solvable.generator import solve_params_quantsys

        pair = solve_params_quantsys(1.0, 0.0, 0, "+")
        assert residual_norm(pair) < 1e-8
