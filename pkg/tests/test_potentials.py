"""Layer-potential closed forms and the N-P spectrum, both routes."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from conftest import random_surface_angles
from npshell.harmonics import ModeIndex, a_coeff, eval_trace_mode, _unit_vectors
from npshell.kelvin import LameParams
from npshell.oracle import FDStencil, fd_traction
from npshell.potentials import (
    CoefficientSpectrum,
    elastic_sl_on_M,
    elastic_sl_on_N,
    elastic_sl_on_T,
    elastic_sl_t_coeff,
    eval_elastic_sl_T,
    np_apply,
    np_apply_decomposed,
    np_decomposed_multiplier,
    np_eigenvalue,
    np_eigenvalue_limit,
    scalar_sl_multiplier,
)


class TestEigenvalues:
    def test_t_family(self, lame):
        assert_allclose(np_eigenvalue("T", 1, lame), 0.5)
        assert_allclose(np_eigenvalue("T", 2, lame), 0.3)
        assert_allclose(np_eigenvalue("T", 3, lame), 3 / 14)

    def test_m_n_families(self, lame):
        assert_allclose(np_eigenvalue("M", 2, lame), 1 / 90)
        assert_allclose(np_eigenvalue("N", 2, lame), 1 / 6)
        assert_allclose(np_eigenvalue("N", 3, lame), 13 / 70)

    def test_limits(self, lame):
        assert np_eigenvalue_limit("T", lame) == 0.0
        assert_allclose(np_eigenvalue_limit("M", lame), -1 / 6)
        assert_allclose(np_eigenvalue_limit("N", lame), 1 / 6)
        assert_allclose(np_eigenvalue("M", 400, lame), -1 / 6, atol=1e-3)
        assert_allclose(np_eigenvalue("N", 400, lame), 1 / 6, atol=1e-3)

    def test_radius_independent_signature(self, lame):
        # eigenvalues carry no radius argument at all
        assert np_eigenvalue("T", 5, lame) == 3 / 22

    def test_only_t_accumulates_at_zero(self, lame, lame21):
        # the M and N sequences stay away from 0; T tends to 0
        for lp in (lame, lame21):
            lim = abs(np_eigenvalue_limit("M", lp))
            for n in range(30, 101, 10):
                assert abs(np_eigenvalue("T", n, lp)) < 0.03
                assert abs(np_eigenvalue("M", n, lp)) > 0.5 * lim
                assert abs(np_eigenvalue("N", n, lp)) > 0.5 * lim

    def test_noncompactness_decay_rate(self, lame, lame21):
        # |xi_M^n - limit| <= C / n with a fitted constant; n * dev tends to |limit|
        for lp in (lame, lame21):
            lim = np_eigenvalue_limit("M", lp)
            devs = [abs(np_eigenvalue("M", n, lp) - lim) * n for n in range(1, 101)]
            fitted_c = max(devs)
            assert all(d <= fitted_c + 1e-15 for d in devs)
            assert fitted_c <= 6 * abs(lim)
            assert_allclose(devs[99], abs(lim), rtol=0.05)


class TestScalarSLMultipliers:
    def test_worked_values(self):
        assert_allclose(scalar_sl_multiplier(ModeIndex("T", 2, 1), 1.0), -0.2)
        assert_allclose(scalar_sl_multiplier(ModeIndex("M", 2, 1), 1.0), -1 / 3)
        assert_allclose(scalar_sl_multiplier(ModeIndex("N", 3, 1), 1.0), -1 / 7)

    @settings(deadline=None)
    @given(r0=st.floats(0.1, 10.0), n=st.integers(1, 20))
    def test_radius_linearity(self, r0, n):
        for fam in ("T", "M", "N"):
            idx = ModeIndex(fam, n, 0)
            assert_allclose(
                scalar_sl_multiplier(idx, r0), r0 * scalar_sl_multiplier(idx, 1.0), rtol=1e-15
            )

    def test_invalid_radius(self):
        with pytest.raises(ValueError):
            scalar_sl_multiplier(ModeIndex("T", 1, 0), 0.0)


class TestElasticSLOnT:
    def test_interior_coefficient(self, lame):
        act = elastic_sl_on_T(2, 0, 1.0, lame)
        assert_allclose(act.interior_coeff, -0.2)
        assert act.decay_degree == 3

    def test_continuity_at_boundary(self, lame, rng):
        theta, phi = random_surface_angles(rng, 8)
        for n, m, r0 in [(2, 0, 1.0), (3, 2, 0.7), (5, -1, 2.0)]:
            nu = _unit_vectors(theta, phi)
            inner = eval_elastic_sl_T(n, m, r0, lame, r0 * (1 - 1e-12) * nu)
            outer = eval_elastic_sl_T(n, m, r0, lame, r0 * (1 + 1e-12) * nu)
            assert_allclose(inner, outer, rtol=1e-9, atol=1e-12)

    def test_exterior_decay(self, lame):
        n, m = 2, 0
        direction = np.array([0.3, 0.5, 0.81])
        direction /= np.linalg.norm(direction)
        v1 = eval_elastic_sl_T(n, m, 1.0, lame, 2.0 * direction)
        v2 = eval_elastic_sl_T(n, m, 1.0, lame, 4.0 * direction)
        ratio = np.linalg.norm(v2) / np.linalg.norm(v1)
        assert_allclose(ratio, 2.0 ** -(n + 1), rtol=1e-12)

    def test_traction_jump_equals_density(self, lame, lame21, rng):
        # exterior minus interior traction of the single layer is the density;
        # each one-sided limit is the FD traction of the smooth representation
        from npshell.harmonics import eval_solid_mode, grad_irregular_solid_harmonic
        from npshell.potentials import elastic_sl_on_T

        theta, phi = random_surface_angles(rng, 1)
        for lp in (lame, lame21):
            for n, m, r0 in [(2, 1, 1.0), (4, 0, 0.8)]:
                x = r0 * _unit_vectors(theta, phi)[0]
                act = elastic_sl_on_T(n, m, r0, lp)
                idx = ModeIndex("T", n, m)
                f_in = lambda p: act.interior_coeff * eval_solid_mode(idx, lp, p)
                f_out = lambda p: act.exterior_coeff * np.cross(
                    grad_irregular_solid_harmonic(n, m, p), p
                )
                stencil = FDStencil(h=1e-5 * r0, order=2)
                t_in = fd_traction(f_in, lp, x, stencil=stencil)
                t_out = fd_traction(f_out, lp, x, stencil=stencil)
                dens = eval_trace_mode(idx, lp, theta, phi)[0]
                assert_allclose(t_out - t_in, dens, rtol=5e-6, atol=1e-8)


class TestElasticSLOnMN:
    def test_m_worked_value(self, lame):
        assert_allclose(elastic_sl_on_M(2, 0, 1.0, lame), -11 / 45)

    def test_m_eigen_consistency(self, lame, lame21):
        # replay of the jump algebra: 2 c mu (n-1) + 1/2 reproduces the eigenvalue
        for lp in (lame, lame21, LameParams(3.3, 0.7)):
            for n in range(1, 9):
                c = elastic_sl_on_M(n, 0, 1.0, lp)
                assert_allclose(2 * c * lp.mu * (n - 1) + 0.5, np_eigenvalue("M", n, lp), rtol=1e-13)

    def test_m_large_lambda_limit(self):
        lp = LameParams(1e12, 1.0)
        for n in (2, 4):
            expect = -(0.5 + 3 / (2 * (2 * n - 1))) / (lp.mu * (2 * n + 1))
            assert_allclose(elastic_sl_on_M(n, 0, 1.0, lp), expect, rtol=1e-9)

    def test_n_worked_value(self, lame):
        assert_allclose(elastic_sl_on_N(3, 0, 1.0, lame), -3 / 35)

    def test_n_eigen_consistency(self, lame, lame21):
        # traction factor mu (2(2k+1)/a_{k+1} - 3) feeds the jump relation
        for lp in (lame, lame21, LameParams(0.4, 1.9)):
            for n_mode in range(2, 9):
                k = n_mode - 1
                c = elastic_sl_on_N(n_mode, 0, 1.0, lp)
                a = a_coeff(n_mode, lp)
                xi = c * lp.mu * (2 * (2 * k + 1) / a - 3) + 0.5
                assert_allclose(xi, np_eigenvalue("N", n_mode, lp), rtol=1e-13)

    def test_n_small_mu_limit(self):
        for mu in (1e-4, 1e-6):
            lp = LameParams(1.0, mu)
            k = 2  # mode N_3
            val = elastic_sl_on_N(3, 0, 1.0, lp) * lp.mu
            assert_allclose(val, -k / ((2 * k + 3) * (2 * k + 1)), rtol=1e-3)


class TestNPApply:
    def test_single_mode(self, lame):
        spec = CoefficientSpectrum({ModeIndex("T", 2, 0): 1.0})
        out = np_apply(spec, lame, 1.0)
        assert_allclose(out[ModeIndex("T", 2, 0)], 0.3)

    def test_empty(self, lame):
        out = np_apply(CoefficientSpectrum(), lame, 1.0)
        assert len(out) == 0

    def test_no_cross_coupling(self, lame):
        spec = CoefficientSpectrum(
            {
                ModeIndex("T", 2, 0): 2.0,
                ModeIndex("M", 3, 1): 1.0 + 1.0j,
                ModeIndex("N", 2, 0): -0.5,
            }
        )
        out = np_apply(spec, lame, 1.0)
        assert_allclose(out[ModeIndex("T", 2, 0)], 2.0 * 0.3)
        assert_allclose(out[ModeIndex("M", 3, 1)], (1 + 1j) * np_eigenvalue("M", 3, lame))
        assert_allclose(out[ModeIndex("N", 2, 0)], -0.5 / 6)
        assert len(out) == 3


class TestDecomposedRoute:
    def test_t_coefficient_form(self, lame):
        # the decomposition reproduces 3/(2(2n+1)) on the rotational family
        for n in range(1, 8):
            mult = np_decomposed_multiplier(ModeIndex("T", n, 0), lame)
            assert_allclose(mult, 3 / (2 * (2 * n + 1)), rtol=1e-14)

    def test_matches_direct_route(self, lame, lame21):
        for lp in (lame, lame21, LameParams(2.7, 0.4), LameParams(-4 + 0.01j, -4 + 0.01j)):
            for fam in ("T", "M", "N"):
                for n in range(1, 13):
                    idx = ModeIndex(fam, n, 0)
                    d = np_decomposed_multiplier(idx, lp)
                    e = np_eigenvalue(fam, n, lp)
                    assert abs(d - e) <= 1e-10 * abs(e)

    def test_spectrum_level_equality(self, lame):
        spec = CoefficientSpectrum(
            {ModeIndex(f, n, 0): 1.0 + 0.5j for f in "TMN" for n in range(1, 13)}
        )
        direct = np_apply(spec, lame, 1.0)
        decomposed = np_apply_decomposed(spec, lame, 1.0)
        for idx, amp in direct.items():
            assert abs(decomposed[idx] - amp) <= 1e-10 * abs(amp)

    def test_radius_drops_out(self, lame21):
        idx = ModeIndex("M", 4, 0)
        vals = [np_decomposed_multiplier(idx, lame21, r0) for r0 in (0.5, 1.0, 2.0)]
        assert_allclose(vals, vals[0], rtol=1e-14)


class TestCoefficientSpectrum:
    def test_ordering_deterministic(self):
        spec = CoefficientSpectrum(
            {ModeIndex("N", 2, 0): 1.0, ModeIndex("T", 1, -1): 2.0, ModeIndex("T", 1, 1): 3.0}
        )
        keys = [idx for idx, _ in spec.items()]
        assert keys == [ModeIndex("T", 1, -1), ModeIndex("T", 1, 1), ModeIndex("N", 2, 0)]

    def test_missing_is_zero(self):
        spec = CoefficientSpectrum()
        assert spec[ModeIndex("T", 3, 0)] == 0.0


class TestSpectrumHelper:
    def test_np_spectrum_rows(self, lame):
        from npshell.potentials import np_spectrum

        rows = np_spectrum(3, lame, families=("T",))
        assert [(r.family, r.n) for r in rows] == [("T", 1), ("T", 2), ("T", 3)]
        assert rows[1].value == pytest.approx(0.3)


class TestJumpRelations:
    """The tabulated one-sided limits reproduce the classical jump formulas:
    the tangential part of curl S[psi] jumps by -psi across the surface, and
    grad S[g] jumps by g nu."""

    def _nu_cross(self, pair, n):
        # nu x (a grad_S Y + b Y nu) = -a T_n: tangential pair -> T coefficient
        return -pair[0]

    def test_curl_jump_is_minus_density(self, lame, lame21):
        from npshell.potentials import curl_grad_limits

        for lp in (lame, lame21):
            for fam, n in (("M", 2), ("M", 5), ("N", 3), ("N", 6)):
                idx = ModeIndex(fam, n, 0)
                lim = curl_grad_limits(idx, lp)
                jump = lim["curl_ex"] - lim["curl_in"]
                # density of the curl layer is nu x mode
                if fam == "M":
                    psi_t_coeff = -1.0  # nu x M_n = -T_n
                else:
                    k = n - 1
                    psi_t_coeff = a_coeff(n, lp) / (2 * k + 1)  # nu x N_n = beta T_k
                # nu x (jump of curl) must equal -psi
                assert abs(self._nu_cross(jump, n) - (-psi_t_coeff)) < 1e-14
                # the normal component of the curl is continuous
                assert abs(jump[1]) < 1e-14

    def test_grad_jump_is_normal_times_density(self, lame, lame21):
        from npshell.potentials import curl_grad_limits

        for lp in (lame, lame21):
            for fam, n in (("M", 2), ("M", 5), ("N", 3), ("N", 6)):
                idx = ModeIndex(fam, n, 0)
                lim = curl_grad_limits(idx, lp)
                jump = lim["grad_ex"] - lim["grad_in"]
                # scalar density is nu . mode
                if fam == "M":
                    g_coeff = float(n)
                else:
                    k = n - 1
                    g_coeff = a_coeff(n, lp) * (k + 1) / (2 * k + 1)
                assert abs(jump[1] - g_coeff) < 1e-14  # normal part jumps by g
                assert abs(jump[0]) < 1e-14  # tangential part continuous

    def test_t_family_curl_jump(self, lame):
        from npshell.potentials import curl_grad_limits

        # density nu x T_n = grad_S Y_n; the curl limits live on T itself and
        # nu x (jump) = -grad_S Y requires jump coefficient -1 on T... the
        # tangential T-coefficient jump equals -1 exactly:
        for n in (1, 4, 8):
            lim = curl_grad_limits(ModeIndex("T", n, 0), lame)
            assert abs((lim["curl_ex"] - lim["curl_in"])[0] - (-1.0)) < 1e-14
