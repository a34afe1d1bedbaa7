import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bedwave.errors import MultipleRootsWarning, NoSignChange, SupercriticalityViolation
from bedwave.numerics import SampledFunction
from bedwave.rayleigh import (
    WaveParameters,
    bifurcation_mismatch,
    bifurcation_speed,
    burns_speed,
    closed_form_burns,
    closed_form_dispersion,
    solve_cauchy,
    y_grid,
)
from bedwave.shear import ConstantVorticity, Poiseuille, TabulatedProfile, ZeroFlow, sample_profile

G = 9.81
# closed forms evaluated independently at 30 digits
C0_K1 = 2.73335666716329823952
C0_K10 = 0.99045443911167191109
C_GAMMA1_BED = 3.37895745540412597748
C_GAMMA1_SURFACE = 2.37895745540412597748
BURNS_ZERO = 3.13209195267316505393
BURNS_GAMMA1 = 3.67175030543074118579
BURNS_POISEUILLE = 3.83786806553770788272


class TestParameters:
    @pytest.mark.parametrize("kw", [dict(g=0), dict(h0=-1), dict(k=0), dict(c=np.inf), dict(eps=1.5), dict(eps=-0.1)])
    def test_invalid(self, kw):
        base = dict(h0=1.0, c=2.0)
        base.update(kw)
        with pytest.raises(ValueError):
            WaveParameters(**base)


class TestCauchy:
    def test_zero_profile_first_order(self):
        b, c = 0.1, C0_K1
        sol = solve_cauchy(ZeroFlow(1.0), WaveParameters(1.0, c), 1, b / c)
        y = sol.grid.coords
        np.testing.assert_allclose(sol.phi.values, b / c * np.sinh(y), rtol=0, atol=1e-14)
        assert sol.phi.values[0] == 0.0 and sol.dphi.values[0] == b / c

    def test_zero_slope_gives_zero(self):
        sol = solve_cauchy(Poiseuille(1.0), WaveParameters(1.0, 3.0), 1, 0.0)
        assert not sol.phi.values.any()

    def test_zero_profile_second_mode(self):
        b, c = 0.1, C0_K1
        sol = solve_cauchy(ZeroFlow(1.0), WaveParameters(1.0, c), 2, -(b**2) / (4 * c**3))
        np.testing.assert_allclose(sol.phi.values, -(b**2) / (8 * c**3) * np.sinh(2 * sol.grid.coords), atol=1e-15)

    def test_subcritical(self):
        with pytest.raises(SupercriticalityViolation):
            solve_cauchy(Poiseuille(1.0), WaveParameters(1.0, 1.0), 1, 1.0)

    @pytest.mark.parametrize("profile", [ZeroFlow(1.0), ConstantVorticity(0.7, 1.0), Poiseuille(1.0)])
    def test_residual_small(self, profile):
        c = profile.max_velocity() + 2.5
        sol = solve_cauchy(profile, WaveParameters(1.0, c, k=1.3), 2, 0.4)
        assert np.max(np.abs(sol.residual(profile))) <= 1e-6 * np.max(np.abs(sol.phi.values))

    def test_forced_residual(self):
        prof = Poiseuille(1.0)
        grid = y_grid(1.0)
        forcing = SampledFunction(grid, np.cos(3 * grid.coords))
        sol = solve_cauchy(prof, WaveParameters(1.0, 3.0), 1, 0.2, forcing)
        assert np.max(np.abs(sol.residual(prof))) <= 1e-6 * np.max(np.abs(sol.phi.values))

    @settings(max_examples=25, deadline=None)
    @given(alpha=st.floats(-50, 50).filter(lambda a: abs(a) > 1e-3))
    def test_linearity(self, alpha):
        prof = Poiseuille(1.0)
        params = WaveParameters(1.0, 2.5)
        grid = y_grid(1.0, 400)
        forcing = SampledFunction(grid, np.exp(-grid.coords))
        base = solve_cauchy(prof, params, 2, 0.3, forcing, n_steps=400)
        scaled = solve_cauchy(prof, params, 2, 0.3 * alpha, SampledFunction(grid, alpha * forcing.values), n_steps=400)
        err = np.max(np.abs(scaled.phi.values - alpha * base.phi.values)) / np.max(np.abs(alpha * base.phi.values))
        assert err <= 1e-10


class TestBifurcation:
    def test_zero(self):
        assert abs(bifurcation_speed(ZeroFlow(1.0), G, 1.0, 1.0) - C0_K1) < 1e-8

    def test_constant_vorticity_bed_frame(self):
        c = bifurcation_speed(ConstantVorticity(1.0, 1.0), G, 1.0, 1.0)
        assert abs(c - C_GAMMA1_BED) < 1e-8
        # relative to the surface current this is the classical expression
        assert abs((c - 1.0) - C_GAMMA1_SURFACE) < 1e-8

    def test_short_wave(self):
        assert abs(bifurcation_speed(ZeroFlow(1.0), G, 1.0, 10.0) - C0_K10) < 1e-6

    def test_long_wave_limit(self):
        c = bifurcation_speed(ZeroFlow(1.0), G, 1.0, 1e-3)
        assert abs(c - burns_speed(ZeroFlow(1.0), G)) < 1e-4

    def test_closed_form_frames(self):
        assert closed_form_dispersion("zero", G, 1, 1) == pytest.approx(C0_K1, abs=1e-14)
        assert closed_form_dispersion("constant", G, 1, 1, 1.0) == pytest.approx(C_GAMMA1_BED, abs=1e-14)
        assert closed_form_dispersion("constant", G, 1, 1, 1.0, frame="surface") == pytest.approx(C_GAMMA1_SURFACE, abs=1e-14)

    @pytest.mark.parametrize("h0,k", [(0.5, 2.0), (2.0, 0.5), (1.0, 5.0)])
    def test_constant_gamma_zero_degenerates(self, h0, k):
        assert closed_form_dispersion("constant", G, h0, k, 0.0) == closed_form_dispersion("zero", G, h0, k)

    def test_surface_frame_is_not_a_root(self):
        # the mismatch vanishes at the bed-frame speed, not at the surface-relative one
        prof = ConstantVorticity(1.0, 1.0)
        m = bifurcation_mismatch(prof, G, 1.0, [C_GAMMA1_BED, C_GAMMA1_SURFACE])
        assert abs(m[0]) < 1e-9 and abs(m[1]) > 1.0

    def test_no_root_when_current_opposes(self):
        # gamma=-1, k=5, h0=2: the linear speed lies below max U = 0
        with pytest.raises(NoSignChange):
            bifurcation_speed(ConstantVorticity(-1.0, 2.0), G, 2.0, 5.0)

    def test_bracket_must_be_supercritical(self):
        with pytest.raises(SupercriticalityViolation):
            bifurcation_speed(Poiseuille(1.0), G, bracket=(0.5, 5.0))

    def test_multiple_roots_synthetic(self, monkeypatch):
        import bedwave.rayleigh as ray

        monkeypatch.setattr(ray, "bifurcation_mismatch", lambda p, g, k, c, n_steps=0: np.sin(np.atleast_1d(c)))
        with pytest.warns(MultipleRootsWarning):
            c = ray.bifurcation_speed(ZeroFlow(1.0), G, bracket=(2.0, 10.0))
        assert c == pytest.approx(np.pi, abs=1e-10)

    def test_mismatch_changes_sign_once(self):
        cs = np.linspace(0.05, 30, 400)
        m = bifurcation_mismatch(Poiseuille(1.0), G, 1.0, cs + 1.0)
        assert np.count_nonzero(np.diff(np.sign(m))) == 1


class TestBurns:
    def test_zero(self):
        assert abs(burns_speed(ZeroFlow(1.0), G) - BURNS_ZERO) < 1e-10

    def test_constant(self):
        assert abs(burns_speed(ConstantVorticity(1.0, 1.0), G) - BURNS_GAMMA1) < 1e-8
        assert closed_form_burns("constant", G, 1.0, 1.0) == pytest.approx(BURNS_GAMMA1, abs=1e-14)

    def test_poiseuille(self):
        assert abs(burns_speed(Poiseuille(1.0), G) - BURNS_POISEUILLE) < 1e-8

    @pytest.mark.parametrize("profile", [ZeroFlow(0.3), ConstantVorticity(-2.0, 1.0), ConstantVorticity(3.0, 0.5), Poiseuille(1.5)])
    def test_exceeds_max_velocity(self, profile):
        assert burns_speed(profile, G) > profile.max_velocity()

    def test_tabulated_close_to_analytic(self):
        prof = Poiseuille(1.0)
        assert abs(burns_speed(sample_profile(prof, 200), G) - BURNS_POISEUILLE) < 1e-5
