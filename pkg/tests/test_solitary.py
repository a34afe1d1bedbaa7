import numpy as np
import pytest

from bedwave.errors import DecayViolation, NonUniformGrid, SupercriticalityViolation
from bedwave.numerics import Grid1D
from bedwave.oracles import closed_form_solitary, poiseuille_depth_constant, separable_solitary_eta, solitary_depth_moments
from bedwave.rayleigh import WaveParameters, burns_speed
from bedwave.shear import ConstantVorticity, Poiseuille, ZeroFlow
from bedwave.solitary import (
    DecayingTrace,
    depth_constant,
    first_order_fields,
    froude_fr,
    reconstruct_eta1,
    reconstruct_eta2,
    reconstruct_eta3,
    reconstruct_solitary,
    second_order_fields,
)

from conftest import G, rel_err

BURNS_POISEUILLE = 3.83786806553770788272


def sech2_trace(count=4097, half_width=20.0, amplitude=0.1):
    return DecayingTrace.from_function(lambda x: amplitude / np.cosh(x) ** 2, half_width, count)


def interior(x, frac=0.8):
    return np.abs(x) <= frac * np.max(np.abs(x))


@pytest.fixture(scope="module")
def trace():
    return sech2_trace()


class TestTrace:
    def test_decay_enforced(self):
        with pytest.raises(DecayViolation):
            DecayingTrace.from_function(lambda x: 0.1 / np.cosh(x / 5) ** 2, 20.0, 401)

    def test_symmetric_grid_required(self):
        with pytest.raises(NonUniformGrid):
            DecayingTrace(Grid1D.span(-10.0, 20.0, 301), np.zeros(301))

    def test_supplied_derivatives_win(self, sech2):
        t = DecayingTrace.from_function(sech2[0], 20.0, 801, derivatives={2: sech2[2]})
        assert np.array_equal(t.derivative(2), sech2[2](t.x))
        assert rel_err(t.derivative(1), sech2[1](t.x)) < 1e-4

    def test_fd_derivatives(self, trace, sech2):
        for order in range(1, 5):
            assert rel_err(trace.derivative(order), sech2[order](trace.x)) < 1e-5


class TestFroude:
    def test_zero_flow(self):
        t = froude_fr(ZeroFlow(1.0), 2.0, 101)
        np.testing.assert_allclose(t.fr.values, t.fr.grid.coords / 4.0, atol=1e-15)

    @pytest.mark.parametrize("prof", [ZeroFlow(1.0), ConstantVorticity(1.0, 1.0), Poiseuille(1.0)])
    def test_burns_consistency(self, prof):
        c = burns_speed(prof, G)
        assert G * froude_fr(prof, c).inverse_froude_squared == pytest.approx(1.0, abs=1e-9)

    def test_depth_constants(self):
        assert depth_constant(ZeroFlow(1.3), froude_fr(ZeroFlow(1.3), 3.0)) == pytest.approx(1.3**2 / 2, rel=1e-12)
        prof, c = ConstantVorticity(1.0, 1.0), 3.671750305430741
        assert depth_constant(prof, froude_fr(prof, c)) == pytest.approx(0.5 - 1 / (3 * c), abs=1e-10)
        prof = Poiseuille(1.0)
        K = depth_constant(prof, froude_fr(prof, BURNS_POISEUILLE))
        assert K == pytest.approx(0.6227866889318845, abs=1e-9)
        assert K == pytest.approx(poiseuille_depth_constant(BURNS_POISEUILLE, 1.0), abs=1e-9)

    def test_subcritical(self):
        with pytest.raises(SupercriticalityViolation):
            froude_fr(Poiseuille(1.0), 0.9)


class TestElevation:
    def test_eta1_hydrostatic(self, trace):
        eta1 = reconstruct_eta1(trace, G)
        assert eta1.values[trace.grid.count // 2] == pytest.approx(0.01019367991845056, rel=1e-15)
        assert np.array_equal(eta1.values, trace.values / G)

    def test_zero_flow_eta2_eta3(self, trace, sech2):
        c = np.sqrt(G)
        _, eta2_ref, eta3_ref = closed_form_solitary("zero", sech2, c, 1.0, G)
        x = trace.x
        m = interior(x)
        eta2 = reconstruct_eta2(ZeroFlow(1.0), c, trace, None, G)
        eta3 = reconstruct_eta3(ZeroFlow(1.0), c, trace, None, None, G)
        assert rel_err(eta2.values[m], eta2_ref(x)[m]) <= 1e-5
        assert rel_err(eta3.values[m], eta3_ref(x)[m]) <= 1e-5

    def test_zero_flow_eta3_depth_scaling(self, trace, sech2):
        # at h0 = 2 the last term is h0^2 b1'^2 / c^2, not h0 b1'^2 / c
        h0 = 2.0
        c = np.sqrt(G * h0)
        eta3 = reconstruct_eta3(ZeroFlow(h0), c, trace, None, None, G, ny=101)
        x = trace.x
        m = interior(x)
        *_, ref = closed_form_solitary("zero", sech2, c, h0, G)
        *_, lin = closed_form_solitary("zero", sech2, c, h0, G, eta3_form="linear_depth")
        assert rel_err(eta3.values[m], ref(x)[m]) <= 1e-5
        assert rel_err(eta3.values[m], lin(x)[m]) > 1e-3

    @pytest.mark.parametrize("gamma", [-1.0, 1.0])
    def test_constant_eta2_factor(self, trace, sech2, gamma):
        prof = ConstantVorticity(gamma, 1.0)
        c = burns_speed(prof, G)
        eta2 = reconstruct_eta2(prof, c, trace, None, G)
        _, ref = closed_form_solitary("constant", sech2, c, 1.0, G, gamma)
        x = trace.x
        assert rel_err(eta2.values, ref(x)) <= 1e-6
        factor = (gamma / 3 - c / 2) / c
        mid = trace.grid.count // 2
        assert G * eta2.values[mid] / trace.derivative(2)[mid] == pytest.approx(factor, rel=1e-6)

    def test_poiseuille_against_separable_oracle(self, trace, sech2):
        prof = Poiseuille(1.0)
        c = BURNS_POISEUILLE
        eta2_ref, eta3_ref = separable_solitary_eta(prof, c, sech2, G, solitary_depth_moments(prof, c))
        x = trace.x
        m = interior(x)
        eta2 = reconstruct_eta2(prof, c, trace, None, G)
        eta3 = reconstruct_eta3(prof, c, trace, None, None, G)
        assert rel_err(eta2.values[m], eta2_ref(x)[m]) <= 1e-5
        assert rel_err(eta3.values[m], eta3_ref(x)[m]) <= 1e-5

    def test_separable_oracle_reduces_for_zero_flow(self, sech2):
        c = np.sqrt(G)
        x = np.linspace(-5, 5, 41)
        eta2, eta3 = separable_solitary_eta(ZeroFlow(1.0), c, sech2, G)
        _, e2, e3 = closed_form_solitary("zero", sech2, c, 1.0, G)
        assert np.max(np.abs(eta2(x) - e2(x))) < 1e-14
        assert np.max(np.abs(eta3(x) - e3(x))) < 1e-12

    def test_higher_order_pressure_passes_through(self, trace):
        c = np.sqrt(G)
        extra = DecayingTrace.from_function(lambda x: 0.03 / np.cosh(2 * x) ** 2, 20.0, trace.grid.count)
        base = reconstruct_eta2(ZeroFlow(1.0), c, trace, None, G).values
        shifted = reconstruct_eta2(ZeroFlow(1.0), c, trace, extra, G).values
        assert np.max(np.abs(shifted - base - extra.values / G)) < 1e-16
        base3 = reconstruct_eta3(ZeroFlow(1.0), c, trace, None, None, G).values
        shifted3 = reconstruct_eta3(ZeroFlow(1.0), c, trace, None, extra, G).values
        assert np.max(np.abs(shifted3 - base3 - extra.values / G)) < 1e-16

    @pytest.mark.parametrize("prof", [ZeroFlow(1.0), ConstantVorticity(1.0, 1.0), Poiseuille(1.0)])
    def test_even_symmetry(self, prof):
        t = sech2_trace(1025)
        c = burns_speed(prof, G)
        for eta in reconstruct_solitary(prof, WaveParameters(1.0, c), t).orders:
            # the x-integrals run from the left end, so symmetry holds to roundoff only
            assert np.max(np.abs(eta.values - eta.values[::-1])) <= 1e-10 * np.max(np.abs(eta.values))

    def test_reconstructions_decay(self):
        t = sech2_trace(1025)
        rec = reconstruct_solitary(Poiseuille(1.0), WaveParameters(1.0, BURNS_POISEUILLE), t)
        for eta in rec.orders:
            assert max(abs(eta.values[0]), abs(eta.values[-1])) < 1e-10 * np.max(np.abs(eta.values))

    def test_grid_convergence(self, sech2):
        c = np.sqrt(G)
        _, _, ref = closed_form_solitary("zero", sech2, c, 1.0, G)
        errs = []
        for n in (1025, 2049):
            t = sech2_trace(n)
            errs.append(rel_err(reconstruct_eta3(ZeroFlow(1.0), c, t, None, None, G).values, ref(t.x)))
        assert errs[0] / errs[1] > 12

    def test_halving_both_steps(self, trace):
        prof = Poiseuille(1.0)
        base = reconstruct_eta3(prof, BURNS_POISEUILLE, trace, None, None, G)
        # zero-extended fourth differences scale the ~1e-18 end samples by h^-4, so the
        # finer run needs a looser end budget for eta3
        fine_trace = DecayingTrace.from_function(lambda x: 0.1 / np.cosh(x) ** 2, 20.0, 2 * trace.grid.count - 1, decay_tol=1e-9)
        fine = reconstruct_eta3(prof, BURNS_POISEUILLE, fine_trace, None, None, G, ny=2 * 201 - 1)
        assert rel_err(fine.values[::2], base.values) <= 1e-5

    def test_fine_grid_end_budget(self):
        t = sech2_trace(8193)
        with pytest.raises(DecayViolation):
            reconstruct_eta3(ZeroFlow(1.0), np.sqrt(G), t, None, None, G)

    def test_assembly(self, trace):
        params = WaveParameters(1.0, np.sqrt(G), eps=0.2)
        rec = reconstruct_solitary(ZeroFlow(1.0), params, trace)
        eps = 0.2
        want = 1.0 + eps * rec.eta1.values + eps**2 * rec.eta2.values + eps**3 * rec.eta3.values
        assert np.array_equal(rec.surface.values, want)
        low = reconstruct_solitary(ZeroFlow(1.0), params, trace, order=1)
        assert low.eta2 is None and low.eta3 is None
        with pytest.raises(ValueError):
            reconstruct_solitary(ZeroFlow(1.0), params, trace, order=4)


class TestFields:
    def test_zero_flow_first_order(self, trace):
        c = np.sqrt(G)
        f = first_order_fields(ZeroFlow(1.0), c, trace, ny=51)
        y = f.y.coords[:, None]
        b1, b1x = trace.values[None, :], trace.derivative(1)[None, :]
        assert np.max(np.abs(f.u - b1 / c)) < 1e-12
        assert np.max(np.abs(f.v + b1x * y / c)) < 1e-12
        assert np.array_equal(f.p, np.broadcast_to(b1, f.p.shape))

    def test_zero_flow_second_order(self, trace, sech2):
        c = np.sqrt(G)
        f = second_order_fields(ZeroFlow(1.0), c, trace, ny=51)
        y = f.y.coords[:, None]
        x = trace.x[None, :]
        b, b1, b2, b3 = (d(x) for d in sech2[:4])
        assert rel_err(f.p, -b2 * y**2 / 2) < 1e-5
        assert rel_err(f.u, (-b2 * y**2 / 2 + b**2 / (2 * c**2)) / c) < 1e-5
        assert rel_err(f.v, -(-b3 * y**3 / 6 + b * b1 * y / c**2) / c) < 1e-5

    @pytest.mark.parametrize("prof", [ZeroFlow(1.0), ConstantVorticity(1.0, 1.0), ConstantVorticity(-1.0, 1.0), Poiseuille(1.0)])
    def test_divergence_and_impermeability(self, trace, prof):
        c = burns_speed(prof, G)
        for fields in (first_order_fields(prof, c, trace), second_order_fields(prof, c, trace)):
            div = fields.divergence()
            scale = np.max(np.abs(fields.u)) + np.max(np.abs(fields.v))
            assert np.max(np.abs(div)) <= 5e-5 * max(scale, 1.0)
            assert not fields.v[0].any()

    def test_sampler(self, trace):
        c = np.sqrt(G)
        f = first_order_fields(ZeroFlow(1.0), c, trace, ny=51)
        assert f.at("u", 0.0, 0.5) == pytest.approx(0.1 / c, rel=1e-9)
