import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bedwave.errors import BadHeader, OutOfDomain
from bedwave.shear import (
    ConstantVorticity,
    Poiseuille,
    TabulatedProfile,
    ZeroFlow,
    load_profile_csv,
    make_profile,
    rescale,
    sample_profile,
)


def test_zero_eval():
    assert tuple(map(float, ZeroFlow(1.0).eval(0.5))) == (0.0, 0.0, 0.0)


def test_constant_eval():
    U, dU, d2U = ConstantVorticity(2.0, 1.0).eval(0.3)
    assert (float(U), float(dU), float(d2U)) == pytest.approx((0.6, 2.0, 0.0), abs=1e-15)


def test_poiseuille_eval():
    U, dU, d2U = Poiseuille(1.0).eval(0.5)
    assert (float(U), float(dU), float(d2U)) == (0.75, -1.0, -2.0)


def test_vorticity_sign():
    assert float(ConstantVorticity(2.0, 1.0).vorticity(0.4)) == -2.0


@pytest.mark.parametrize("y", [-0.1, 1.1, np.nan])
def test_out_of_domain(y):
    with pytest.raises(OutOfDomain):
        Poiseuille(1.0).eval(y)


def test_max_velocity():
    assert ZeroFlow(1.0).max_velocity() == 0.0
    assert ConstantVorticity(2.0, 1.0).max_velocity() == 2.0
    assert ConstantVorticity(-2.0, 1.0).max_velocity() == 0.0
    assert Poiseuille(1.0).max_velocity() == 1.0


@pytest.mark.parametrize(
    "prof", [ZeroFlow(1.0), ConstantVorticity(1.3, 2.0), ConstantVorticity(-0.7, 0.5), Poiseuille(1.0), Poiseuille(2.5)]
)
@pytest.mark.parametrize("count", [50, 137])
def test_tabulated_matches_analytic(prof, count):
    tab = sample_profile(prof, count)
    y = np.linspace(0, prof.h0, 997)
    U, _, d2U = prof.eval(y)
    tU, _, td2U = tab.eval(y)
    assert np.max(np.abs(tU - U)) < 1e-6
    assert np.max(np.abs(td2U - d2U)) < 1e-4


def test_tabulated_end_curvature_smooth_profile():
    y = np.linspace(0, 1, 50)
    tab = TabulatedProfile(y, np.sin(2 * y))
    grid = np.linspace(0, 1, 501)
    assert np.max(np.abs(tab.eval(grid)[2] + 4 * np.sin(2 * grid))) < 1e-2


def test_tabulated_constant_exact():
    tab = sample_profile(ConstantVorticity(1.5, 2.0), 50)
    y = np.linspace(0, 2, 301)
    np.testing.assert_allclose(tab.velocity(y), 1.5 * y, atol=1e-12)


def test_tabulated_interior_maximum():
    y = np.linspace(0, 1, 40)
    tab = TabulatedProfile(y, np.sin(np.pi * y))
    assert tab.max_velocity() == pytest.approx(1.0, abs=1e-5)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=6, max_size=30))
def test_max_velocity_bounds_samples(values):
    y = np.linspace(0, 1.3, len(values))
    tab = TabulatedProfile(y, np.array(values))
    grid = np.linspace(0, 1.3, 500)
    assert tab.max_velocity() >= np.max(tab.velocity(grid)) - 1e-12


def test_rescaled_derivatives():
    prof = Poiseuille(1.0)
    r = rescale(prof, 2.0)
    assert r.h0 == 2.0
    U, dU, d2U = r.eval(1.0)
    assert (float(U), float(dU), float(d2U)) == (0.75, -0.5, -0.5)
    assert rescale(prof, 1.0) is prof


def test_csv_roundtrip(tmp_path):
    p = tmp_path / "u.csv"
    y = np.linspace(0, 1, 20)
    p.write_text("y,U\n" + "".join(f"{a},{2 * a}\n" for a in y))
    prof = load_profile_csv(p)
    assert prof.h0 == 1.0
    assert float(prof.velocity(0.5)) == pytest.approx(1.0, abs=1e-12)
    assert make_profile("csv", 1.0, csv_path=p).h0 == 1.0


def test_csv_bad_header(tmp_path):
    p = tmp_path / "u.csv"
    p.write_text("depth,U\n0,0\n1,1\n")
    with pytest.raises(BadHeader):
        load_profile_csv(p)


def test_make_profile_kinds():
    assert isinstance(make_profile("zero", 1.0), ZeroFlow)
    assert isinstance(make_profile("constant", 1.0, 0.5), ConstantVorticity)
    assert isinstance(make_profile("poiseuille", 1.0), Poiseuille)
    with pytest.raises(ValueError):
        make_profile("couette", 1.0)
