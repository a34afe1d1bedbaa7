"""Periodic (Stokes) surface reconstruction from bed pressure, first and second order.

All formulas are carried out for wavenumber 1. A general ``k`` is handled by
stretching lengths by ``k`` (x' = k x, y' = k y, h0' = k h0, g' = g / k,
velocities and density-normalized pressures unchanged) and dividing the
reconstructed elevation by ``k`` afterwards.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .errors import DegenerateBVP, NonCosineInput, NonRealOutput, PeriodMismatch
from .numerics import Grid1D, SampledFunction, fd_bounded
from .rayleigh import DEFAULT_STEPS, RayleighSolution, WaveParameters, require_supercritical, solve_cauchy
from .shear import ShearProfile, rescale

DEFAULT_NX = 256
REALNESS_TOL = 1e-12


# ---------------------------------------------------------------------------
# Fourier bookkeeping
# ---------------------------------------------------------------------------


def fourier_coefficients(values, start=0.0, period=2 * np.pi, n_modes=None) -> np.ndarray:
    """Complex coefficients ``c_n`` of ``sum c_n exp(i n k x)``, returned for n = -N..N.

    ``values`` samples one period uniformly, starting at ``start``. The Nyquist
    mode of an even-length sample is dropped.
    """
    values = np.asarray(values, dtype=float)
    m = values.size
    nmax = (m - 1) // 2 if n_modes is None else int(n_modes)
    if nmax > (m - 1) // 2:
        raise ValueError(f"{m} samples resolve at most {(m - 1) // 2} modes")
    k = 2 * np.pi / period
    n = np.arange(-nmax, nmax + 1)
    spec = np.fft.fft(values) / m
    return spec[n % m] * np.exp(-1j * n * k * start)


def synthesize(coeffs, x, k=1.0) -> np.ndarray:
    """``sum_n coeffs[n] exp(i n k x)``, summed in ascending ``n``."""
    coeffs = np.asarray(coeffs)
    nmax = (coeffs.size - 1) // 2
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    for n, cn in zip(range(-nmax, nmax + 1), coeffs):
        if cn != 0:
            out += cn * np.exp(1j * n * k * x)
    return out


def _real_part(values, what):
    scale = np.max(np.abs(values)) if values.size else 0.0
    imag = np.max(np.abs(values.imag)) if values.size else 0.0
    if imag > REALNESS_TOL * scale:
        raise NonRealOutput(
            f"{what} has imaginary residue {imag:.3e} (max |value| {scale:.3e}); "
            "input coefficients are not conjugate-symmetric"
        )
    return values.real.copy()


@dataclass(frozen=True)
class PeriodicPressure:
    """Bed-pressure Fourier coefficients per order, stored for n = -N..N.

    ``b1[n + N]`` multiplies ``exp(i n x)`` in the first-order trace, likewise
    ``b2`` for the second order (``None`` means zero).
    """

    b1: np.ndarray
    b2: np.ndarray | None = None

    def __post_init__(self):
        for name in ("b1", "b2"):
            arr = getattr(self, name)
            if arr is None:
                continue
            arr = np.asarray(arr, dtype=complex)
            if arr.ndim != 1 or arr.size % 2 == 0 or arr.size < 3:
                raise ValueError(f"{name} must hold 2N+1 coefficients with N >= 1")
            object.__setattr__(self, name, arr)

    @property
    def N(self) -> int:
        return (self.b1.size - 1) // 2

    @classmethod
    def cosine(cls, b, b2=None):
        """First order ``p1(x, 0) = b cos x``; ``b2`` optional second-order coefficients."""
        return cls(np.array([b / 2, 0.0, b / 2], dtype=complex), b2)

    @classmethod
    def from_samples(cls, p1, p2=None, start=0.0, period=2 * np.pi, n_modes=None, drop_tol=1e-12):
        """DFT of sampled traces over one period.

        Coefficients at or below ``drop_tol`` times the largest one are set to
        zero: the reconstruction multiplies mode ``n`` by roughly ``cosh(n k h0)``,
        which would otherwise blow roundoff noise in high modes up.
        """
        b1 = _drop_small(fourier_coefficients(p1, start, period, n_modes), drop_tol)
        b2 = None if p2 is None else _drop_small(fourier_coefficients(p2, start, period, n_modes), drop_tol)
        return cls(b1, b2)

    def is_conjugate_symmetric(self, tol=1e-12) -> bool:
        for arr in (self.b1, self.b2):
            if arr is None:
                continue
            scale = max(np.max(np.abs(arr)), 1e-300)
            if np.max(np.abs(arr - np.conj(arr[::-1]))) > tol * scale:
                return False
        return True

    def cosine_amplitude(self, tol=1e-9) -> float:
        """``b`` if the first-order trace is ``b cos x``, else ``NonCosineInput``."""
        N = self.N
        b11 = self.b1[N + 1]
        others = np.delete(self.b1, [N - 1, N + 1])
        scale = max(abs(b11), 1e-300)
        if (
            np.max(np.abs(others), initial=0.0) > tol * scale
            or abs(b11.imag) > tol * scale
            or abs(self.b1[N - 1] - b11) > tol * scale
        ):
            raise NonCosineInput("second order needs a first-order bed pressure proportional to cos(x)")
        return float(2 * b11.real)


def _drop_small(coeffs, tol):
    scale = np.max(np.abs(coeffs)) if coeffs.size else 0.0
    out = coeffs.copy()
    out[np.abs(out) <= tol * scale] = 0.0
    return out


def _coef(arr, n):
    if arr is None:
        return 0.0
    N = (arr.size - 1) // 2
    return arr[n + N] if -N <= n <= N else 0.0


# ---------------------------------------------------------------------------
# Rayleigh modes
# ---------------------------------------------------------------------------


def _scaled(profile: ShearProfile, params: WaveParameters):
    k = params.k
    if k == 1.0:
        return profile, params
    return rescale(profile, k), replace(params, g=params.g / k, h0=params.h0 * k, k=1.0)


def _unit_modes(profile, params, orders, n_steps, workers=1):
    """Unit-slope homogeneous solutions for each mode number in ``orders`` (ascending)."""
    orders = sorted(set(orders))

    def solve(n):
        return solve_cauchy(profile, params, n, 1.0, n_steps=n_steps)

    if workers > 1 and len(orders) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            sols = list(pool.map(solve, orders))
    else:
        sols = [solve(n) for n in orders]
    return dict(zip(orders, sols))


def surface_transfer(profile: ShearProfile, sol: RayleighSolution) -> float:
    """``(U - c) phi' - U' phi`` at the surface."""
    Uh, dUh, _ = profile.eval(profile.h0)
    return float((Uh - sol.c) * sol.dphi.values[-1] - dUh * sol.phi.values[-1])


def _x_grid(params, n_x, x_grid=None):
    if x_grid is None:
        return Grid1D.periodic(2 * np.pi / params.k, n_x)
    period = x_grid.count * x_grid.step
    if abs(period * params.k - 2 * np.pi) > 1e-9 * 2 * np.pi:
        raise PeriodMismatch(f"x-grid spans {period:.12g}, not one period 2*pi/k = {2 * np.pi / params.k:.12g}")
    return x_grid


# ---------------------------------------------------------------------------
# First order
# ---------------------------------------------------------------------------


def eta1_coefficients(profile, params, pressure, n_steps=DEFAULT_STEPS, workers=1) -> np.ndarray:
    """Fourier coefficients of ``eta_1`` (scaled problem, k = 1), n = -N..N."""
    require_supercritical(profile, params.c)
    N = pressure.N
    U0 = profile.velocity(0.0)
    active = [abs(n) for n in range(-N, N + 1) if n != 0 and pressure.b1[n + N] != 0]
    modes = _unit_modes(profile, params, active, n_steps, workers)
    out = np.zeros(2 * N + 1, dtype=complex)
    out[N] = pressure.b1[N]
    for n in range(-N, N + 1):
        if n == 0 or pressure.b1[n + N] == 0:
            continue
        out[n + N] = pressure.b1[n + N] * surface_transfer(profile, modes[abs(n)]) / (U0 - params.c)
    return out / params.g


def reconstruct_eta1(
    profile: ShearProfile,
    params: WaveParameters,
    pressure: PeriodicPressure,
    n_x: int = DEFAULT_NX,
    n_steps: int = DEFAULT_STEPS,
    workers: int = 1,
    x_grid: Grid1D | None = None,
) -> SampledFunction:
    """First-order elevation from the first-order bed-pressure coefficients.

    Each mode ``n != 0`` solves a Rayleigh Cauchy problem with slope
    ``n b_1n / (U(0) - c)``; the surface pressure of that mode divided by ``g``
    gives the elevation coefficient.
    """
    sp, sprm = _scaled(profile, params)
    coeffs = eta1_coefficients(sp, sprm, pressure, n_steps, workers)
    grid = _x_grid(params, n_x, x_grid)
    eta = _real_part(synthesize(coeffs, grid.coords, params.k), "eta1")
    return SampledFunction(grid, eta / params.k)


@dataclass(frozen=True)
class CosineFirstOrderFields:
    """Interior velocity and pressure for the cosine bed pressure ``b cos(kx)``.

    ``u = phi' cos(kx)/k``, ``v = phi sin(kx)``, ``p = ((c-U) phi' + U' phi) cos(kx)/k``.
    """

    profile: ShearProfile
    k: float
    c: float
    rayleigh: RayleighSolution

    def _phi(self, y):
        g = self.rayleigh.grid
        sp = CubicHermiteSpline(g.coords, self.rayleigh.phi.values, self.rayleigh.dphi.values)
        return sp(y)

    def _dphi(self, y):
        g = self.rayleigh.grid
        sp = CubicHermiteSpline(g.coords, self.rayleigh.dphi.values, self.rayleigh.ddphi.values)
        return sp(y)

    def u(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return self._dphi(y) * np.cos(self.k * x) / self.k

    def v(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return self._phi(y) * np.sin(self.k * x)

    def p(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        U, dU, _ = self.profile.eval(y)
        amp = (self.c - U) * self._dphi(y) + dU * self._phi(y)
        return amp * np.cos(self.k * x) / self.k


def first_order_fields_cosine(
    profile: ShearProfile, params: WaveParameters, b: float, n_steps: int = DEFAULT_STEPS
) -> CosineFirstOrderFields:
    require_supercritical(profile, params.c)
    U0 = profile.velocity(0.0)
    sol = solve_cauchy(profile, params, 1, params.k * b / (params.c - U0), n_steps=n_steps)
    return CosineFirstOrderFields(profile, params.k, params.c, sol)


# ---------------------------------------------------------------------------
# Second order
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SecondOrderModes:
    """Second-order Rayleigh modes ``phi_2n`` on the y-grid (scaled problem)."""

    first: RayleighSolution
    wronskian: np.ndarray  # phi phi'' - phi'^2
    forced: RayleighSolution  # b2-independent part of phi_{2,2}
    modes: dict  # n -> complex array phi_2n(y), n != 0
    surface_coefficients: np.ndarray  # g * eta2 Fourier coefficients, n = -M..M

    @property
    def grid(self) -> Grid1D:
        return self.first.grid


def second_order_modes(
    profile: ShearProfile,
    params: WaveParameters,
    b: float,
    b2=None,
    n_steps: int = DEFAULT_STEPS,
    workers: int = 1,
) -> SecondOrderModes:
    """Solve every second-order mode problem for the scaled (k = 1) geometry.

    The ``n = +-2`` modes carry the forcing ``-+(1/4)(phi phi''' - phi' phi'')``;
    its bracket is the y-derivative of ``W = phi phi'' - phi'^2``, formed with
    4th-order differences so no third derivative of U is needed.
    """
    if params.k != 1.0:
        raise ValueError("second_order_modes works on the scaled problem; use reconstruct_eta2")
    require_supercritical(profile, params.c)
    c = params.c
    U0 = profile.velocity(0.0)
    Uh, dUh, _ = profile.eval(profile.h0)

    first = solve_cauchy(profile, params, 1, b / (c - U0), n_steps=n_steps)
    grid = first.grid
    phi, dphi, ddphi = first.phi.values, first.dphi.values, first.ddphi.values
    W = phi * ddphi - dphi**2
    dW = fd_bounded(W, grid.step, 1)
    forced = solve_cauchy(
        profile,
        params,
        2,
        -0.25 * W[0] / (U0 - c),
        forcing=SampledFunction(grid, -0.25 * dW),
        n_steps=n_steps,
    )

    b2 = None if b2 is None else np.asarray(b2, dtype=complex)
    M = max(2, 0 if b2 is None else (b2.size - 1) // 2)
    active = [abs(n) for n in range(-M, M + 1) if n != 0 and _coef(b2, n) != 0]
    unit = _unit_modes(profile, params, active + [2], n_steps, workers)

    modes = {}
    coeffs = np.zeros(2 * M + 1, dtype=complex)
    for n in range(-M, M + 1):
        if n == 0:
            continue
        bn = _coef(b2, n)
        slope = n * bn / (U0 - c)
        mode = slope * unit[abs(n)].phi.values if bn != 0 else np.zeros(grid.count, dtype=complex)
        surf = bn * surface_transfer(profile, unit[abs(n)]) / (U0 - c) if bn != 0 else 0.0
        if abs(n) == 2:
            sign = 1.0 if n > 0 else -1.0
            mode = mode + sign * forced.phi.values
            surf = surf + sign * surface_transfer(profile, forced) / n
        modes[n] = np.asarray(mode, dtype=complex)
        coeffs[n + M] = surf
    # -phi(h0)^2 / 2 + b20 and (1/4) W(h0) cos 2x
    coeffs[M] += -0.5 * phi[-1] ** 2 + _coef(b2, 0)
    coeffs[M + 2] += 0.125 * W[-1]
    coeffs[M - 2] += 0.125 * W[-1]
    return SecondOrderModes(first, W, forced, modes, coeffs)


def reconstruct_eta2(
    profile: ShearProfile,
    params: WaveParameters,
    b: float,
    b2=None,
    n_x: int = DEFAULT_NX,
    n_steps: int = DEFAULT_STEPS,
    workers: int = 1,
    x_grid: Grid1D | None = None,
) -> SampledFunction:
    """Second-order elevation for the bed pressure ``eps b cos x + eps^2 p2(x)``.

    ``b2`` holds the Fourier coefficients of ``p2`` for n = -M..M (None for zero).
    """
    sp, sprm = _scaled(profile, params)
    sec = second_order_modes(sp, sprm, b, b2, n_steps, workers)
    grid = _x_grid(params, n_x, x_grid)
    eta = _real_part(synthesize(sec.surface_coefficients, grid.coords, params.k), "eta2")
    return SampledFunction(grid, eta / (sprm.g * params.k))


# ---------------------------------------------------------------------------
# Forward transfer and baselines
# ---------------------------------------------------------------------------


def transfer_factor(profile: ShearProfile, params: WaveParameters, y0: float = 0.0, n_steps: int = DEFAULT_STEPS) -> float:
    """``(c - U) phi' + U' phi`` at depth ``y0`` for the Rayleigh BVP ``phi(h0) = c - U(h0)``."""
    require_supercritical(profile, params.c)
    unit = solve_cauchy(profile, params, 1, 1.0, n_steps=n_steps)
    top = unit.phi.values[-1]
    if top == 0.0 or not np.isfinite(top):
        raise DegenerateBVP("unit-slope Rayleigh solution vanishes at the surface")
    scale = (params.c - profile.velocity(profile.h0)) / top
    g = unit.grid
    phi = float(CubicHermiteSpline(g.coords, unit.phi.values, unit.dphi.values)(y0))
    dphi = float(CubicHermiteSpline(g.coords, unit.dphi.values, unit.ddphi.values)(y0))
    U, dU, _ = profile.eval(y0)
    return float(scale * ((params.c - U) * dphi + dU * phi))


def transfer_pressure_from_eta(
    profile: ShearProfile,
    params: WaveParameters,
    eta: SampledFunction,
    y0: float = 0.0,
    n_steps: int = DEFAULT_STEPS,
) -> SampledFunction:
    """Pressure at depth ``y0`` predicted by the linear transfer function for a single-harmonic ``eta``."""
    return SampledFunction(eta.grid, transfer_factor(profile, params, y0, n_steps) * eta.values)


def baseline_eta(
    pressure_trace: SampledFunction, g: float, h0: float, variant: str = "hydrostatic", drop_tol: float = 1e-12
) -> SampledFunction:
    """Classical reconstructions: ``p/g`` or the irrotational ``cosh(k h0)/g`` transfer.

    For the transfer, modes at or below ``drop_tol`` times the largest are
    discarded before being multiplied by ``cosh(k h0)``.
    """
    if variant == "hydrostatic":
        return SampledFunction(pressure_trace.grid, pressure_trace.values / g)
    if variant != "cosh_transfer":
        raise ValueError(f"unknown baseline variant {variant!r}")
    n = pressure_trace.grid.count
    wavenumber = 2 * np.pi * np.fft.rfftfreq(n, d=pressure_trace.grid.step)
    spec = _drop_small(np.fft.rfft(pressure_trace.values), drop_tol) * np.cosh(wavenumber * h0) / g
    return SampledFunction(pressure_trace.grid, np.fft.irfft(spec, n=n))


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StokesReconstruction:
    eta1: SampledFunction
    eta2: SampledFunction | None
    surface: SampledFunction
    params: WaveParameters

    @property
    def elevation(self) -> SampledFunction:
        """Displacement ``surface - h0``."""
        return SampledFunction(self.surface.grid, self.surface.values - self.params.h0)


def reconstruct_stokes(
    profile: ShearProfile,
    params: WaveParameters,
    pressure: PeriodicPressure,
    order: int = 2,
    n_x: int = DEFAULT_NX,
    n_steps: int = DEFAULT_STEPS,
    workers: int = 1,
    x_grid: Grid1D | None = None,
) -> StokesReconstruction:
    """``h = h0 + eps eta1 + eps^2 eta2`` from the bed-pressure coefficients."""
    if order not in (1, 2):
        raise ValueError(f"Stokes order must be 1 or 2, got {order}")
    eta1 = reconstruct_eta1(profile, params, pressure, n_x, n_steps, workers, x_grid)
    surface = params.h0 + params.eps * eta1.values
    eta2 = None
    if order == 2:
        b = pressure.cosine_amplitude()
        eta2 = reconstruct_eta2(profile, params, b, pressure.b2, n_x, n_steps, workers, x_grid)
        surface = surface + params.eps**2 * eta2.values
    return StokesReconstruction(eta1, eta2, SampledFunction(eta1.grid, surface), params)
