"""Rayleigh-equation solves and wave speeds.

The Rayleigh equation ``(U - c)(phi'' - n^2 k^2 phi) - U'' phi = F`` is
integrated as ``phi'' = (n^2 k^2 + U''/(U - c)) phi + F/(U - c)``, which is
regular as long as ``c > max U``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import MultipleRootsWarning, NoSignChange, SupercriticalityViolation
from .numerics import (
    DEFAULT_ROOT_TOL,
    Grid1D,
    SampledFunction,
    fd_bounded,
    find_root,
    half_step_nodes,
    integrate_linear_batch,
    simpson,
)
from .shear import ShearProfile

DEFAULT_STEPS = 2000


@dataclass(frozen=True)
class WaveParameters:
    """Gravity ``g``, depth ``h0``, wavenumber ``k``, speed ``c``, amplitude ``eps``.

    ``eps`` is only used when the orders are summed into a surface; ``eps = 1``
    means the pressure inputs already carry their physical size.
    """

    h0: float
    c: float
    g: float = 9.81
    k: float = 1.0
    eps: float = 1.0

    def __post_init__(self):
        if not self.g > 0:
            raise ValueError(f"g must be positive, got {self.g}")
        if not self.h0 > 0:
            raise ValueError(f"h0 must be positive, got {self.h0}")
        if not self.k > 0:
            raise ValueError(f"k must be positive, got {self.k}")
        if not np.isfinite(self.c):
            raise ValueError(f"c must be finite, got {self.c}")
        if not 0 <= self.eps <= 1:
            raise ValueError(f"eps must lie in [0, 1], got {self.eps}")

    def with_speed(self, c):
        return replace(self, c=float(c))


@dataclass(frozen=True)
class RayleighSolution:
    mode: int
    k: float
    c: float
    slope0: float
    phi: SampledFunction
    dphi: SampledFunction
    ddphi: SampledFunction
    forcing: SampledFunction | None = None

    @property
    def grid(self) -> Grid1D:
        return self.phi.grid

    def residual(self, profile: ShearProfile) -> np.ndarray:
        """``(U - c)(phi'' - n^2 k^2 phi) - U'' phi - F`` with phi'' from finite differences."""
        y = self.grid.coords
        U, _, d2U = profile.eval(y)
        phi = self.phi.values
        d2 = fd_bounded(phi, self.grid.step, 2)
        f = 0.0 if self.forcing is None else self.forcing.values
        return (U - self.c) * (d2 - (self.mode * self.k) ** 2 * phi) - d2U * phi - f


def y_grid(h0: float, n_steps: int = DEFAULT_STEPS) -> Grid1D:
    return Grid1D.span(0.0, h0, n_steps + 1)


def require_supercritical(profile: ShearProfile, c: float):
    umax = profile.max_velocity()
    if not c > umax:
        raise SupercriticalityViolation(f"wave speed c={c:.6g} must exceed max U={umax:.6g}")


def _check_depth(profile, h0):
    if h0 is not None and abs(h0 - profile.h0) > 1e-12 * profile.h0:
        raise ValueError(f"h0={h0} does not match the profile depth {profile.h0}")


def _rayleigh_coefficient(profile, c, kk, y):
    """``kk + U''/(U - c)`` for an array of speeds (columns) at nodes ``y`` (rows)."""
    U, _, d2U = profile.eval(y)
    c = np.atleast_1d(np.asarray(c, dtype=float))
    return kk + d2U[:, None] / (U[:, None] - c[None, :]), U[:, None] - c[None, :]


def solve_cauchy(
    profile: ShearProfile,
    params: WaveParameters,
    n: int,
    slope0: float,
    forcing: SampledFunction | None = None,
    n_steps: int = DEFAULT_STEPS,
) -> RayleighSolution:
    """Rayleigh Cauchy problem for Fourier mode ``n`` with ``phi(0) = 0, phi'(0) = slope0``.

    ``forcing`` is the right-hand side ``F(y)`` sampled on the same y-grid; it is
    interpolated to RK4 midpoints with a cubic spline.
    """
    _check_depth(profile, params.h0)
    require_supercritical(profile, params.c)
    grid = y_grid(profile.h0, n_steps)
    yh = half_step_nodes(grid)
    A, denom = _rayleigh_coefficient(profile, params.c, (n * params.k) ** 2, yh)
    if forcing is None:
        F = np.zeros_like(A)
    else:
        if forcing.grid.count != grid.count or abs(forcing.grid.step - grid.step) > 1e-12 * grid.step:
            raise ValueError("forcing must be sampled on the Rayleigh y-grid")
        fh = CubicSpline(grid.coords, forcing.values)(yh)
        fh[::2] = forcing.values
        F = fh[:, None] / denom
    phi, dphi = integrate_linear_batch(A, F, grid.step, 0.0, float(slope0))
    dd = A[::2, 0] * phi[:, 0] + F[::2, 0]
    return RayleighSolution(
        mode=int(n),
        k=float(params.k),
        c=float(params.c),
        slope0=float(slope0),
        phi=SampledFunction(grid, phi[:, 0]),
        dphi=SampledFunction(grid, dphi[:, 0]),
        ddphi=SampledFunction(grid, dd),
        forcing=forcing,
    )


def default_bracket(profile: ShearProfile, g: float):
    umax = profile.max_velocity()
    scale = np.sqrt(g * profile.h0)
    return umax + 0.01 * scale, umax + 10.0 * scale


def _validate_bracket(profile, bracket):
    lo, hi = map(float, bracket)
    if not lo < hi:
        raise ValueError(f"bracket must satisfy lo < hi, got {bracket}")
    require_supercritical(profile, lo)
    return lo, hi


def bifurcation_mismatch(profile, g, k, c, n_steps=DEFAULT_STEPS):
    """Surface-condition defect of the unit-slope Rayleigh solution, one value per speed.

    Multiplied through by ``(U(h0) - c)**2`` so it stays finite as ``c`` nears
    ``U(h0)``; only its sign and zeros matter.
    """
    grid = y_grid(profile.h0, n_steps)
    c = np.atleast_1d(np.asarray(c, dtype=float))
    A, _ = _rayleigh_coefficient(profile, c, k * k, half_step_nodes(grid))
    phi, dphi = integrate_linear_batch(A, np.zeros_like(A), grid.step, 0.0, 1.0)
    Uh, dUh, _ = profile.eval(profile.h0)
    rel = Uh - c
    return dphi[-1] * rel**2 - (g + dUh * rel) * phi[-1]


def _scan_roots(func, lo, hi, n_scan):
    cs = np.linspace(lo, hi, n_scan + 1)
    vals = func(cs)
    s = np.sign(vals)
    idx = np.nonzero(s[:-1] * s[1:] <= 0)[0]
    return cs, vals, idx


def bifurcation_speed(
    profile: ShearProfile,
    g: float,
    h0: float | None = None,
    k: float = 1.0,
    bracket=None,
    n_scan: int = 64,
    n_steps: int = DEFAULT_STEPS,
    tol: float = DEFAULT_ROOT_TOL,
) -> float:
    """Smallest speed ``c > max U`` in ``bracket`` at which the linearized problem has a kernel.

    The bracket is scanned on ``n_scan`` intervals; if more than one sign change
    is found a ``MultipleRootsWarning`` is issued and the smallest root returned.
    """
    _check_depth(profile, h0)
    lo, hi = _validate_bracket(profile, bracket or default_bracket(profile, g))
    cs, vals, idx = _scan_roots(lambda c: bifurcation_mismatch(profile, g, k, c, n_steps), lo, hi, n_scan)
    if idx.size == 0:
        raise NoSignChange(f"no bifurcation speed in [{lo:.6g}, {hi:.6g}] for k={k}")
    if idx.size > 1:
        warnings.warn(
            f"{idx.size} sign changes of the bifurcation condition in [{lo:.6g}, {hi:.6g}]; "
            "returning the smallest root",
            MultipleRootsWarning,
            stacklevel=2,
        )
    i = idx[0]
    return find_root(
        lambda c: float(bifurcation_mismatch(profile, g, k, c, n_steps)[0]), cs[i], cs[i + 1], tol
    )


def burns_function(profile, g, c, n_steps=DEFAULT_STEPS):
    """``int_0^h0 dy / (U - c)^2 - 1/g`` for an array of speeds."""
    grid = y_grid(profile.h0, n_steps)
    U = profile.velocity(grid.coords)
    c = np.atleast_1d(np.asarray(c, dtype=float))
    return simpson(1.0 / (U[:, None] - c[None, :]) ** 2, grid.step, axis=0) - 1.0 / g


def burns_speed(
    profile: ShearProfile,
    g: float,
    bracket=None,
    n_steps: int = DEFAULT_STEPS,
    tol: float = DEFAULT_ROOT_TOL,
) -> float:
    """Critical (long-wave) speed solving the Burns condition."""
    lo, hi = _validate_bracket(profile, bracket or default_bracket(profile, g))
    return find_root(lambda c: float(burns_function(profile, g, c, n_steps)[0]), lo, hi, tol)


def closed_form_dispersion(variant: str, g: float, h0: float, k: float, gamma: float = 0.0, frame: str = "bed") -> float:
    """Explicit linear wave speeds for zero and constant vorticity.

    For ``U = gamma*y`` the classical expression
    ``-gamma T/(2k) + sqrt(gamma^2 T^2/(4k^2) + g T/k)`` with ``T = tanh(k h0)``
    is the speed relative to the surface current ``U(h0)``. ``frame="bed"``
    (the default) adds ``gamma*h0`` back, giving the speed in the frame where
    the bed is at rest, which is what ``bifurcation_speed`` returns.
    ``frame="surface"`` returns the relative speed.
    """
    T = np.tanh(k * h0)
    if variant == "zero":
        return float(np.sqrt(g * T / k))
    if variant != "constant":
        raise ValueError(f"unknown dispersion variant {variant!r}")
    rel = -gamma * T / (2 * k) + np.sqrt(gamma**2 * T**2 / (4 * k**2) + g * T / k)
    if frame == "surface":
        return float(rel)
    if frame != "bed":
        raise ValueError(f"frame must be 'bed' or 'surface', got {frame!r}")
    return float(rel + gamma * h0)


def closed_form_burns(variant: str, g: float, h0: float, gamma: float = 0.0) -> float:
    """Burns speed for zero vorticity, ``sqrt(g h0)``, and for ``U = gamma*y``."""
    if variant == "zero":
        return float(np.sqrt(g * h0))
    if variant == "constant":
        return float(0.5 * (gamma * h0 + np.sqrt(gamma**2 * h0**2 + 4 * g * h0)))
    raise ValueError(f"unknown Burns variant {variant!r}")
