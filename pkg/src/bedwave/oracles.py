"""Reference solutions used to validate the numerical reconstructions.

Closed forms for zero and constant vorticity (Stokes and solitary), the
Poiseuille solitary second order, the classical small-amplitude comparison
formulas for irrotational flow, and a fixed-point solver for the exact
zero-vorticity relation between bed pressure and surface elevation.

All samplers here are plain functions of ``x`` and never touch the finite
difference or Rayleigh machinery they are meant to check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.integrate import solve_ivp

from . import _kernels
from .errors import BranchViolation, NoConvergence
from .numerics import SampledFunction, spectral_derivative
from .shear import ShearProfile

# ---------------------------------------------------------------------------
# Stokes waves (k = 1)
# ---------------------------------------------------------------------------


def closed_form_stokes(variant: str, b: float, c: float, h0: float, g: float, gamma: float = 0.0):
    """``(eta1, eta2)`` for the bed pressure ``b cos x`` at wavenumber 1.

    ``variant`` is ``"zero"`` or ``"constant"`` (``U = gamma y``).
    """
    if variant == "zero":
        gamma = 0.0
    elif variant != "constant":
        raise ValueError(f"unknown Stokes variant {variant!r}")
    B2 = (b / c) ** 2
    a1 = ((c - gamma * h0) / c * np.cosh(h0) + gamma / c * np.sinh(h0)) * b / g
    mean2 = -0.5 * B2 * np.sinh(h0) ** 2 / g
    harm2 = 0.25 * B2 * ((c - gamma * h0) / c * np.cosh(2 * h0) + gamma / (2 * c) * np.sinh(2 * h0) - 1.0) / g

    def eta1(x):
        return a1 * np.cos(np.asarray(x, dtype=float))

    def eta2(x):
        return mean2 + harm2 * np.cos(2 * np.asarray(x, dtype=float))

    return eta1, eta2


def appendix_asymptotic_eta(variant: str, b: float, c: float, h0: float, g: float):
    """Small-amplitude expansions of the exact irrotational relation.

    ``ovdh1``: ``(b/g) cosh(h0) cos x``.
    ``ovdh2``: ``(1/g)(b/2c)^2 (1 + 4 sinh^2(h0) cos 2x)``.
    ``ovdh2_minus``: the same with mean ``-1``, which is what the expansion
    gives when the zeroth mode is left out of the bed series.
    ``whitham2``: ``(1/g)(1/4)(b/c)^2 (-1/cosh^2 h0 + (2 + 3/sinh^2 h0) cos 2x)``.
    """
    if variant == "ovdh1":
        amp = b * np.cosh(h0) / g
        return lambda x: amp * np.cos(np.asarray(x, dtype=float))
    if variant in ("ovdh2", "ovdh2_minus"):
        s = (b / (2 * c)) ** 2 / g
        mean = s if variant == "ovdh2" else -s
        harm = 4 * s * np.sinh(h0) ** 2
        return lambda x: mean + harm * np.cos(2 * np.asarray(x, dtype=float))
    if variant == "whitham2":
        s = 0.25 * (b / c) ** 2 / g
        mean = -s / np.cosh(h0) ** 2
        harm = s * (2 + 3 / np.sinh(h0) ** 2)
        return lambda x: mean + harm * np.cos(2 * np.asarray(x, dtype=float))
    raise ValueError(f"unknown asymptotic variant {variant!r}")


def second_order_terms(variant: str, b: float, c: float, h0: float, g: float):
    """``(mean, second-harmonic amplitude)`` of a second-order elevation."""
    if variant == "stokes":
        _, eta2 = closed_form_stokes("zero", b, c, h0, g)
    else:
        eta2 = appendix_asymptotic_eta(variant, b, c, h0, g)
    e0, epi2 = float(eta2(0.0)), float(eta2(np.pi / 2))
    return 0.5 * (e0 + epi2), 0.5 * (e0 - epi2)


# ---------------------------------------------------------------------------
# Solitary waves
# ---------------------------------------------------------------------------


def sech2_trace_derivatives(amplitude: float = 0.1, max_order: int = 4):
    """Exact ``d^k/dx^k [amplitude sech^2 x]`` for k = 0..max_order, as callables.

    With ``t = tanh x`` every derivative is a polynomial in ``t`` and
    ``d/dx P(t) = P'(t) (1 - t^2)``.
    """
    polys = [amplitude * np.array([1.0, 0.0, -1.0])]
    for _ in range(max_order):
        polys.append(P.polymul(P.polyder(polys[-1]), [1.0, 0.0, -1.0]))
    return [lambda x, p=p: P.polyval(np.tanh(np.asarray(x, dtype=float)), p) for p in polys]


def poiseuille_fr(y, c: float, h0: float, form: str = "arctan"):
    """``int_0^y dz / (h0^2 - z^2 - c)^2`` in closed form, ``a = sqrt(c - h0^2)``.

    ``form="artanh"`` swaps arctan for the inverse hyperbolic tangent; that
    expression is not an antiderivative and is kept only to show the mismatch.
    """
    a = np.sqrt(c - h0**2)
    y = np.asarray(y, dtype=float)
    if form == "arctan":
        inv = np.arctan(y / a)
    elif form == "artanh":
        inv = np.arctanh(y / a)
    else:
        raise ValueError(f"unknown form {form!r}")
    return (a * y / (y**2 + a**2) + inv) / (2 * a**3)


def poiseuille_depth_constant(c: float, h0: float) -> float:
    """``int_0^h0 (U - c)^2 fr dy`` for Poiseuille flow, in closed form."""
    a2 = c - h0**2
    a = np.sqrt(a2)
    bracket = h0 * (15 * c**2 - 20 * c * h0**2 + 8 * h0**4) * np.arctan(h0 / a) + a * (
        h0**2 * (4 * c - h0**2) + 4 * a2**2 * np.log(a2 / c)
    )
    return float(bracket / (30 * a**3))


def _as_callables(b1_derivs):
    if callable(b1_derivs):
        raise TypeError("pass a sequence [b1, b1', b1'', ...] of callables")
    return list(b1_derivs)


def closed_form_solitary(variant: str, b1_derivs, c: float, h0: float, g: float, gamma: float = 0.0, eta3_form: str = "consistent"):
    """Closed-form solitary elevations built from exact derivatives of ``b1``.

    ``b1_derivs`` lists callables ``[b1, b1', b1'', b1''', b1'''']``.

    ``zero`` returns ``(eta1, eta2, eta3)``; ``eta3_form="consistent"`` uses
    ``g eta3 = h0^4 b1''''/24 - h0^2 b1'^2 / c^2``, ``"linear_depth"`` uses
    ``h0 b1'^2 / c`` in the last term (not dimensionally consistent, kept for
    comparison). ``constant`` and ``poiseuille`` return ``(eta1, eta2)``.
    ``ovdh_dimensionless`` returns the three dimensionless long-wave terms
    ``(b1, -b1''/2, b1''''/24 - b1 b1'' - b1'^2 (c^2 + 1/c^2)/2)``.
    """
    d = _as_callables(b1_derivs)

    def eta1(x):
        return d[0](x) / g

    if variant == "ovdh_dimensionless":
        return (
            lambda x: d[0](x),
            lambda x: -0.5 * d[2](x),
            lambda x: d[4](x) / 24 - d[0](x) * d[2](x) - 0.5 * d[1](x) ** 2 * (c**2 + 1 / c**2),
        )
    if variant == "zero":
        K = 0.5 * h0**2
    elif variant == "constant":
        K = 0.5 * h0**2 - gamma * h0**3 / (3 * c)
    elif variant == "poiseuille":
        K = poiseuille_depth_constant(c, h0)
    else:
        raise ValueError(f"unknown solitary variant {variant!r}")

    def eta2(x):
        return -K * d[2](x) / g

    if variant != "zero":
        return eta1, eta2
    if eta3_form == "consistent":
        last = lambda x: h0**2 * d[1](x) ** 2 / c**2
    elif eta3_form == "linear_depth":
        last = lambda x: h0 * d[1](x) ** 2 / c
    else:
        raise ValueError(f"unknown eta3 form {eta3_form!r}")

    def eta3(x):
        return (h0**4 * d[4](x) / 24 - last(x)) / g

    return eta1, eta2, eta3


@dataclass(frozen=True)
class DepthMoments:
    """Depth integrals that make the solitary second and third orders separable in x.

    With ``A = U' fr + 1/(U-c)``, ``B = (U-c) fr``, ``K(y) = int_0^y (U-c)^2 fr``:
    ``g eta2 = -K(h0) b1'' + b2`` and, for ``b2 = b3 = 0``,
    ``g eta3 = M1 b1'''' - M2 (b1'^2 + b1 b1'') - M3 (b1'^2 - b1 b1'')``.
    """

    fr_h0: float
    K: float
    M1: float
    M2: float
    M3: float


def solitary_depth_moments(profile: ShearProfile, c: float, rtol: float = 1e-13) -> DepthMoments:
    """Evaluate every depth integral by one adaptive high-order ODE solve."""
    Uh0 = profile.max_velocity()
    if not c > Uh0:
        raise ValueError("c must exceed max U")

    def rhs(y, s):
        fr, K, L1, _, L2, _, _ = s
        U, dU, d2U = (float(v) for v in profile.eval(min(max(y, 0.0), profile.h0)))
        r = U - c
        A = dU * fr + 1 / r
        B = r * fr
        return [1 / r**2, r**2 * fr, K / r**2, r**2 * L1, (A * A - B * d2U * fr) / r**2, r**2 * L2, A * B]

    sol = solve_ivp(rhs, (0.0, profile.h0), np.zeros(7), method="DOP853", rtol=rtol, atol=1e-15)
    fr, K, _, M1, _, M2, M3 = sol.y[:, -1]
    return DepthMoments(float(fr), float(K), float(M1), float(M2), float(M3))


def separable_solitary_eta(profile: ShearProfile, c: float, b1_derivs, g: float, moments: DepthMoments | None = None):
    """``(eta2, eta3)`` for ``b2 = b3 = 0`` from depth moments and exact derivatives of ``b1``."""
    d = _as_callables(b1_derivs)
    m = moments or solitary_depth_moments(profile, c)

    def eta2(x):
        return -m.K * d[2](x) / g

    def eta3(x):
        b, b1, b2, b4 = d[0](x), d[1](x), d[2](x), d[4](x)
        return (m.M1 * b4 - m.M2 * (b1**2 + b * b2) - m.M3 * (b1**2 - b * b2)) / g

    return eta2, eta3


# ---------------------------------------------------------------------------
# Exact zero-vorticity relation
# ---------------------------------------------------------------------------

_Q_CUTOFF = 1e-13


@dataclass(frozen=True)
class ExactSolverState:
    q: np.ndarray  # coefficients of exp(i n k x), n = -N..N, q[N] = 0
    eta: SampledFunction
    iteration: int
    residual: float
    history: tuple = ()

    @property
    def converged_in(self) -> int:
        return self.iteration


def bed_series(pressure_trace: SampledFunction, c: float) -> np.ndarray:
    """Fourier coefficients of ``c - sqrt(c^2 - 2 p)`` with the zeroth mode removed."""
    p = pressure_trace.values
    disc = c * c - 2 * p
    if np.any(disc <= 0):
        raise BranchViolation("c^2 - 2p must stay positive on the bed for the subsonic branch")
    m = p.size
    grid = pressure_trace.grid
    period = m * grid.step
    nmax = (m - 1) // 2
    n = np.arange(-nmax, nmax + 1)
    spec = np.fft.fft(c - np.sqrt(disc)) / m
    q = spec[n % m] * np.exp(-2j * np.pi * n * grid.start / period)
    q[nmax] = 0.0
    return q


def _active_modes(q_pos):
    # cosh(n h0) amplifies roundoff in negligible modes; keep the leading block only
    mags = np.abs(q_pos)
    if mags.size == 0 or mags.max() == 0:
        return 0
    keep = mags > _Q_CUTOFF * mags.max()
    return int(np.argmin(keep)) if not keep.all() else keep.size


def exact_surface_velocity(q: np.ndarray, x, eta, h0: float, k: float = 1.0, n_active: int | None = None):
    """``sum_{n != 0} q_n cosh(n k (h0 + eta)) exp(i n k x)``."""
    nmax = (q.size - 1) // 2
    pos = q[nmax + 1 :]
    n_use = _active_modes(pos) if n_active is None else n_active
    pos = np.ascontiguousarray(pos[:n_use])
    x = np.ascontiguousarray(x, dtype=float)
    eta = np.ascontiguousarray(eta, dtype=float)
    if n_use == 0:
        return np.zeros_like(x)
    return _kernels.surface_series(pos.real.copy(), pos.imag.copy(), x, eta, float(h0), float(k))


def exact_zero_vorticity_solve(
    pressure_trace: SampledFunction,
    c: float,
    h0: float,
    g: float,
    tol: float = 1e-14,
    max_iter: int = 50,
    relaxation: float = 1.0,
) -> ExactSolverState:
    """Fixed-point solve of the exact irrotational relation for ``eta``.

    The bed trace gives ``q_n``; each sweep evaluates the surface velocity
    ``R`` at the previous ``eta`` and updates
    ``eta <- (c^2 - (c - R)^2 (1 + eta_x^2)) / (2 g)``, starting from ``p / g``.
    """
    if not 0 < relaxation <= 1:
        raise ValueError("relaxation must lie in (0, 1]")
    grid = pressure_trace.grid
    period = grid.count * grid.step
    k = 2 * np.pi / period
    q = bed_series(pressure_trace, c)
    n_active = _active_modes(q[(q.size - 1) // 2 + 1 :])
    x = grid.coords
    eta = pressure_trace.values / g
    history = []
    for it in range(1, max_iter + 1):
        R = exact_surface_velocity(q, x, eta, h0, k, n_active)
        slope = spectral_derivative(eta, grid.step, 1)
        update = (c * c - (c - R) ** 2 * (1 + slope**2)) / (2 * g)
        step = update - eta
        eta = eta + relaxation * step
        res = float(np.max(np.abs(step)))
        history.append(res)
        if res <= tol:
            return ExactSolverState(q, SampledFunction(grid, eta), it, res, tuple(history))
    raise NoConvergence(f"exact solver did not reach tol={tol:.1e} in {max_iter} iterations (last update {history[-1]:.3e})")


def exact_relation_defect(eta: SampledFunction, pressure_trace: SampledFunction, c: float, h0: float, g: float) -> np.ndarray:
    """Pointwise defect of ``c - sqrt((c^2 - 2 g eta)/(1 + eta_x^2)) = R(eta)``."""
    grid = eta.grid
    k = 2 * np.pi / (grid.count * grid.step)
    q = bed_series(pressure_trace, c)
    slope = spectral_derivative(eta.values, grid.step, 1)
    lhs = c - np.sqrt((c * c - 2 * g * eta.values) / (1 + slope**2))
    return lhs - exact_surface_velocity(q, grid.coords, eta.values, h0, k)
