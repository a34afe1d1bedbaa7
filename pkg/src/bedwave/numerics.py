"""Low-level numerical kernels shared by the reconstruction modules.

Fixed-step RK4 for linear second-order ODEs, Simpson quadrature (plain and
cumulative), spectral and finite-difference differentiation, and bracketed
root finding. Everything here is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Callable

import numpy as np
from scipy import integrate as _spi
from scipy import optimize as _spo

from . import _kernels
from .errors import DecayViolation, GridTooSmall, NoSignChange, NonFiniteCoefficient

DEFAULT_DECAY_TOL = 1e-10
DEFAULT_ROOT_TOL = 1e-12


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid ``start + i*step`` for ``i in range(count)``."""

    start: float
    step: float
    count: int

    def __post_init__(self):
        if not np.isfinite(self.start) or not np.isfinite(self.step):
            raise ValueError("grid start and step must be finite")
        if self.step <= 0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        if int(self.count) != self.count or self.count < 2:
            raise ValueError(f"grid needs at least 2 nodes, got {self.count}")
        object.__setattr__(self, "count", int(self.count))

    @classmethod
    def span(cls, start, stop, count):
        """Grid with both endpoints included."""
        return cls(float(start), (float(stop) - float(start)) / (count - 1), count)

    @classmethod
    def periodic(cls, period, count, start=0.0):
        """One period sampled without the right endpoint."""
        return cls(float(start), float(period) / count, count)

    @property
    def coords(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @property
    def stop(self) -> float:
        return self.start + self.step * (self.count - 1)

    @property
    def length(self) -> float:
        return self.step * (self.count - 1)

    def refined(self, factor: int) -> "Grid1D":
        return Grid1D(self.start, self.step / factor, (self.count - 1) * factor + 1)


@dataclass(frozen=True)
class SampledFunction:
    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.shape[0] != self.grid.count:
            raise ValueError(
                f"expected {self.grid.count} samples, got array of shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("sampled values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def x(self) -> np.ndarray:
        return self.grid.coords

    def __len__(self):
        return self.grid.count


# ---------------------------------------------------------------------------
# ODE integration
# ---------------------------------------------------------------------------


def half_step_nodes(grid: Grid1D) -> np.ndarray:
    """Nodes and midpoints of ``grid``, the RK4 evaluation points."""
    return grid.start + 0.5 * grid.step * np.arange(2 * grid.count - 1)


def integrate_linear_batch(A, F, step, phi0, dphi0):
    """RK4 for ``phi'' = A phi + F`` on several independent columns at once.

    ``A`` and ``F`` have shape ``(2*n_steps + 1, m)``, sampled at nodes and
    midpoints. Returns ``(phi, dphi)`` of shape ``(n_steps + 1, m)``.
    """
    A = np.ascontiguousarray(A, dtype=float)
    F = np.ascontiguousarray(np.broadcast_to(F, A.shape), dtype=float)
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(F))):
        raise NonFiniteCoefficient("ODE coefficients are not finite; U - c vanishes somewhere?")
    m = A.shape[1]
    phi0 = np.ascontiguousarray(np.broadcast_to(np.asarray(phi0, dtype=float), (m,)))
    dphi0 = np.ascontiguousarray(np.broadcast_to(np.asarray(dphi0, dtype=float), (m,)))
    return _kernels.rk4_linear(A, F, float(step), phi0, dphi0)


def integrate_second_order_ivp(
    rhs: Callable[[np.ndarray], tuple],
    phi0: float,
    dphi0: float,
    grid: Grid1D,
) -> tuple[SampledFunction, SampledFunction]:
    """Classical RK4 for ``phi'' = A(y) phi + F(y)`` with Cauchy data at ``grid.start``.

    ``rhs`` maps an array of ``y`` values to the pair ``(A, F)``; scalars are
    broadcast.
    """
    y = half_step_nodes(grid)
    with np.errstate(all="ignore"):
        a, f = rhs(y)
    a = np.broadcast_to(np.asarray(a, dtype=float), y.shape)
    f = np.broadcast_to(np.asarray(f, dtype=float), y.shape)
    phi, dphi = integrate_linear_batch(a[:, None], f[:, None], grid.step, phi0, dphi0)
    return SampledFunction(grid, phi[:, 0]), SampledFunction(grid, dphi[:, 0])


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------


def simpson(values, step, axis=-1):
    values = np.asarray(values, dtype=float)
    if values.shape[axis] < 3:
        raise GridTooSmall("Simpson quadrature needs at least 3 nodes")
    return _spi.simpson(values, dx=step, axis=axis)


def cumulative_simpson(values, step, axis=-1):
    values = np.asarray(values, dtype=float)
    if values.shape[axis] < 3:
        raise GridTooSmall("Simpson quadrature needs at least 3 nodes")
    return _spi.cumulative_simpson(values, dx=step, axis=axis, initial=0.0)


def quad(values: SampledFunction, cumulative: bool = False):
    """Composite Simpson integral over the whole grid, or the running integral."""
    if values.grid.count < 3:
        raise GridTooSmall("Simpson quadrature needs at least 3 nodes")
    if cumulative:
        return SampledFunction(values.grid, cumulative_simpson(values.values, values.grid.step))
    return float(simpson(values.values, values.grid.step))


# ---------------------------------------------------------------------------
# Differentiation
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def fd_weights(offsets: tuple, order: int) -> np.ndarray:
    """Finite-difference weights for the ``order``-th derivative on integer ``offsets``."""
    offs = np.asarray(offsets, dtype=float)
    n = offs.size
    if order >= n:
        raise ValueError("need more stencil points than the derivative order")
    vander = offs[None, :] ** np.arange(n)[:, None]
    rhs = np.zeros(n)
    rhs[order] = factorial(order)
    w = np.linalg.solve(vander, rhs)
    w.setflags(write=False)
    return w


def _central_offsets(order):
    m = (order + 1) // 2 + 1
    return tuple(range(-m, m + 1))


def _check_order(order):
    if order not in (1, 2, 3, 4):
        raise ValueError(f"derivative order must be 1..4, got {order}")


def fd_decaying(values, step, order, axis=-1):
    """4th-order central differences, treating samples beyond the ends as zero."""
    _check_order(order)
    offsets = _central_offsets(order)
    weights = fd_weights(offsets, order)
    v = np.moveaxis(np.asarray(values, dtype=float), axis, -1)
    m = offsets[-1]
    n = v.shape[-1]
    padded = np.pad(v, [(0, 0)] * (v.ndim - 1) + [(m, m)])
    out = np.zeros_like(v)
    for w, o in zip(weights, offsets):
        out += w * padded[..., m + o : m + o + n]
    return np.moveaxis(out / step**order, -1, axis)


def fd_bounded(values, step, order=1, axis=-1):
    """4th-order differences on a bounded interval, one-sided near the ends."""
    _check_order(order)
    offsets = _central_offsets(order)
    weights = fd_weights(offsets, order)
    v = np.moveaxis(np.asarray(values, dtype=float), axis, -1)
    n = v.shape[-1]
    m = offsets[-1]
    width = order + 4
    if n < max(width, 2 * m + 1):
        raise GridTooSmall(f"need at least {max(width, 2 * m + 1)} nodes for order {order}")
    out = np.zeros_like(v)
    for w, o in zip(weights, offsets):
        out[..., m : n - m] += w * v[..., m + o : n - m + o]
    for i in list(range(m)) + list(range(n - m, n)):
        lo = 0 if i < m else n - width
        w = fd_weights(tuple(range(lo - i, lo - i + width)), order)
        out[..., i] = v[..., lo : lo + width] @ w
    return np.moveaxis(out / step**order, -1, axis)


def spectral_derivative(values, step, order, axis=-1):
    """Exact derivative of the discrete Fourier interpolant of periodic samples."""
    v = np.moveaxis(np.asarray(values, dtype=float), axis, -1)
    n = v.shape[-1]
    wavenumber = 2.0 * np.pi * np.fft.rfftfreq(n, d=step)
    mult = (1j * wavenumber) ** order
    if n % 2 == 0 and order % 2 == 1:
        mult[-1] = 0.0
    out = np.fft.irfft(np.fft.rfft(v, axis=-1) * mult, n=n, axis=-1)
    return np.moveaxis(out, -1, axis)


def check_decay(values, decay_tol=DEFAULT_DECAY_TOL, axis=-1, what="trace"):
    v = np.moveaxis(np.asarray(values, dtype=float), axis, -1)
    scale = np.max(np.abs(v)) if v.size else 0.0
    ends = max(np.max(np.abs(v[..., 0])), np.max(np.abs(v[..., -1])))
    if ends > decay_tol * scale:
        raise DecayViolation(
            f"{what} has end values {ends:.3e}, above decay tolerance "
            f"{decay_tol:.1e} x max {scale:.3e}"
        )


def differentiate(
    values: SampledFunction,
    order: int,
    mode: str = "periodic",
    decay_tol: float = DEFAULT_DECAY_TOL,
) -> SampledFunction:
    """Derivative of order 1..4.

    ``periodic``: the grid covers one period without its right endpoint and the
    discrete Fourier interpolant is differentiated exactly. ``decaying``: 4th
    order central differences with zero extension; end values must be below
    ``decay_tol`` times the trace maximum.
    """
    _check_order(order)
    step = values.grid.step
    if mode == "periodic":
        out = spectral_derivative(values.values, step, order)
    elif mode == "decaying":
        check_decay(values.values, decay_tol)
        out = fd_decaying(values.values, step, order)
    elif mode == "bounded":
        out = fd_bounded(values.values, step, order)
    else:
        raise ValueError(f"unknown differentiation mode {mode!r}")
    return SampledFunction(values.grid, out)


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------


def find_root(f: Callable[[float], float], lo: float, hi: float, tol: float = DEFAULT_ROOT_TOL) -> float:
    """Root of ``f`` in ``[lo, hi]`` by Brent's bisection/secant/inverse-quadratic hybrid."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if not (np.isfinite(flo) and np.isfinite(fhi)) or np.sign(flo) == np.sign(fhi):
        raise NoSignChange(f"f({lo:.6g})={flo:.3e} and f({hi:.6g})={fhi:.3e} do not bracket a root")
    return float(_spo.brentq(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500))
