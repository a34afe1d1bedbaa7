"""Solitary-wave surface reconstruction from decaying bed-pressure traces.

The horizontal coordinate is the long-wave scaled variable (x_phys = x / sqrt(eps)).
Fields are evaluated on a tensor grid: rows are depths y in [0, h0], columns
are positions x in [-L, L]. Integrals from -infinity are truncated at -L,
which the decay check on the input traces justifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import RectBivariateSpline

from .errors import NonUniformGrid
from .numerics import (
    DEFAULT_DECAY_TOL,
    Grid1D,
    SampledFunction,
    check_decay,
    cumulative_simpson,
    fd_bounded,
    fd_decaying,
    simpson,
)
from .rayleigh import WaveParameters, require_supercritical
from .shear import ShearProfile

DEFAULT_NX = 4097
DEFAULT_NY = 201
DEFAULT_HALF_WIDTH = 20.0


@dataclass(frozen=True, eq=False)
class DecayingTrace:
    """A trace on a grid symmetric about x = 0 that has decayed at both ends.

    ``derivatives`` optionally maps an order (1..4) to exact derivative samples;
    missing orders are computed by 4th-order finite differences.
    """

    grid: Grid1D
    values: np.ndarray
    decay_tol: float = DEFAULT_DECAY_TOL
    derivatives: dict = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.count,):
            raise ValueError(f"expected {self.grid.count} samples, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("trace values must be finite")
        half = 0.5 * self.grid.length
        if abs(self.grid.start + half) > 1e-9 * max(half, 1.0):
            raise NonUniformGrid(f"decaying trace grid must be symmetric about 0, starts at {self.grid.start}")
        check_decay(values, self.decay_tol)
        derivs = {}
        for order, d in dict(self.derivatives).items():
            d = np.asarray(d, dtype=float)
            if d.shape != values.shape:
                raise ValueError(f"derivative of order {order} has the wrong shape")
            derivs[int(order)] = d
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "derivatives", derivs)

    @classmethod
    def from_function(cls, f, half_width=DEFAULT_HALF_WIDTH, count=DEFAULT_NX, decay_tol=DEFAULT_DECAY_TOL, derivatives=None):
        """Sample ``f`` on ``[-half_width, half_width]``; ``derivatives`` are callables by order."""
        grid = Grid1D.span(-half_width, half_width, count)
        x = grid.coords
        derivs = {k: fn(x) for k, fn in (derivatives or {}).items()}
        return cls(grid, f(x), decay_tol, derivs)

    @classmethod
    def zeros_like(cls, other: "DecayingTrace"):
        return cls(other.grid, np.zeros(other.grid.count), other.decay_tol)

    @property
    def x(self) -> np.ndarray:
        return self.grid.coords

    def derivative(self, order: int) -> np.ndarray:
        if order == 0:
            return np.array(self.values)
        if order in self.derivatives:
            return self.derivatives[order]
        return fd_decaying(self.values, self.grid.step, order)

    def scaled(self, factor: float) -> "DecayingTrace":
        derivs = {k: factor * v for k, v in self.derivatives.items()}
        return DecayingTrace(self.grid, factor * self.values, self.decay_tol, derivs)

    def as_sampled(self) -> SampledFunction:
        return SampledFunction(self.grid, self.values)


def _same_grid(a: DecayingTrace, b: DecayingTrace):
    ga, gb = a.grid, b.grid
    if ga.count != gb.count or abs(ga.start - gb.start) > 1e-12 * abs(ga.start) or abs(ga.step - gb.step) > 1e-12 * ga.step:
        raise ValueError("pressure traces must share one x-grid")


@dataclass(frozen=True)
class FroudeTable:
    """``fr(y) = int_0^y dz / (U - c)^2`` on the depth grid."""

    fr: SampledFunction
    c: float

    @property
    def inverse_froude_squared(self) -> float:
        return float(self.fr.values[-1])


def froude_fr(profile: ShearProfile, c: float, ny: int = DEFAULT_NY) -> FroudeTable:
    require_supercritical(profile, c)
    grid = Grid1D.span(0.0, profile.h0, ny)
    U = profile.velocity(grid.coords)
    return FroudeTable(SampledFunction(grid, cumulative_simpson(1.0 / (U - c) ** 2, grid.step)), float(c))


def depth_constant(profile: ShearProfile, table: FroudeTable) -> float:
    """``int_0^h0 (U - c)^2 fr dy``, the factor multiplying ``-b1''`` in ``g eta2``."""
    grid = table.fr.grid
    U = profile.velocity(grid.coords)
    return float(simpson((U - table.c) ** 2 * table.fr.values, grid.step))


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GridFields:
    """``u, v, p`` sampled on the tensor grid, arrays of shape ``(ny, nx)``."""

    x: Grid1D
    y: Grid1D
    u: np.ndarray
    v: np.ndarray
    p: np.ndarray

    def divergence(self) -> np.ndarray:
        """``u_x + v_y`` by 4th-order differences (decaying in x, one-sided at the bed and surface)."""
        return fd_decaying(self.u, self.x.step, 1, axis=1) + fd_bounded(self.v, self.y.step, 1, axis=0)

    def sampler(self, name: str):
        """Bicubic interpolant ``f(x, y)`` of one field."""
        return RectBivariateSpline(self.y.coords, self.x.coords, getattr(self, name), kx=3, ky=3)

    def at(self, name: str, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return self.sampler(name).ev(y, x)


class _Pipeline:
    """Everything through third order, computed once for one set of inputs."""

    def __init__(self, profile, c, b1, b2=None, b3=None, ny=DEFAULT_NY):
        require_supercritical(profile, c)
        self.profile, self.c = profile, float(c)
        self.b1 = b1
        self.b2 = b2 if b2 is not None else DecayingTrace.zeros_like(b1)
        self.b3 = b3 if b3 is not None else DecayingTrace.zeros_like(b1)
        _same_grid(b1, self.b2)
        _same_grid(b1, self.b3)
        self.xg = b1.grid
        self.table = froude_fr(profile, c, ny)
        self.yg = self.table.fr.grid
        U, dU, d2U = profile.eval(self.yg.coords)
        self.rel = (U - c)[:, None]
        self.dU = dU[:, None]
        fr = self.table.fr.values
        self.fr = fr[:, None]
        self.A = (dU * fr + 1.0 / (U - c))[:, None]
        self.B = ((U - c) * fr)[:, None]
        self.dA = (d2U * fr)[:, None]
        self.K = cumulative_simpson((U - c) ** 2 * fr, self.yg.step)[:, None]
        self._first = None
        self._second = None

    def d(self, trace, order):
        return trace.derivative(order)[None, :]

    def first(self):
        if self._first is None:
            b1, b1x, b1xx = self.d(self.b1, 0), self.d(self.b1, 1), self.d(self.b1, 2)
            ones = np.ones_like(self.A)
            self._first = dict(
                u=-b1 * self.A,
                v=b1x * self.B,
                p=b1 * ones,
                ux=-b1x * self.A,
                uy=-b1 * self.dA,
                vx=b1xx * self.B,
                vy=b1x * self.A,
            )
        return self._first

    def second(self):
        if self._second is None:
            f = self.first()
            b1xx, b1xxx = self.d(self.b1, 2), self.d(self.b1, 3)
            b2, b2x = self.d(self.b2, 0), self.d(self.b2, 1)
            p2 = -b1xx * self.K + b2
            p2x = -b1xxx * self.K + b2x
            G = p2x + f["u"] * f["ux"] + f["v"] * f["uy"]
            G2 = G / self.rel**2
            v2 = self.rel * cumulative_simpson(G2, self.yg.step, axis=0)
            dx = self.xg.step
            u2 = -self.dU * cumulative_simpson(cumulative_simpson(G2, dx, axis=1), self.yg.step, axis=0)
            u2 = u2 - cumulative_simpson(G / self.rel, dx, axis=1)
            self._second = dict(u=u2, v=v2, p=p2)
        return self._second

    def eta1(self, g):
        return self.b1.values / g

    def eta2(self, g):
        return (-self.K[-1, 0] * self.b1.derivative(2) + self.b2.values) / g

    def eta3(self, g):
        f, s = self.first(), self.second()
        v2x = fd_decaying(s["v"], self.xg.step, 1, axis=1)
        integrand = self.rel * v2x + f["u"] * f["vx"] + f["v"] * f["vy"]
        return (-simpson(integrand, self.yg.step, axis=0) + self.b3.values) / g


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def _trace(values, like: DecayingTrace) -> DecayingTrace:
    # reconstructed orders get a 10x looser end budget than the inputs
    return DecayingTrace(like.grid, values, 10 * like.decay_tol)


def reconstruct_eta1(b1: DecayingTrace, g: float) -> DecayingTrace:
    """Hydrostatic first order: ``g eta1 = b1``, whatever the current."""
    return DecayingTrace(b1.grid, b1.values / g, b1.decay_tol, {k: v / g for k, v in b1.derivatives.items()})


def first_order_fields(profile: ShearProfile, c: float, b1: DecayingTrace, ny: int = DEFAULT_NY) -> GridFields:
    """``u1 = -b1 (U' fr + 1/(U-c))``, ``v1 = b1' (U-c) fr``, ``p1 = b1``."""
    pipe = _Pipeline(profile, c, b1, ny=ny)
    f = pipe.first()
    return GridFields(pipe.xg, pipe.yg, f["u"], f["v"], f["p"])


def reconstruct_eta2(
    profile: ShearProfile, c: float, b1: DecayingTrace, b2: DecayingTrace | None, g: float, ny: int = DEFAULT_NY
) -> DecayingTrace:
    """``g eta2 = -K b1'' + b2`` with ``K = int_0^h0 (U - c)^2 fr dy``."""
    pipe = _Pipeline(profile, c, b1, b2, ny=ny)
    return _trace(pipe.eta2(g), b1)


def second_order_fields(
    profile: ShearProfile, c: float, b1: DecayingTrace, b2: DecayingTrace | None = None, ny: int = DEFAULT_NY
) -> GridFields:
    pipe = _Pipeline(profile, c, b1, b2, ny=ny)
    s = pipe.second()
    return GridFields(pipe.xg, pipe.yg, s["u"], s["v"], s["p"])


def reconstruct_eta3(
    profile: ShearProfile,
    c: float,
    b1: DecayingTrace,
    b2: DecayingTrace | None,
    b3: DecayingTrace | None,
    g: float,
    ny: int = DEFAULT_NY,
) -> DecayingTrace:
    """``g eta3 = -int_0^h0 ((U-c) v2_x + u1 v1_x + v1 v1_y) dy + b3``."""
    pipe = _Pipeline(profile, c, b1, b2, b3, ny=ny)
    return _trace(pipe.eta3(g), b1)


@dataclass(frozen=True)
class SolitaryReconstruction:
    eta1: DecayingTrace
    eta2: DecayingTrace | None
    eta3: DecayingTrace | None
    surface: SampledFunction
    params: WaveParameters

    @property
    def orders(self):
        return [e for e in (self.eta1, self.eta2, self.eta3) if e is not None]


def reconstruct_solitary(
    profile: ShearProfile,
    params: WaveParameters,
    b1: DecayingTrace,
    b2: DecayingTrace | None = None,
    b3: DecayingTrace | None = None,
    order: int = 3,
    ny: int = DEFAULT_NY,
) -> SolitaryReconstruction:
    """``h = h0 + eps eta1 + eps^2 eta2 + eps^3 eta3`` up to ``order``."""
    if order not in (1, 2, 3):
        raise ValueError(f"solitary order must be 1, 2 or 3, got {order}")
    g, eps = params.g, params.eps
    eta1 = reconstruct_eta1(b1, g)
    surface = params.h0 + eps * eta1.values
    eta2 = eta3 = None
    if order >= 2:
        pipe = _Pipeline(profile, params.c, b1, b2, b3, ny=ny)
        eta2 = _trace(pipe.eta2(g), b1)
        surface = surface + eps**2 * eta2.values
        if order == 3:
            eta3 = _trace(pipe.eta3(g), b1)
            surface = surface + eps**3 * eta3.values
    return SolitaryReconstruction(eta1, eta2, eta3, SampledFunction(b1.grid, surface), params)
