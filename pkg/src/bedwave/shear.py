"""Background shear currents U(y) on the undisturbed layer 0 <= y <= h0."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import BadHeader, NonUniformGrid, OutOfDomain

_DOMAIN_SLACK = 1e-12


class ShearProfile:
    """Base class. Subclasses provide ``_eval`` and ``max_velocity``.

    ``eval`` returns ``(U, U', U'')`` with the shape of ``y``.
    """

    h0: float

    def _check_h0(self):
        if not (np.isfinite(self.h0) and self.h0 > 0):
            raise ValueError(f"depth h0 must be positive, got {self.h0}")

    def eval(self, y):
        y = np.asarray(y, dtype=float)
        slack = _DOMAIN_SLACK * self.h0
        if np.any(y < -slack) or np.any(y > self.h0 + slack) or np.any(~np.isfinite(y)):
            raise OutOfDomain(f"y must lie in [0, {self.h0}]")
        U, dU, d2U = self._eval(np.clip(y, 0.0, self.h0))
        shape = y.shape
        return (
            np.broadcast_to(U, shape).astype(float),
            np.broadcast_to(dU, shape).astype(float),
            np.broadcast_to(d2U, shape).astype(float),
        )

    def velocity(self, y):
        return self.eval(y)[0]

    def vorticity(self, y):
        return -self.eval(y)[1]

    def max_velocity(self) -> float:
        raise NotImplementedError

    def _eval(self, y):
        raise NotImplementedError


@dataclass(frozen=True)
class ZeroFlow(ShearProfile):
    h0: float

    def __post_init__(self):
        self._check_h0()

    def _eval(self, y):
        z = np.zeros_like(y)
        return z, z, z

    def max_velocity(self):
        return 0.0


@dataclass(frozen=True)
class ConstantVorticity(ShearProfile):
    """``U(y) = gamma * y``; the vorticity is ``-gamma``."""

    gamma: float
    h0: float

    def __post_init__(self):
        self._check_h0()

    def _eval(self, y):
        return self.gamma * y, np.full_like(y, self.gamma), np.zeros_like(y)

    def max_velocity(self):
        return max(0.0, self.gamma * self.h0)


@dataclass(frozen=True)
class Poiseuille(ShearProfile):
    """``U(y) = h0**2 - y**2`` (unit curvature coefficient, as in the literature)."""

    h0: float

    def __post_init__(self):
        self._check_h0()

    def _eval(self, y):
        return self.h0**2 - y**2, -2.0 * y, np.full_like(y, -2.0)

    def max_velocity(self):
        return self.h0**2


def _end_curvature(y, U, at):
    cubic = np.polynomial.Polynomial.fit(y, U, 3)
    return float(cubic.deriv(2)(at))


@dataclass(frozen=True, eq=False)
class TabulatedProfile(ShearProfile):
    """Cubic spline through samples ``(y_i, U_i)`` with ``y_0 = 0``.

    U'' is continuous on [0, h0]. The end curvatures are taken from the cubic
    through the four outermost samples rather than forced to zero, so profiles
    with U'' != 0 at the bed or surface are reproduced to spline accuracy there.
    """

    y: np.ndarray
    U: np.ndarray
    h0: float = field(init=False)
    _spline: CubicSpline = field(init=False, repr=False)

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float)
        U = np.asarray(self.U, dtype=float)
        if y.ndim != 1 or y.shape != U.shape or y.size < 4:
            raise ValueError("tabulated profile needs matching y and U arrays with >= 4 samples")
        if not (np.all(np.isfinite(y)) and np.all(np.isfinite(U))):
            raise ValueError("tabulated profile values must be finite")
        if abs(y[0]) > 1e-12 * max(1.0, abs(y[-1])):
            raise ValueError(f"tabulated profile must start at y=0, got {y[0]}")
        if np.any(np.diff(y) <= 0):
            raise NonUniformGrid("tabulated profile y must be strictly increasing")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "h0", float(y[-1]))
        bc = (_end_curvature(y[:4], U[:4], y[0]), _end_curvature(y[-4:], U[-4:], y[-1]))
        object.__setattr__(self, "_spline", CubicSpline(y, U, bc_type=((2, bc[0]), (2, bc[1]))))
        self._check_h0()

    def _eval(self, y):
        s = self._spline
        return s(y), s(y, 1), s(y, 2)

    def max_velocity(self):
        candidates = [self.U[0], self.U[-1], np.max(self._spline(np.linspace(0.0, self.h0, 20 * self.y.size + 1)))]
        roots = self._spline.derivative().roots(extrapolate=False)
        roots = roots[(roots >= 0) & (roots <= self.h0)]
        if roots.size:
            candidates.append(np.max(self._spline(roots)))
        return float(max(candidates))


@dataclass(frozen=True)
class Rescaled(ShearProfile):
    """``base`` seen in coordinates stretched by ``k``: y' = k y, velocities unchanged."""

    base: ShearProfile
    k: float
    h0: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "h0", self.base.h0 * self.k)

    def _eval(self, y):
        U, dU, d2U = self.base.eval(np.clip(y / self.k, 0.0, self.base.h0))
        return U, dU / self.k, d2U / self.k**2

    def max_velocity(self):
        return self.base.max_velocity()


def rescale(profile: ShearProfile, k: float) -> ShearProfile:
    return profile if k == 1.0 else Rescaled(profile, float(k))


def sample_profile(profile: ShearProfile, count: int = 101) -> TabulatedProfile:
    y = np.linspace(0.0, profile.h0, count)
    return TabulatedProfile(y, profile.velocity(y))


def load_profile_csv(path) -> TabulatedProfile:
    """Read a ``y,U`` CSV (header required, SI units) into a tabulated profile."""
    with open(Path(path), newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0]] != ["y", "U"]:
        raise BadHeader(f"{path}: expected header 'y,U'")
    try:
        data = np.array([[float(v) for v in r] for r in rows[1:] if r], dtype=float)
    except ValueError as exc:
        raise BadHeader(f"{path}: non-numeric entry ({exc})") from None
    if data.ndim != 2 or data.shape[1] != 2:
        raise BadHeader(f"{path}: expected two columns")
    return TabulatedProfile(data[:, 0], data[:, 1])


def make_profile(kind: str, h0: float, gamma: float = 0.0, csv_path=None) -> ShearProfile:
    kind = kind.lower()
    if kind == "zero":
        return ZeroFlow(h0)
    if kind in ("constant", "constant_vorticity"):
        return ConstantVorticity(gamma, h0)
    if kind == "poiseuille":
        return Poiseuille(h0)
    if kind in ("csv", "tabulated"):
        if csv_path is None:
            raise ValueError("tabulated profile requires a CSV path")
        prof = load_profile_csv(csv_path)
        if h0 is not None and abs(prof.h0 - h0) > 1e-9 * h0:
            raise ValueError(f"profile CSV ends at y={prof.h0}, but h0={h0}")
        return prof
    raise ValueError(f"unknown profile kind {kind!r}")
