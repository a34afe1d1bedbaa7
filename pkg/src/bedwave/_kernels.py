"""Hot inner loops, compiled with numba when available.

Every kernel has a pure-numpy twin with the same signature. The active
implementation is chosen once at import time; set ``BEDWAVE_DISABLE_NUMBA=1``
to force the numpy path (numba missing has the same effect).
"""

import os

import numpy as np

_DISABLED = os.environ.get("BEDWAVE_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by BEDWAVE_DISABLE_NUMBA")
    import numba
except ImportError:
    numba = None

HAVE_NUMBA = numba is not None


def backend():
    return "numba" if HAVE_NUMBA else "numpy"


# --------------------------------------------------------------------------
# RK4 for the linear system phi'' = A(y) phi + F(y), batched over columns.
#
# A and F are sampled at half steps: row 2*i is node i, row 2*i+1 is the
# midpoint between nodes i and i+1. Shape (2*n_steps + 1, m).
# --------------------------------------------------------------------------


def _rk4_linear_scalar(a, f, h, p, q):
    # single column: plain floats beat size-1 array arithmetic by ~10x
    n_steps = (len(a) - 1) // 2
    phi = [p]
    dphi = [q]
    half = 0.5 * h
    sixth = h / 6.0
    for i in range(n_steps):
        a0, am, a1 = a[2 * i], a[2 * i + 1], a[2 * i + 2]
        f0, fm, f1 = f[2 * i], f[2 * i + 1], f[2 * i + 2]
        k1p = q
        k1q = a0 * p + f0
        k2p = q + half * k1q
        k2q = am * (p + half * k1p) + fm
        k3p = q + half * k2q
        k3q = am * (p + half * k2p) + fm
        k4p = q + h * k3q
        k4q = a1 * (p + h * k3p) + f1
        p = p + sixth * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        q = q + sixth * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
        phi.append(p)
        dphi.append(q)
    return np.array(phi)[:, None], np.array(dphi)[:, None]


def rk4_linear_numpy(A, F, h, phi0, dphi0):
    n_steps = (A.shape[0] - 1) // 2
    m = A.shape[1]
    if m == 1:
        return _rk4_linear_scalar(
            A[:, 0].tolist(), F[:, 0].tolist(), float(h), float(phi0[0]), float(dphi0[0])
        )
    phi = np.empty((n_steps + 1, m))
    dphi = np.empty((n_steps + 1, m))
    p = np.array(phi0, dtype=float).reshape(m)
    q = np.array(dphi0, dtype=float).reshape(m)
    phi[0] = p
    dphi[0] = q
    half = 0.5 * h
    for i in range(n_steps):
        a0, am, a1 = A[2 * i], A[2 * i + 1], A[2 * i + 2]
        f0, fm, f1 = F[2 * i], F[2 * i + 1], F[2 * i + 2]
        k1p = q
        k1q = a0 * p + f0
        k2p = q + half * k1q
        k2q = am * (p + half * k1p) + fm
        k3p = q + half * k2q
        k3q = am * (p + half * k2p) + fm
        k4p = q + h * k3q
        k4q = a1 * (p + h * k3p) + f1
        p = p + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        q = q + (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
        phi[i + 1] = p
        dphi[i + 1] = q
    return phi, dphi


# --------------------------------------------------------------------------
# Surface series for the exact zero-vorticity relation:
#   R(x_j) = 2 Re sum_{n=1}^{N} q_n cosh(n k (h0 + eta_j)) exp(i n k x_j)
# q holds the n = 1..N coefficients (conjugate symmetry supplies n < 0).
# --------------------------------------------------------------------------


def surface_series_numpy(q_re, q_im, x, eta, h0, k):
    n = np.arange(1, q_re.shape[0] + 1, dtype=float)
    arg = np.outer(k * x, n)
    depth = np.cosh(np.outer(h0 + eta, n * k))
    terms = depth * (np.cos(arg) * q_re - np.sin(arg) * q_im)
    return 2.0 * terms.sum(axis=1)


if HAVE_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def rk4_linear_numba(A, F, h, phi0, dphi0):
        n_steps = (A.shape[0] - 1) // 2
        m = A.shape[1]
        phi = np.empty((n_steps + 1, m))
        dphi = np.empty((n_steps + 1, m))
        half = 0.5 * h
        sixth = h / 6.0
        for j in range(m):
            p = phi0[j]
            q = dphi0[j]
            phi[0, j] = p
            dphi[0, j] = q
            for i in range(n_steps):
                a0 = A[2 * i, j]
                am = A[2 * i + 1, j]
                a1 = A[2 * i + 2, j]
                f0 = F[2 * i, j]
                fm = F[2 * i + 1, j]
                f1 = F[2 * i + 2, j]
                k1p = q
                k1q = a0 * p + f0
                k2p = q + half * k1q
                k2q = am * (p + half * k1p) + fm
                k3p = q + half * k2q
                k3q = am * (p + half * k2p) + fm
                k4p = q + h * k3q
                k4q = a1 * (p + h * k3p) + f1
                p = p + sixth * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
                q = q + sixth * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
                phi[i + 1, j] = p
                dphi[i + 1, j] = q
        return phi, dphi

    @numba.njit(cache=True, nogil=True)
    def surface_series_numba(q_re, q_im, x, eta, h0, k):
        # exp(i n k x) and exp(+-n k depth) by recurrence: one exp/sincos per point
        out = np.zeros(x.shape[0])
        for j in range(x.shape[0]):
            c1 = np.cos(k * x[j])
            s1 = np.sin(k * x[j])
            e1 = np.exp(k * (h0 + eta[j]))
            ie1 = 1.0 / e1
            cn, sn, en, ien = c1, s1, e1, ie1
            acc = 0.0
            for i in range(q_re.shape[0]):
                acc += 0.5 * (en + ien) * (cn * q_re[i] - sn * q_im[i])
                cn, sn = cn * c1 - sn * s1, sn * c1 + cn * s1
                en *= e1
                ien *= ie1
            out[j] = 2.0 * acc
        return out

    rk4_linear = rk4_linear_numba
    surface_series = surface_series_numba
else:
    rk4_linear_numba = None
    surface_series_numba = None
    rk4_linear = rk4_linear_numpy
    surface_series = surface_series_numpy
