"""Orthonormal polynomial evaluation and Christoffel-Darboux kernels.

Everything here is pointwise: the coupled recursion

    phi_n  = (z phi_{n-1} - conj(a_{n-1}) phi*_{n-1}) / rho_{n-1}
    phi*_n = (phi*_{n-1} - a_{n-1} z phi_{n-1}) / rho_{n-1}

with rho_j = (1 - |a_j|^2)^{1/2} produces orthonormal values directly;
the log of the monic norm is accumulated on the side so that levels in
the hundreds stay inside double range even for non-decaying
coefficients.  `z` may be a scalar or any ndarray; results broadcast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import SingularKernelError

if TYPE_CHECKING:
    from .coeffs import VerblunskySequence

# below this, the closed-form kernel quotients have lost too much
# precision to be meaningful; callers are pointed at the summed form
DIAGONAL_GUARD = 1e-8

KERNEL_MODES = ("sum", "closed_level_n", "closed_level_nm1")


@dataclass
class PolyPairValue:
    """Orthonormal values phi_n(z), phi_n*(z) and log ||Phi_n||."""

    phi: complex | np.ndarray
    phi_star: complex | np.ndarray
    log_norm: float


@dataclass
class KernelValue:
    value: complex | np.ndarray
    n: int
    mode: str


def _as_points(z):
    arr = np.asarray(z, dtype=complex)
    return arr, (arr.ndim == 0)


def _maybe_scalar(value, scalar: bool):
    return complex(value[()]) if scalar else value


def _rho(alphas: np.ndarray) -> np.ndarray:
    return np.sqrt(1.0 - np.abs(alphas) ** 2)


def _recurse(alphas: np.ndarray, rho: np.ndarray, z: np.ndarray):
    """Run the coupled recursion to level len(alphas); yields nothing, returns final pair."""
    phi = np.ones_like(z)
    ps = np.ones_like(z)
    for j in range(alphas.size):
        t = z * phi
        phi = (t - np.conj(alphas[j]) * ps) / rho[j]
        ps = (ps - alphas[j] * t) / rho[j]
    return phi, ps


def eval_pair(seq: "VerblunskySequence", n: int, z) -> PolyPairValue:
    """Evaluate the orthonormal pair at level n (phi_0 = phi_0* = 1)."""
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    zz, scalar = _as_points(z)
    a = seq.alphas(n)
    rho = _rho(a)
    phi, ps = _recurse(a, rho, zz)
    log_norm = float(np.log(rho).sum()) if n else 0.0
    return PolyPairValue(_maybe_scalar(phi, scalar), _maybe_scalar(ps, scalar), log_norm)


def eval_second_kind(seq: "VerblunskySequence", n: int, z) -> PolyPairValue:
    """Same contract as eval_pair, applied to the sign-flipped coefficients."""
    return eval_pair(seq.flipped(), n, z)


def monic_norm(seq: "VerblunskySequence", n: int) -> float:
    """||Phi_n|| = prod_{j<n} (1 - |alpha_j|^2)^{1/2}."""
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    return float(np.prod(_rho(seq.alphas(n)))) if n else 1.0


def _level_values(seq, n: int, z: np.ndarray, levels: tuple[int, ...]):
    """Pairs (phi_j, phi_j*) at the requested levels, one pass."""
    a = seq.alphas(max(levels))
    rho = _rho(a)
    phi = np.ones_like(z)
    ps = np.ones_like(z)
    out = {}
    if 0 in levels:
        out[0] = (phi, ps)
    for j in range(a.size):
        t = z * phi
        phi = (t - np.conj(a[j]) * ps) / rho[j]
        ps = (ps - a[j] * t) / rho[j]
        if j + 1 in levels:
            out[j + 1] = (phi, ps)
    return out


def _guard_diagonal(y: np.ndarray, z: np.ndarray) -> np.ndarray:
    denom = 1.0 - np.conj(y) * z
    if np.min(np.abs(denom)) <= DIAGONAL_GUARD:
        raise SingularKernelError(
            "closed-form kernel requested with |1 - conj(y) z| <= 1e-8; use mode='sum'"
        )
    return denom


def cd_kernel(seq: "VerblunskySequence", n: int, z, y, mode: str = "sum") -> KernelValue:
    """Reproducing kernel K_{n-1}(z, y) = sum_{j<n} phi_j(z) conj(phi_j(y)).

    Three routes to the same number: the plain sum, and the two closed
    quotient forms (levels n and n-1 over 1 - conj(y) z).  The closed
    forms refuse to evaluate near the diagonal.
    """
    if mode not in KERNEL_MODES:
        raise ValueError(f"mode must be one of {KERNEL_MODES}, got {mode!r}")
    if n < 1:
        raise ValueError(f"kernel level must be >= 1, got {n}")
    zz, scalar_z = _as_points(z)
    yy, scalar_y = _as_points(y)
    scalar = scalar_z and scalar_y
    if mode == "sum":
        a = seq.alphas(n - 1)
        rho = _rho(a)
        phi_z = np.ones_like(zz)
        ps_z = np.ones_like(zz)
        phi_y = np.ones_like(yy)
        ps_y = np.ones_like(yy)
        acc = phi_z * np.conj(phi_y)
        for j in range(a.size):
            tz = zz * phi_z
            phi_z = (tz - np.conj(a[j]) * ps_z) / rho[j]
            ps_z = (ps_z - a[j] * tz) / rho[j]
            ty = yy * phi_y
            phi_y = (ty - np.conj(a[j]) * ps_y) / rho[j]
            ps_y = (ps_y - a[j] * ty) / rho[j]
            acc = acc + phi_z * np.conj(phi_y)
        return KernelValue(_maybe_scalar(acc, scalar), n, mode)
    denom = _guard_diagonal(yy, zz)
    if mode == "closed_level_n":
        vz = _level_values(seq, n, zz, (n,))[n]
        vy = _level_values(seq, n, yy, (n,))[n]
        num = np.conj(vy[1]) * vz[1] - np.conj(vy[0]) * vz[0]
    else:  # closed_level_nm1
        vz = _level_values(seq, n, zz, (n - 1,))[n - 1]
        vy = _level_values(seq, n, yy, (n - 1,))[n - 1]
        num = np.conj(vy[1]) * vz[1] - np.conj(yy) * zz * np.conj(vy[0]) * vz[0]
    return KernelValue(_maybe_scalar(num / denom, scalar), n, mode)


def mixed_kernel(seq: "VerblunskySequence", n: int, z, y, mode: str = "sum"):
    """Mixed kernel sum_{j<n} conj(phi_j(y)) psi_j(z) and its closed form.

    The closed form reads (2 - conj(phi_n*(y)) psi_n*(z)
    - conj(phi_n(y)) psi_n(z)) / (1 - conj(y) z) and needs y != z.
    """
    if mode not in ("sum", "closed"):
        raise ValueError(f"mode must be 'sum' or 'closed', got {mode!r}")
    if n < 1:
        raise ValueError(f"kernel level must be >= 1, got {n}")
    zz, scalar_z = _as_points(z)
    yy, scalar_y = _as_points(y)
    scalar = scalar_z and scalar_y
    fseq = seq.flipped()
    if mode == "sum":
        a = seq.alphas(n - 1)
        rho = _rho(a)
        phi_y = np.ones_like(yy)
        ps_y = np.ones_like(yy)
        psi_z = np.ones_like(zz)
        psst_z = np.ones_like(zz)
        acc = np.conj(phi_y) * psi_z
        for j in range(a.size):
            ty = yy * phi_y
            phi_y = (ty - np.conj(a[j]) * ps_y) / rho[j]
            ps_y = (ps_y - a[j] * ty) / rho[j]
            tz = zz * psi_z
            psi_z = (tz + np.conj(a[j]) * psst_z) / rho[j]
            psst_z = (psst_z + a[j] * tz) / rho[j]
            acc = acc + np.conj(phi_y) * psi_z
        return _maybe_scalar(acc, scalar)
    denom = _guard_diagonal(yy, zz)
    vy = _level_values(seq, n, yy, (n,))[n]
    vz = _level_values(fseq, n, zz, (n,))[n]
    num = 2.0 - np.conj(vy[1]) * vz[1] - np.conj(vy[0]) * vz[0]
    return _maybe_scalar(num / denom, scalar)


def mixed_form(seq: "VerblunskySequence", n: int, z, y, level: str = "n"):
    """The two sides of the level identity for the mixed combination.

    level="n":   conj(phi_n*(y)) psi_n*(z) + conj(phi_n(y)) psi_n(z)
    level="nm1": conj(phi_{n-1}*(y)) psi_{n-1}*(z)
                 + z conj(y) conj(phi_{n-1}(y)) psi_{n-1}(z)

    Both equal the same degree-n combination; tests compare them.
    """
    if level not in ("n", "nm1"):
        raise ValueError(f"level must be 'n' or 'nm1', got {level!r}")
    if n < 1:
        raise ValueError(f"level must be >= 1, got {n}")
    zz, scalar_z = _as_points(z)
    yy, scalar_y = _as_points(y)
    scalar = scalar_z and scalar_y
    fseq = seq.flipped()
    if level == "n":
        vy = _level_values(seq, n, yy, (n,))[n]
        vz = _level_values(fseq, n, zz, (n,))[n]
        out = np.conj(vy[1]) * vz[1] + np.conj(vy[0]) * vz[0]
    else:
        vy = _level_values(seq, n, yy, (n - 1,))[n - 1]
        vz = _level_values(fseq, n, zz, (n - 1,))[n - 1]
        out = np.conj(vy[1]) * vz[1] + zz * np.conj(yy) * np.conj(vy[0]) * vz[0]
    return _maybe_scalar(out, scalar)
