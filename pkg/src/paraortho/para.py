"""First- and second-kind paraorthogonal polynomials pinned at a circle point.

A polynomial is the tuple (kind, degree n, base point lambda, coefficient
source) and is evaluated on demand; no monomial coefficients are ever
extracted.  Three equivalent evaluation routes exist per kind:

    kind "first", vanishing at lambda:
        kernel:    conj(lam) (lam - z) * sum_{j<n} conj(phi_j(lam)) phi_j(z)
        level_n:   conj(phi_n*(lam)) phi_n*(z) - conj(phi_n(lam)) phi_n(z)
        level_nm1: conj(phi*_{n-1}(lam)) phi*_{n-1}(z)
                   - z conj(lam) conj(phi_{n-1}(lam)) phi_{n-1}(z)

    kind "second", equal to 2 at lambda (psi_j from the flipped coefficients):
        kernel:    2 - conj(lam) (lam - z) * sum_{j<n} conj(phi_j(lam)) psi_j(z)
        level_n:   conj(phi_n*(lam)) psi_n*(z) + conj(phi_n(lam)) psi_n(z)
        level_nm1: conj(phi*_{n-1}(lam)) psi*_{n-1}(z)
                   + z conj(lam) conj(phi_{n-1}(lam)) psi_{n-1}(z)

The pinned-point prefactor is written conj(lam)(lam - z) rather than
(1 - conj(lam) z) so that it vanishes bit-exactly at z = lam; the two
agree up to the admission tolerance of lambda.

Values at the base point are cached on the polynomial, so sweeps over z
(grids, bisection) cost one recursion pass each.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coeffs import VerblunskySequence, unit_circle_point
from .szego import _as_points, _maybe_scalar, _rho

DEFINITIONS = ("kernel", "level_n", "level_nm1")


@dataclass
class RealFormValue:
    """One sample of the rotated real-valued trace on the circle.

    theta is the offset from the base point (z = lambda e^{i theta});
    imag_residual is the leftover imaginary part, which should vanish.
    """

    value: float
    imag_residual: float
    theta: float


class ParaPolynomial:
    """Degree-n paraorthogonal polynomial of the first or second kind."""

    def __init__(self, kind: str, n: int, lam: complex, seq: VerblunskySequence):
        if kind not in ("first", "second"):
            raise ValueError(f"kind must be 'first' or 'second', got {kind!r}")
        if n < 1:
            raise ValueError(f"degree must be >= 1, got {n}")
        self.kind = kind
        self.n = int(n)
        self.lam = unit_circle_point(lam)
        self.seq = seq
        self._lam_phi = None  # phi_j(lam), j = 0..n
        self._lam_star = None  # phi_j*(lam), j = 0..n

    def __repr__(self):
        return f"ParaPolynomial({self.kind!r}, n={self.n}, lam={self.lam})"

    # values of the base-point polynomials, all levels at once
    def _lambda_values(self):
        if self._lam_phi is None:
            a = self.seq.alphas(self.n)
            rho = _rho(a)
            phi = np.empty(self.n + 1, dtype=complex)
            ps = np.empty(self.n + 1, dtype=complex)
            phi[0] = ps[0] = 1.0
            for j in range(self.n):
                t = self.lam * phi[j]
                phi[j + 1] = (t - np.conj(a[j]) * ps[j]) / rho[j]
                ps[j + 1] = (ps[j] - a[j] * t) / rho[j]
            self._lam_phi = phi
            self._lam_star = ps
        return self._lam_phi, self._lam_star

    def _z_side_pair(self, z: np.ndarray, level: int):
        """(p_level(z), p*_level(z)) where p = phi (first) or psi (second)."""
        a = self.seq.alphas(level)
        if self.kind == "second":
            a = -a
        rho = _rho(a)
        phi = np.ones_like(z)
        ps = np.ones_like(z)
        for j in range(level):
            t = z * phi
            phi = (t - np.conj(a[j]) * ps) / rho[j]
            ps = (ps - a[j] * t) / rho[j]
        return phi, ps


def _eval_with_scale(p: ParaPolynomial, z: np.ndarray, definition: str):
    """Value and a per-point magnitude scale (largest term entering it)."""
    lam_phi, lam_star = p._lambda_values()
    sign = -1.0 if p.kind == "first" else 1.0
    if definition == "kernel":
        a = p.seq.alphas(p.n - 1)
        ka = -a if p.kind == "second" else a
        rho = _rho(a)
        phi = np.ones_like(z)
        ps = np.ones_like(z)
        acc = np.conj(lam_phi[0]) * phi
        scale = np.abs(acc)
        for j in range(p.n - 1):
            t = z * phi
            phi = (t - np.conj(ka[j]) * ps) / rho[j]
            ps = (ps - ka[j] * t) / rho[j]
            term = np.conj(lam_phi[j + 1]) * phi
            acc = acc + term
            scale = np.maximum(scale, np.abs(term))
        factor = np.conj(p.lam) * (p.lam - z)
        if p.kind == "first":
            return factor * acc, np.abs(factor) * scale
        return 2.0 - factor * acc, np.maximum(np.abs(factor) * scale, 2.0)
    if definition == "level_n":
        phi, ps = p._z_side_pair(z, p.n)
        t1 = np.conj(lam_star[p.n]) * ps
        t2 = np.conj(lam_phi[p.n]) * phi
        return t1 + sign * t2, np.maximum(np.abs(t1), np.abs(t2))
    if definition == "level_nm1":
        phi, ps = p._z_side_pair(z, p.n - 1)
        t1 = np.conj(lam_star[p.n - 1]) * ps
        t2 = z * np.conj(p.lam) * np.conj(lam_phi[p.n - 1]) * phi
        return t1 + sign * t2, np.maximum(np.abs(t1), np.abs(t2))
    raise ValueError(f"definition must be one of {DEFINITIONS}, got {definition!r}")


def para_eval(p: ParaPolynomial, z, definition: str = "level_nm1"):
    """Evaluate the polynomial at z by the chosen definition."""
    zz, scalar = _as_points(z)
    value, _ = _eval_with_scale(p, zz, definition)
    return _maybe_scalar(value, scalar)


def para_scale(p: ParaPolynomial, z, definition: str = "level_nm1"):
    """Magnitude of the largest term entering the evaluation at z.

    Residual statements like "vanishes at lambda" are relative to this.
    """
    zz, scalar = _as_points(z)
    _, scale = _eval_with_scale(p, zz, definition)
    return float(scale[()]) if scalar else scale


def beta_coefficient(p: ParaPolynomial) -> complex:
    """The unimodular recursion coefficient that pins the zero at lambda.

    First kind: conj(lam) phi*_{n-1}(lam) / phi_{n-1}(lam); second kind
    is its negation.
    """
    lam_phi, lam_star = p._lambda_values()
    beta = np.conj(p.lam) * lam_star[p.n - 1] / lam_phi[p.n - 1]
    return complex(-beta) if p.kind == "second" else complex(beta)


def kernel_to_monic_factor(p: ParaPolynomial) -> complex:
    """Scalar C with p(z) = C * (z P_{n-1}(z) - conj(beta) P*_{n-1}(z)).

    P denotes the monic polynomials of the relevant coefficient sequence
    (plain for kind "first", flipped for kind "second"); dividing an
    evaluation by C recovers the monic-normalized combination, so inner
    product identities stated for that normalization can be tested.
    """
    from .szego import monic_norm

    lam_phi, _ = p._lambda_values()
    c = np.conj(p.lam * lam_phi[p.n - 1]) / monic_norm(p.seq, p.n - 1)
    return complex(-c) if p.kind == "first" else complex(c)


def real_form_grid(p: ParaPolynomial, thetas):
    """Vectorized real trace along z = lambda e^{i theta}.

    Returns (values, imag_residuals, scales).  The branch factor is
    e^{-i n theta / 2} with theta taken in [0, 2pi); for odd n the trace
    flips sign across theta = 0, which is exactly where the pinned zero
    (kind "first") or the value 2 (kind "second") sits, so the cut never
    lands inside a search bracket.
    """
    th = np.asarray(thetas, dtype=float)
    z = p.lam * np.exp(1j * th)
    value, scale = _eval_with_scale(p, z, "level_nm1")
    t = value * np.exp(-0.5j * p.n * th)
    if p.kind == "first":
        t = t * -1j
    return t.real, np.abs(t.imag), scale


def real_form(p: ParaPolynomial, theta: float) -> RealFormValue:
    """The rotated real-valued trace at a single angle offset from lambda."""
    values, residuals, _ = real_form_grid(p, [float(theta)])
    return RealFormValue(float(values[0]), float(residuals[0]), float(theta))


class _SweepTables:
    """Shared data for trace evaluation across a whole degree range."""

    def __init__(self, kind: str, lam: complex, seq: VerblunskySequence, max_n: int):
        self.kind = kind
        self.lam = unit_circle_point(lam)
        a = seq.alphas(max_n)
        self.rho = _rho(a)
        self.a_z = -a if kind == "second" else a
        lam_phi = np.empty(max_n + 1, dtype=complex)
        lam_star = np.empty(max_n + 1, dtype=complex)
        lam_phi[0] = lam_star[0] = 1.0
        for j in range(max_n):
            t = self.lam * lam_phi[j]
            lam_phi[j + 1] = (t - np.conj(a[j]) * lam_star[j]) / self.rho[j]
            lam_star[j + 1] = (lam_star[j] - a[j] * t) / self.rho[j]
        self.lam_phi = lam_phi
        self.lam_star = lam_star
        self.max_n = max_n


def _sweep_tables(kind: str, lam: complex, seq: VerblunskySequence, max_n: int) -> _SweepTables:
    return _SweepTables(kind, lam, seq, max_n)


def _trace_at_levels(tables: _SweepTables, thetas, n_for_each) -> np.ndarray:
    """Real trace where each sample carries its own degree.

    One recursion pass to the maximum degree serves every sample; this
    is what lets degree sweeps batch their bracket refinements.
    """
    th = np.asarray(thetas, dtype=float)
    nn = np.asarray(n_for_each, dtype=int)
    if th.size == 0:
        return np.empty(0)
    z = tables.lam * np.exp(1j * th)
    phi = np.ones_like(z)
    ps = np.ones_like(z)
    out_phi = np.ones_like(z)
    out_ps = np.ones_like(z)
    want = nn - 1  # z-side values are taken at level n-1
    for j in range(int(want.max())):
        t = z * phi
        phi = (t - np.conj(tables.a_z[j]) * ps) / tables.rho[j]
        ps = (ps - tables.a_z[j] * t) / tables.rho[j]
        m = want == j + 1
        if m.any():
            out_phi[m] = phi[m]
            out_ps[m] = ps[m]
    t1 = np.conj(tables.lam_star[nn - 1]) * out_ps
    t2 = z * np.conj(tables.lam) * np.conj(tables.lam_phi[nn - 1]) * out_phi
    val = t1 - t2 if tables.kind == "first" else t1 + t2
    tr = val * np.exp(-0.5j * nn * th)
    if tables.kind == "first":
        tr = tr * -1j
    return tr.real
