"""Locate the circle zeros of paraorthogonal polynomials and check interlacing.

Zero location works on the rotated real-valued trace (see para.real_form):
its zeros on [0, 2pi) are exactly the polynomial's zeros relative to the
base point, they are simple, and the sign alternates between consecutive
zeros, so sign-change bracketing plus bisection is a complete detector.
The base point itself is handled out of band: for the first kind it is a
known zero pinned at theta = 0; for the second kind the trace equals
+2 at theta = 0 and 2(-1)^n as theta -> 2pi, and those exact values are
used as endpoint signs (the evaluated trace loses all precision there
once magnitudes are large, while the true values are fixed).

An independent verification path locates local minima of the polynomial
modulus (kernel-sum definition) on a dense grid and refines them by
golden-section search; it shares nothing with the sign-change route
except the polynomial itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AmbiguousMinimaError, ResolutionError
from .para import ParaPolynomial, para_eval, real_form_grid

TWO_PI = 2.0 * math.pi

# collision threshold between distinct zero sets, below which strict
# interlacing cannot be called
COLLISION_TOL = 1e-10


@dataclass
class ZeroFindConfig:
    initial_grid_multiplier: int = 8
    max_refinements: int = 6
    theta_tol: float = 1e-12
    residual_tol: float = 1e-6  # relative to the grid evaluation scale


@dataclass
class ZeroSet:
    """All n zeros of one polynomial, as angles relative to the base point."""

    kind: str
    n: int
    lambda_theta: float
    angles: np.ndarray
    residuals: np.ndarray
    scale: float
    simplicity: bool

    def interior_angles(self) -> np.ndarray:
        """Angles with the pinned base-point zero (first kind) removed."""
        if self.kind == "first":
            return self.angles[self.angles > 0.0]
        return self.angles

    def absolute_angles(self) -> np.ndarray:
        return (self.angles + self.lambda_theta) % TWO_PI

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "lambda_theta": self.lambda_theta,
            "angles": [float(a) for a in self.angles],
            "residuals": [float(r) for r in self.residuals],
            "scale": self.scale,
            "simplicity": self.simplicity,
        }

    def to_csv_rows(self) -> list[list]:
        rows = []
        for i, (a, r) in enumerate(zip(self.angles, self.residuals)):
            rows.append([i, float(a), float((a + self.lambda_theta) % TWO_PI), float(r)])
        return rows


CSV_COLUMNS = ["index", "theta", "theta_abs", "residual"]


def _bisect(fun, lo, hi, flo, tol):
    """Vectorized bisection on sign changes; returns bracket midpoints."""
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    flo = np.asarray(flo, dtype=float).copy()
    if lo.size == 0:
        return lo
    steps = max(1, int(math.ceil(math.log2(float(np.max(hi - lo)) / tol))))
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        fm = fun(mid)
        left = flo * fm <= 0.0
        hi = np.where(left, mid, hi)
        lo = np.where(left, lo, mid)
        flo = np.where(left, flo, fm)
    return 0.5 * (lo + hi)


def _grid_values(p: ParaPolynomial, m: int):
    """Trace values on the m+1 point grid with exact endpoint pinning."""
    th = np.linspace(0.0, TWO_PI, m + 1)
    f = np.empty(m + 1)
    inner, _, _ = real_form_grid(p, th[1:-1])
    f[1:-1] = inner
    if p.kind == "first":
        f[0] = 0.0
        f[-1] = 0.0
    else:
        f[0] = 2.0
        f[-1] = 2.0 if p.n % 2 == 0 else -2.0
    return th, f


def _sign_brackets(p: ParaPolynomial, th: np.ndarray, f: np.ndarray):
    """Indices i with a sign change in cell (th_i, th_{i+1})."""
    prod = f[:-1] * f[1:]
    idx = np.nonzero(prod < 0.0)[0]
    if p.kind == "first":
        # endpoint cells border the pinned zero; interior zeros there are
        # caught by the count check and grid refinement
        idx = idx[(idx != 0) & (idx != len(f) - 2)]
    return idx


def _zoom_cell(p: ParaPolynomial, a: float, b: float, tol: float, depth: int = 60):
    """Search one no-sign-change cell for an even cluster of zeros.

    Subdivides, following the smallest |trace| subcell; returns bracket
    triples (lo, hi, f_lo) for any sign changes uncovered.
    """
    for _ in range(depth):
        th = np.linspace(a, b, 17)
        v, _, _ = real_form_grid(p, th)
        hits = np.nonzero(v[:-1] * v[1:] < 0.0)[0]
        if hits.size:
            return [(th[i], th[i + 1], v[i]) for i in hits]
        if b - a < 4.0 * tol:
            return []
        j = int(np.argmin(np.abs(v)))
        a, b = th[max(j - 1, 0)], th[min(j + 1, 16)]
    return []


def find_zeros(p: ParaPolynomial, cfg: ZeroFindConfig | None = None) -> ZeroSet:
    """All n zeros of the polynomial, bracketed by sign changes of the trace.

    The grid starts at initial_grid_multiplier * n points and doubles up
    to max_refinements times until the expected sign-change count is
    seen; cells whose trace dips without changing sign are then zoomed
    as a last resort (tight even clusters).  Anything still missing is a
    ResolutionError reporting the found count; a short list is never
    returned silently.
    """
    cfg = cfg or ZeroFindConfig()
    n = p.n
    target = n - 1 if p.kind == "first" else n

    th = f = None
    idx = np.empty(0, dtype=int)
    for level in range(cfg.max_refinements + 1):
        m = cfg.initial_grid_multiplier * n * (1 << level)
        th, f = _grid_values(p, m)
        if np.any(f[1:-1] == 0.0):
            # exact grid hit: shift interior points deterministically
            shifted = th[1:-1] + (th[1] - th[0]) * 0.37
            inner, _, _ = real_form_grid(p, shifted)
            th = np.concatenate([[0.0], shifted, [TWO_PI]])
            f = np.concatenate([[f[0]], inner, [f[-1]]])
        idx = _sign_brackets(p, th, f)
        if idx.size == target:
            break
    scale = float(np.max(np.abs(f[1:-1]))) if len(f) > 2 else 1.0

    lo, hi, flo = th[idx], th[idx + 1], f[idx]
    if idx.size != target:
        extra = []
        if idx.size < target:
            quiet = np.setdiff1d(np.arange(len(f) - 1), idx)
            if p.kind == "first":
                quiet = quiet[(quiet != 0) & (quiet != len(f) - 2)]
            dip = np.minimum(np.abs(f[quiet]), np.abs(f[quiet + 1]))
            order = quiet[np.argsort(dip)]
            for cell in order[: 4 * (target - idx.size) + 8]:
                extra.extend(_zoom_cell(p, th[cell], th[cell + 1], cfg.theta_tol))
                if idx.size + len(extra) >= target:
                    break
        if idx.size + len(extra) != target:
            found = idx.size + len(extra) + (1 if p.kind == "first" else 0)
            raise ResolutionError(
                n,
                found,
                f"{p.kind}-kind degree {n}: isolated {found} of {n} zeros after "
                f"{cfg.max_refinements} grid doublings (base point "
                f"lambda = {p.lam})",
            )
        if extra:
            lo = np.concatenate([lo, [e[0] for e in extra]])
            hi = np.concatenate([hi, [e[1] for e in extra]])
            flo = np.concatenate([flo, [e[2] for e in extra]])

    def fun(thetas):
        return real_form_grid(p, thetas)[0]

    roots = _bisect(fun, lo, hi, flo, cfg.theta_tol)
    if p.kind == "first":
        roots = np.concatenate([[0.0], roots])
    roots = np.sort(roots)
    return _assemble(p, roots, scale, cfg)


def _assemble(p: ParaPolynomial, roots: np.ndarray, scale: float, cfg: ZeroFindConfig) -> ZeroSet:
    values, _, _ = real_form_grid(p, roots)
    residuals = np.abs(values)
    bad = residuals > cfg.residual_tol * scale
    if np.any(bad):
        raise ResolutionError(
            p.n,
            int(np.sum(~bad)),
            f"{int(np.sum(bad))} refined zeros have residual above "
            f"{cfg.residual_tol} * scale",
        )
    if np.any(np.diff(roots) <= 0.0):
        raise ResolutionError(p.n, len(roots), "refined zeros are not strictly increasing")
    simplicity = True
    if len(roots) > 1:
        mids = 0.5 * (roots[:-1] + roots[1:])
        msign = np.sign(real_form_grid(p, mids)[0])
        simplicity = bool(np.all(msign[:-1] * msign[1:] < 0.0)) and bool(np.all(msign != 0.0))
    lam_theta = float(np.angle(p.lam) % TWO_PI)
    return ZeroSet(p.kind, p.n, lam_theta, roots, residuals, scale, simplicity)


def find_zeros_sweep(
    kind: str,
    lam: complex,
    seq,
    n_values,
    cfg: ZeroFindConfig | None = None,
    skip_unresolved: bool = False,
) -> dict[int, ZeroSet]:
    """find_zeros for a whole range of degrees of one family at once.

    Grid scans run per degree, but all bracket refinements are batched
    through one multi-level evaluation per bisection step, which is what
    makes long degree sweeps affordable.  Results match find_zeros.

    With skip_unresolved, degrees whose zeros cannot be isolated are
    left out of the result instead of aborting the sweep; callers must
    treat missing keys as explicit resolution failures.
    """
    from .para import _sweep_tables, _trace_at_levels

    cfg = cfg or ZeroFindConfig()
    n_values = sorted(set(int(n) for n in n_values))
    tables = _sweep_tables(kind, lam, seq, max(n_values))

    all_lo, all_hi, all_flo, all_n = [], [], [], []
    scales: dict[int, float] = {}
    resolved: list[int] = []
    fallback: list[int] = []
    for n in n_values:
        p = ParaPolynomial(kind, n, lam, seq)
        target = n - 1 if kind == "first" else n
        done = False
        for level in range(cfg.max_refinements + 1):
            m = cfg.initial_grid_multiplier * n * (1 << level)
            th, f = _grid_values(p, m)
            idx = _sign_brackets(p, th, f)
            if idx.size == target:
                done = True
                break
        scales[n] = float(np.max(np.abs(f[1:-1]))) if len(f) > 2 else 1.0
        if not done:
            fallback.append(n)  # rare tight clusters take the slow path
            continue
        resolved.append(n)
        all_lo.append(th[idx])
        all_hi.append(th[idx + 1])
        all_flo.append(f[idx])
        all_n.append(np.full(idx.size, n, dtype=int))

    out: dict[int, ZeroSet] = {}
    if resolved:
        lo = np.concatenate(all_lo)
        hi = np.concatenate(all_hi)
        flo = np.concatenate(all_flo)
        nn = np.concatenate(all_n)

        def fun(thetas):
            return _trace_at_levels(tables, thetas, nn)

        roots = _bisect(fun, lo, hi, flo, cfg.theta_tol)
        for n in resolved:
            p = ParaPolynomial(kind, n, lam, seq)
            r = np.sort(roots[nn == n]) if nn.size else np.empty(0)
            if kind == "first":
                r = np.concatenate([[0.0], r])
            try:
                out[n] = _assemble(p, r, scales[n], cfg)
            except ResolutionError:
                if not skip_unresolved:
                    raise
    for n in fallback:
        try:
            out[n] = find_zeros(ParaPolynomial(kind, n, lam, seq), cfg)
        except ResolutionError:
            if not skip_unresolved:
                raise
    return out


def oracle_zeros(p: ParaPolynomial, grid_points: int | None = None) -> ZeroSet:
    """Slow cross-check: modulus minima on a dense grid, golden-section refined.

    Uses |p(z)| through the kernel-sum definition and never consults the
    real trace for locations, so it is structurally independent of
    find_zeros.  Minima count mismatches raise AmbiguousMinimaError with
    the candidate list.
    """
    n = p.n
    m = 64 * n if grid_points is None else int(grid_points)
    if m < 64 * n:
        raise ValueError(f"oracle grid needs at least 64*n = {64 * n} points, got {m}")

    def g(thetas):
        return np.abs(para_eval(p, p.lam * np.exp(1j * np.asarray(thetas)), "kernel"))

    th = np.arange(m) * (TWO_PI / m)
    gv = g(th)
    left = np.roll(gv, 1)
    right = np.roll(gv, -1)
    is_min = (gv <= left) & (gv <= right) & ((gv < left) | (gv < right))
    cand = np.nonzero(is_min)[0]
    if cand.size == 0:
        raise AmbiguousMinimaError([], f"no modulus minima on a {m}-point grid")

    a = th[cand] - TWO_PI / m
    b = th[cand] + TWO_PI / m
    local_scale = np.maximum(g(a), g(b))
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = g(c), g(d)
    while float(np.max(b - a)) > 1e-11:
        take_left = fc < fd
        b = np.where(take_left, d, b)
        a = np.where(take_left, a, c)
        c = b - invphi * (b - a)
        d = a + invphi * (b - a)
        fc, fd = g(c), g(d)
    mins = 0.5 * (a + b)
    vals = g(mins)
    keep = vals <= 1e-7 * np.maximum(local_scale, 1e-300)
    zeros = np.mod(mins[keep], TWO_PI)
    if p.kind == "first":
        # the pinned zero may be localized on either side of the wrap
        zeros = np.where(zeros > TWO_PI - 1e-9, 0.0, zeros)
        zeros[np.abs(zeros) < 1e-12] = 0.0
    zeros = np.sort(zeros)
    dup = np.nonzero(np.diff(zeros) < 1e-12)[0]
    if dup.size:
        zeros = np.delete(zeros, dup + 1)
    if zeros.size != n:
        raise AmbiguousMinimaError(
            list(zip(np.mod(mins, TWO_PI), vals)),
            f"{p.kind}-kind degree {n}: modulus oracle found {int(zeros.size)} "
            f"zeros on a {m}-point grid",
        )
    values, _, _ = real_form_grid(p, zeros)
    grid_scale = float(np.max(g(th)))
    lam_theta = float(np.angle(p.lam) % TWO_PI)
    simplicity = True
    if len(zeros) > 1:
        mids = 0.5 * (zeros[:-1] + zeros[1:])
        msign = np.sign(real_form_grid(p, mids)[0])
        simplicity = bool(np.all(msign[:-1] * msign[1:] < 0.0))
    return ZeroSet(p.kind, n, lam_theta, zeros, np.abs(values), grid_scale, simplicity)


# ---------------------------------------------------------------------------
# interlacing


@dataclass
class InterlaceVerdict:
    verdict: str  # "pass" | "fail" | "inconclusive"
    witness: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def _circular_gap(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.abs((x - y + math.pi) % TWO_PI - math.pi)


def interlace(a: ZeroSet, b: ZeroSet, collision_tol: float = COLLISION_TOL) -> InterlaceVerdict:
    """Strict circular interlacing of two zero sets.

    Same-degree sets: every open arc between consecutive zeros of `a`
    must contain exactly one zero of `b` (arcs wrap at 2pi).  If `b` has
    one zero more than `a`, the variant for consecutive degrees applies:
    on the interval cut at the base point, the zeros must alternate
    b, a, b, ..., a, b (callers strip the shared base-point zero first).

    A pair of zeros from the two sets closer than collision_tol makes
    the strict inequality uncallable: the verdict is "inconclusive" and
    the arcs are not even counted (at that separation, which side of an
    arc endpoint a zero falls on is numerical noise).  The one exception
    is two identical angle lists - a degenerate self-comparison, which
    fails outright with an empty-arc witness.
    """
    if abs(a.lambda_theta - b.lambda_theta) > 1e-12:
        raise ValueError("zero sets have different base points")
    xa = np.asarray(a.angles, dtype=float)
    xb = np.asarray(b.angles, dtype=float)
    if xb.size != xa.size and xb.size != xa.size + 1:
        raise ValueError(
            f"interlacing needs |b| = |a| or |a|+1, got |a|={xa.size}, |b|={xb.size}"
        )
    if xa.size == xb.size == 0:
        raise ValueError("cannot interlace empty zero sets")
    identical = xa.size == xb.size and bool(np.array_equal(xa, xb))
    if xa.size and xb.size and not identical:
        dmin = min(float(np.min(_circular_gap(x, xb))) for x in xa)
        if dmin < collision_tol:
            return InterlaceVerdict(
                "inconclusive",
                {"min_pair_distance": dmin, "collision_tol": collision_tol},
            )
    bad = None
    if xb.size == xa.size + 1:
        # consecutive-degree variant: zeros alternate b, a, b, ..., a, b on
        # the interval cut at the shared (already removed) base-point zero
        bounds = np.concatenate([[0.0], xa, [TWO_PI]])
        for lo, hi in zip(bounds[:-1], bounds[1:]):
            count = int(np.sum((xb > lo) & (xb < hi)))
            if count != 1:
                bad = {"arc": (float(lo), float(hi)), "count": count}
                break
    else:
        for i in range(xa.size):
            lo = xa[i]
            span = (xa[(i + 1) % xa.size] - lo) % TWO_PI
            if xa.size == 1:
                span = TWO_PI
            rel = (xb - lo) % TWO_PI
            count = int(np.sum((rel > 0.0) & (rel < span)))
            if count != 1:
                bad = {"arc": (float(lo % TWO_PI), float((lo + span) % TWO_PI)), "count": count}
                break
    if bad is not None:
        return InterlaceVerdict("fail", bad)
    return InterlaceVerdict("pass")
