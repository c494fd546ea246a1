"""
Figure-level analyses of the boss-induced energy u_h: lateral landscapes,
curvature classification of the origin, (beta, r_bar) phase diagrams with a
traced minimum/maximum boundary, and minima scans along the x-axis.

The phase diagrams classify the origin by the sign of the second derivative
of u_h along x for a particle free to move on y0 = 0 (the y-curvature is
reported but does not drive the dark/light decision).  Below a critical
anisotropy beta_critical the sign changes once as r_bar grows; above it the
origin is a minimum for every radius and the lateral force can no longer
invert.

Grid columns and landscape rows are independent work units.  The worker
pool only redistributes whole rows/columns, each computed by the same
vectorized call regardless of pool size, so results are bitwise independent
of the worker count and are always merged in index order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dipole import Orientation, ParticleAnisotropy
from .energy import hemisphere_energy_xy
from .errors import DomainError, ResolutionError
from .geometry import GeometryConfig

CURVATURE_TOL = 1e-10
CURVATURE_STEP = 1e-2
BETA_BISECTION_TOL = 1e-4
RBAR_BISECTION_TOL = 1e-8

KIND_MINIMUM = "minimum"
KIND_MAXIMUM = "maximum"
KIND_SADDLE = "saddle"
KIND_DEGENERATE = "degenerate"


@dataclass(frozen=True)
class LandscapeGrid:
    """u_h sampled on a lab-frame Cartesian grid, values[i, j] = u_h(x_i, y_j)."""

    x_range: tuple
    y_range: tuple
    nx: int
    ny: int
    values: np.ndarray
    config: tuple  # (aniso, orient, geo)


@dataclass(frozen=True)
class OriginClassification:
    """Curvatures of u_h at the origin and the resulting extremum kind.

    The kind is meaningful as an extremum label when the origin is a
    stationary point, i.e. for theta in {0, pi/2} where the rho-z cross
    term vanishes on the axis; for intermediate tilts the curvatures are
    still exact but the origin is generally not stationary.
    """

    kind: str
    curvature_xx: float
    curvature_yy: float


@dataclass(frozen=True)
class PhaseDiagram:
    """Classification of (beta, r_bar) cells plus the traced sign boundary."""

    beta_range: tuple
    r_bar_range: tuple
    betas: np.ndarray
    r_bars: np.ndarray
    grid: np.ndarray           # kind strings, shape (n_beta, n_rbar)
    curvatures_xx: np.ndarray  # shape (n_beta, n_rbar)
    boundary: list             # (beta, r_bar) zero crossings of curvature_xx
    beta_critical: float


def resolve_workers(requested: int | None = None) -> int:
    """Worker count: explicit argument, else VDW_THREADS, else cpu count."""
    if requested is not None and requested >= 1:
        return requested
    env = os.environ.get("VDW_THREADS", "").strip()
    n = 0
    if env:
        try:
            n = int(env)
        except ValueError:
            n = 0
    if n >= 1:
        return n
    return min(8, os.cpu_count() or 1)


def _ordered_map(fn, items, workers: int):
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def landscape(aniso: ParticleAnisotropy, orient: Orientation, geo: GeometryConfig,
              x_range, y_range, nx: int, ny: int,
              workers: int | None = None) -> LandscapeGrid:
    """Sample u_h on an nx-by-ny grid with lab-fixed orientation.

    Raises DomainError if any node violates the exterior condition; refuses
    non-finite results so every stored entry is plottable.
    """
    if nx < 1 or ny < 1:
        raise DomainError("nx and ny must be >= 1")
    xs = np.linspace(x_range[0], x_range[1], nx)
    ys = np.linspace(y_range[0], y_range[1], ny)

    def row(i):
        return hemisphere_energy_xy(aniso, orient, xs[i], ys, geo)

    rows = _ordered_map(row, range(nx), resolve_workers(workers))
    values = np.vstack([np.atleast_1d(r) for r in rows])
    if not np.all(np.isfinite(values)):
        raise DomainError("landscape produced non-finite values")
    return LandscapeGrid(x_range=(xs[0], xs[-1]), y_range=(ys[0], ys[-1]),
                         nx=nx, ny=ny, values=values,
                         config=(aniso, orient, geo))


def _axis_curvature(aniso, orient, geo, axis: str, step: float):
    """d^2 u_h / d axis^2 at the origin: 5-point stencil, one Richardson stage.

    Broadcasts over an array-valued geo.r_bar.
    """
    def second(h):
        offs = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])[:, None] * h
        zero = np.zeros_like(offs)
        x, y = (offs, zero) if axis == "x" else (zero, offs)
        vals = hemisphere_energy_xy(aniso, orient, x, y, geo)
        w = np.array([-1.0, 16.0, -30.0, 16.0, -1.0])
        return np.tensordot(w, vals, axes=(0, 0)) / (12.0 * h * h)

    d_h = second(step)
    d_h2 = second(0.5 * step)
    return np.squeeze((16.0 * d_h2 - d_h) / 15.0)


def _kind_from_curvatures(cxx, cyy, tol=CURVATURE_TOL) -> str:
    if abs(cxx) <= tol:
        return KIND_DEGENERATE
    if cxx < 0.0:
        return KIND_MAXIMUM
    if cyy > tol:
        return KIND_MINIMUM
    if cyy < -tol:
        return KIND_SADDLE
    return KIND_DEGENERATE


def classify_origin(aniso: ParticleAnisotropy, orient: Orientation,
                    geo: GeometryConfig, step: float = CURVATURE_STEP) -> OriginClassification:
    """Classify the origin of u_h by its x and y curvatures.

    Requires r_bar < 1 so the origin position is exterior.  The dark/light
    decision of the phase diagrams uses the x-curvature only.
    """
    if not np.all(np.asarray(geo.r_bar) < 1.0):
        raise DomainError("classify_origin requires r_bar < 1")
    cxx = float(_axis_curvature(aniso, orient, geo, "x", step))
    cyy = float(_axis_curvature(aniso, orient, geo, "y", step))
    return OriginClassification(kind=_kind_from_curvatures(cxx, cyy),
                                curvature_xx=cxx, curvature_yy=cyy)


def _bisect_sign_change(f, lo, hi, f_lo, f_hi, tol):
    if not (f_lo < 0.0) ^ (f_hi < 0.0):
        raise ResolutionError(
            f"no sign change of curvature in bracket [{lo:g}, {hi:g}] "
            "although grid neighbors disagree")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return 0.5 * (lo + hi)


def phase_diagram(orient: Orientation, r_bar_range=(0.02, 0.95),
                  beta_range=(0.02, 1.0), n_beta: int = 120, n_rbar: int = 120,
                  step: float = CURVATURE_STEP,
                  workers: int | None = None) -> PhaseDiagram:
    """Minimum/maximum phase structure of the origin over (beta, r_bar).

    Per beta column the x-curvature is evaluated on the r_bar grid in one
    vectorized pass; zero crossings between neighbors are refined by
    bisection in r_bar.  beta_critical is the bisected anisotropy above
    which no r_bar sample (dense, down to 1e-3) yields a negative
    x-curvature; above it sign inversion of the lateral force is
    impossible.
    """
    b_lo, b_hi = map(float, beta_range)
    r_lo, r_hi = map(float, r_bar_range)
    if not (0.0 < r_lo < r_hi < 1.0):
        raise DomainError("r_bar_range must satisfy 0 < lo < hi < 1")
    if not (0.0 < b_lo < b_hi <= 1.0):
        raise DomainError("beta_range must satisfy 0 < lo < hi <= 1")
    if n_beta < 2 or n_rbar < 2:
        raise DomainError("n_beta and n_rbar must be >= 2")

    betas = np.linspace(b_lo, b_hi, n_beta)
    r_bars = np.linspace(r_lo, r_hi, n_rbar)
    geo_col = GeometryConfig(r_bar=r_bars)

    def column(i):
        aniso = ParticleAnisotropy(beta=float(betas[i]))
        cxx = np.atleast_1d(_axis_curvature(aniso, orient, geo_col, "x", step))
        cyy = np.atleast_1d(_axis_curvature(aniso, orient, geo_col, "y", step))
        return cxx, cyy

    cols = _ordered_map(column, range(n_beta), resolve_workers(workers))
    curv_xx = np.vstack([c[0] for c in cols])
    curv_yy = np.vstack([c[1] for c in cols])
    grid = np.empty(curv_xx.shape, dtype=object)
    for i in range(n_beta):
        for j in range(n_rbar):
            grid[i, j] = _kind_from_curvatures(curv_xx[i, j], curv_yy[i, j])

    boundary = []
    for i in range(n_beta):
        aniso = ParticleAnisotropy(beta=float(betas[i]))

        def f(rb):
            return float(_axis_curvature(aniso, orient, GeometryConfig(rb), "x", step))

        for j in range(n_rbar - 1):
            a, b = curv_xx[i, j], curv_xx[i, j + 1]
            if abs(a) <= CURVATURE_TOL or abs(b) <= CURVATURE_TOL:
                continue
            if (a < 0.0) != (b < 0.0):
                rb_star = _bisect_sign_change(f, float(r_bars[j]), float(r_bars[j + 1]),
                                              a, b, RBAR_BISECTION_TOL)
                boundary.append((float(betas[i]), rb_star))

    beta_critical = _bisect_beta_critical(orient, r_hi, b_lo, b_hi, step)
    return PhaseDiagram(beta_range=(b_lo, b_hi), r_bar_range=(r_lo, r_hi),
                        betas=betas, r_bars=r_bars, grid=grid,
                        curvatures_xx=curv_xx, boundary=boundary,
                        beta_critical=beta_critical)


def _bisect_beta_critical(orient, r_hi, b_lo, b_hi, step):
    # leading small-r_bar behavior ~ r_bar^3 flattens the boundary, so a
    # geometric sample down to 1e-3 stands in for the open limit r_bar -> 0
    samples = GeometryConfig(r_bar=np.geomspace(1e-3, r_hi, 96))

    def always_minimum(beta):
        cxx = _axis_curvature(ParticleAnisotropy(beta=beta), orient, samples, "x", step)
        return bool(np.all(cxx > 0.0))

    if always_minimum(b_lo):
        return b_lo
    if not always_minimum(b_hi):
        raise ResolutionError(
            "no anisotropy in beta_range suppresses the curvature sign change")
    lo, hi = b_lo, b_hi
    while hi - lo > BETA_BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if always_minimum(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


_INVPHI = 0.5 * (np.sqrt(5.0) - 1.0)


def _golden_refine(f, a, b, f_tol=1e-12, max_iter=200):
    """Golden-section minimum of f on [a, b], stopping when the probe
    values agree to f_tol (absolute)."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        if abs(fc - fd) <= f_tol and abs(b - a) <= 1e-6 * max(1.0, abs(a) + abs(b)):
            break
    return (c, fc) if fc < fd else (d, fd)


def find_minima_on_axis(aniso: ParticleAnisotropy, orient: Orientation,
                        geo: GeometryConfig, search_interval,
                        n_scan: int = 2001, f_tol: float = 1e-12) -> list:
    """All interior local minima of u_h(x, 0) in search_interval.

    Dense scan followed by golden-section refinement of each bracket until
    the probe energies agree to f_tol.  Returns (x, u_h) pairs sorted by x;
    an empty list when the scan finds no interior minimum.
    """
    a, b = map(float, search_interval)
    if not b > a:
        raise DomainError("search_interval must have positive length")
    xs = np.linspace(a, b, n_scan)
    u = np.asarray(hemisphere_energy_xy(aniso, orient, xs, 0.0, geo))

    def f(x):
        return float(hemisphere_energy_xy(aniso, orient, x, 0.0, geo))

    minima = []
    interior = np.flatnonzero((u[1:-1] < u[:-2]) & (u[1:-1] < u[2:])) + 1
    for i in interior:
        x_star, u_star = _golden_refine(f, xs[i - 1], xs[i + 1], f_tol=f_tol)
        minima.append((float(x_star), float(u_star)))
    return sorted(minima)
