"""
Self-contained verification sweep: boundary condition of the Green's
function, agreement of the closed-form energy with the finite-difference
recomputation, and the symmetry invariants of the dipole projections and
the energy surface.  Everything is driven by one seeded generator so a
report is reproducible from (seed, samples) alone.
"""

from __future__ import annotations

import numpy as np

from .analysis import resolve_workers  # noqa: F401  (re-export for CLI)
from .dipole import Orientation, ParticleAnisotropy, project, second_moment_tensor
from .energy import energy_total, hemisphere_energy_xy
from .errors import ConfigError
from .geometry import CylPoint, GeometryConfig, green_function, green_homogeneous
from .oracle import StencilConfig, hessian_energy

BOUNDARY_TOL = 1e-10
ORACLE_TOL = 1e-6
SYMMETRY_TOL = 1e-12

_BOUNDARY_RBARS = (0.1, 0.5, 0.9)


def _random_exterior_source(rng, r_bar) -> CylPoint:
    while True:
        rho = rng.uniform(0.0, 2.0)
        z = rng.uniform(0.2, 2.0)
        if rho * rho + z * z > (r_bar + 0.05) ** 2:
            return CylPoint(rho, rng.uniform(0.0, 2.0 * np.pi), z)


def check_boundary(rng, surface_samples: int = 1200, sources_per_rbar: int = 4) -> dict:
    """Max |G| * |r - r'| over plane and hemisphere sample points.

    The residual is measured relative to the free-space term 1/|r - r'|,
    so the statistic is scale-free.
    """
    worst = 0.0
    n_points = 0
    for r_bar in _BOUNDARY_RBARS:
        geo = GeometryConfig(r_bar)
        n_half = surface_samples // 2
        # plane points outside the footprint
        rho_pl = r_bar + rng.uniform(0.05, 4.0, n_half)
        phi_pl = rng.uniform(0.0, 2.0 * np.pi, n_half)
        plane = CylPoint(rho_pl, phi_pl, np.zeros(n_half))
        # hemisphere points (polar angle away from the equator seam)
        alpha = rng.uniform(0.0, 0.499 * np.pi, surface_samples - n_half)
        phi_sp = rng.uniform(0.0, 2.0 * np.pi, surface_samples - n_half)
        sphere = CylPoint(r_bar * np.sin(alpha), phi_sp, r_bar * np.cos(alpha))
        for _ in range(sources_per_rbar):
            src = _random_exterior_source(rng, r_bar)
            for pts in (plane, sphere):
                g = green_function(pts, src, geo)
                d = np.sqrt(pts.rho ** 2 + src.rho ** 2
                            - 2.0 * pts.rho * src.rho * np.cos(pts.phi - src.phi)
                            + (pts.z - src.z) ** 2)
                worst = max(worst, float(np.max(np.abs(g) * d)))
                n_points += pts.rho.size
    return {"passed": worst <= BOUNDARY_TOL, "max_relative_residual": worst,
            "tolerance": BOUNDARY_TOL, "surface_points": n_points}


def check_oracle_equivalence(rng, samples: int = 200, perturb_green: float = 0.0) -> dict:
    """Closed-form total energy against the differenced-Green's-function path."""
    if samples < 1:
        raise ConfigError("samples must be >= 1")
    cfg = StencilConfig()
    worst = 0.0
    total = 0.0
    for _ in range(samples):
        aniso = ParticleAnisotropy(beta=float(rng.uniform(0.05, 1.0)))
        orient = Orientation(theta=float(rng.uniform(0.0, 0.5 * np.pi)),
                             gamma=float(rng.uniform(0.0, 2.0 * np.pi)))
        geo = GeometryConfig(float(rng.uniform(0.05, 0.9)))
        rho0 = float(rng.uniform(0.0, 3.0))
        phi0 = float(rng.uniform(0.0, 2.0 * np.pi))
        x0, y0 = rho0 * np.cos(phi0), rho0 * np.sin(phi0)
        closed = energy_total(aniso, orient, (x0, y0), geo).total

        gh = None
        if perturb_green != 0.0:
            def gh(a, b, _geo=geo, _eps=perturb_green):
                return (1.0 + _eps) * green_homogeneous(a, b, _geo)
        proj = project(aniso, orient, np.arctan2(y0, x0))
        numeric = hessian_energy(proj, CylPoint(rho0, phi0, 1.0), geo, cfg, gh=gh)
        rel = abs(closed - numeric) / abs(numeric)
        worst = max(worst, rel)
        total += rel
    return {"passed": worst <= ORACLE_TOL, "max_relative_deviation": worst,
            "mean_relative_deviation": total / samples,
            "tolerance": ORACLE_TOL, "samples": samples}


def check_reciprocity(rng, pairs: int = 2000) -> dict:
    worst = 0.0
    for _ in range(pairs):
        r_bar = float(rng.uniform(0.05, 0.9))
        geo = GeometryConfig(r_bar)
        a = _random_exterior_source(rng, r_bar)
        b = _random_exterior_source(rng, r_bar)
        g_ab = green_function(a, b, geo)
        g_ba = green_function(b, a, geo)
        worst = max(worst, abs(g_ab - g_ba) / abs(g_ab))
    return {"passed": worst <= SYMMETRY_TOL, "max_relative_asymmetry": worst,
            "tolerance": SYMMETRY_TOL, "pairs": pairs}


def check_dipole_invariants(rng, trials: int = 10000) -> dict:
    """Trace preservation and agreement with the rotation-matrix route."""
    betas = rng.uniform(1e-3, 1.0, trials)
    thetas = rng.uniform(-np.pi, np.pi, trials)
    gammas = rng.uniform(0.0, 2.0 * np.pi, trials)
    phi0s = rng.uniform(0.0, 2.0 * np.pi, trials)
    worst_trace = 0.0
    worst_rot = 0.0
    for beta, theta, gamma, phi0 in zip(betas, thetas, gammas, phi0s):
        aniso = ParticleAnisotropy(beta=float(beta), d_p_sq=2.5)
        orient = Orientation(float(theta), float(gamma))
        pr = project(aniso, orient, float(phi0))
        trace = pr.d_rho_sq + pr.d_phi_sq + pr.d_z_sq
        expect = aniso.d_p_sq * (1.0 + 2.0 * beta)
        worst_trace = max(worst_trace, abs(trace - expect) / expect)
        t = second_moment_tensor(aniso, orient, float(phi0))
        scale = aniso.d_p_sq
        worst_rot = max(worst_rot,
                        abs(t[0, 0] - pr.d_rho_sq) / scale,
                        abs(t[1, 1] - pr.d_phi_sq) / scale,
                        abs(t[2, 2] - pr.d_z_sq) / scale,
                        abs(t[0, 2] - pr.d_rho_z) / scale)
    passed = worst_trace <= SYMMETRY_TOL and worst_rot <= SYMMETRY_TOL
    return {"passed": passed, "max_trace_deviation": worst_trace,
            "max_rotation_deviation": worst_rot,
            "tolerance": SYMMETRY_TOL, "trials": trials}


def check_mirror_symmetry() -> dict:
    """u_h(x, y) = u_h(-x, y) for gamma = 0 at theta in {0, pi/2}."""
    xs = np.linspace(0.05, 2.5, 40)[:, None]
    ys = np.linspace(-2.0, 2.0, 41)[None, :]
    worst = 0.0
    for theta in (0.0, 0.5 * np.pi):
        for r_bar in (0.2, 0.6):
            aniso = ParticleAnisotropy(beta=0.2)
            orient = Orientation(theta=theta, gamma=0.0)
            geo = GeometryConfig(r_bar)
            u_pos = hemisphere_energy_xy(aniso, orient, xs, ys, geo)
            u_neg = hemisphere_energy_xy(aniso, orient, -xs, ys, geo)
            scale = float(np.max(np.abs(u_pos)))
            worst = max(worst, float(np.max(np.abs(u_pos - u_neg))) / scale)
    return {"passed": worst <= SYMMETRY_TOL, "max_relative_mismatch": worst,
            "tolerance": SYMMETRY_TOL}


def check_azimuthal_covariance(rng, trials: int = 400) -> dict:
    """Rotating particle azimuth and position azimuth together is a no-op."""
    worst = 0.0
    for _ in range(trials):
        aniso = ParticleAnisotropy(beta=float(rng.uniform(0.05, 1.0)))
        theta = float(rng.uniform(0.0, 0.5 * np.pi))
        gamma = float(rng.uniform(0.0, 2.0 * np.pi))
        geo = GeometryConfig(float(rng.uniform(0.05, 0.9)))
        rho0 = float(rng.uniform(0.1, 3.0))
        phi0 = float(rng.uniform(0.0, 2.0 * np.pi))
        delta = float(rng.uniform(0.0, 2.0 * np.pi))
        u_a = hemisphere_energy_xy(ParticleAnisotropy(aniso.beta),
                                   Orientation(theta, gamma),
                                   rho0 * np.cos(phi0), rho0 * np.sin(phi0), geo)
        u_b = hemisphere_energy_xy(ParticleAnisotropy(aniso.beta),
                                   Orientation(theta, gamma + delta),
                                   rho0 * np.cos(phi0 + delta),
                                   rho0 * np.sin(phi0 + delta), geo)
        # scale by max(1, |u|): u_h crosses zero, so a bare relative error
        # would blow up on sign-change circles
        worst = max(worst, abs(float(u_a) - float(u_b)) / max(abs(float(u_a)), 1.0))
    return {"passed": worst <= SYMMETRY_TOL, "max_relative_mismatch": worst,
            "tolerance": SYMMETRY_TOL, "trials": trials}


def run_verification(seed: int = 0, samples: int = 200,
                     surface_samples: int = 1200,
                     perturb_green: float = 0.0) -> dict:
    """Full verification report; deterministic for fixed inputs."""
    if samples < 1:
        raise ConfigError("samples must be >= 1")
    if surface_samples < 2:
        raise ConfigError("surface_samples must be >= 2")
    rng = np.random.default_rng(seed)
    checks = {
        "boundary_condition": check_boundary(rng, surface_samples),
        "oracle_equivalence": check_oracle_equivalence(rng, samples, perturb_green),
        "green_reciprocity": check_reciprocity(rng),
        "dipole_invariants": check_dipole_invariants(rng),
        "mirror_symmetry": check_mirror_symmetry(),
        "azimuthal_covariance": check_azimuthal_covariance(rng),
    }
    return {
        "seed": seed,
        "samples": samples,
        "surface_samples": surface_samples,
        "perturb_green": perturb_green,
        "checks": checks,
        "passed": all(c["passed"] for c in checks.values()),
    }
