"""
Closed-form van der Waals interaction of an anisotropic dipole with the
plane-plus-hemisphere conductor, in the reduced energy unit

    U_ref = <d_p^2> / (64 pi eps0 z0^3)

where z0 is the particle height above the plane.  Splitting off the flat
plane's contribution,

    u0  = -(t_rho + t_phi + 2 t_z)                       (plane term)
    u_h = -(t_rho Rrr + t_phi Rpp + t_z Rzz + t_rz Rrz)  (boss term)

with t_i the dipole second moments in units of <d_p^2> and the four
geometry coefficients Rij functions of rho0_bar = rho0/z0 and
r_bar = R/z0 only:

    Rrr = -8 rb { (rb^2 + p^2)/A^3
                  + [rb^2((rb^2+1)^2 - p^2(rb^2+p^2+8)) + p^2(1+p^2)^2] / B^(5/2) }
    Rpp = -8 rb^3 { 1/A^3 + 1/B^(3/2) }
    Rzz = -8 rb { (rb^2 + 1)/A^3
                  - [rb^2((rb^2-p^2)^2 + rb^2 - 1 - 8 p^2) - (1+p^2)^2] / B^(5/2) }
    Rrz = -16 rb p { 1/A^3 - [5 rb^4 + 4 rb^2(1-p^2) - (1+p^2)^2] / B^(5/2) }

    A = rb^2 - p^2 - 1        (negative everywhere in the domain)
    B = rb^4 + 2 rb^2 (1-p^2) + (1+p^2)^2 = (rb^2 + 1 - p^2)^2 + 4 p^2 > 0

writing rb = r_bar and p = rho0_bar.  All four vanish as rb -> 0 (Rrr,
Rzz, Rrz like rb^3, Rpp like rb^5) and u0 alone survives in that limit.
Rrz is odd in p and carries the only dependence that breaks the x -> -x
symmetry of tilted particles (0 < theta < pi/2).

The boss term u_h is the only position-dependent part of the energy:
t_rho + t_phi and t_z are invariant under the azimuth difference
gamma - phi0, so u0 is the same at every lateral position.  The lateral
force is therefore the negative in-plane gradient of u_h.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dipole import DipoleProjection, Orientation, ParticleAnisotropy, project
from .errors import DomainError
from .geometry import GeometryConfig

DEFAULT_FORCE_STEP = 1e-5


@dataclass(frozen=True)
class EnergyBreakdown:
    """Energy split and geometry coefficients, energies in units of U_ref."""

    u0: float
    u_h: float
    r_rho_rho: float
    r_phi_phi: float
    r_zz: float
    r_rho_z: float
    total: float


@dataclass(frozen=True)
class LateralForce:
    """In-plane force components (units U_ref/z0) in the lab Cartesian frame."""

    f_x: float
    f_y: float


def _check_particle_exterior(rho0_bar, r_bar, margin=0.0) -> None:
    p_eff = np.maximum(np.asarray(rho0_bar, dtype=float) - margin, 0.0)
    if np.any(np.asarray(r_bar) ** 2 >= 1.0 + p_eff * p_eff):
        raise DomainError(
            "particle position violates r_bar^2 < 1 + rho0_bar^2 "
            "(at or inside the hemisphere surface)")


def r_coefficients(rho0_bar, geo: GeometryConfig):
    """The four geometry coefficients (Rrr, Rpp, Rzz, Rrz).

    Broadcasts over array-valued rho0_bar and/or geo.r_bar.  Requires
    r_bar^2 < 1 + rho0_bar^2 (particle at height z0 strictly outside the
    hemisphere); raises DomainError otherwise.
    """
    p = np.asarray(rho0_bar, dtype=float)
    if np.any(p < 0.0):
        raise DomainError("rho0_bar must be >= 0")
    rb = geo.r_bar
    _check_particle_exterior(p, rb)
    p2 = p * p
    rb2 = rb * rb
    a3 = (rb2 - p2 - 1.0) ** 3
    b = rb2 * rb2 + 2.0 * rb2 * (1.0 - p2) + (1.0 + p2) ** 2
    b52 = b ** 2.5
    b32 = b ** 1.5
    r_rr = -8.0 * rb * (
        (rb2 + p2) / a3
        + (rb2 * ((rb2 + 1.0) ** 2 - p2 * (rb2 + p2 + 8.0)) + p2 * (1.0 + p2) ** 2) / b52)
    r_pp = -8.0 * rb * rb2 * (1.0 / a3 + 1.0 / b32)
    r_zz = -8.0 * rb * (
        (rb2 + 1.0) / a3
        - (rb2 * ((rb2 - p2) ** 2 + rb2 - 1.0 - 8.0 * p2) - (1.0 + p2) ** 2) / b52)
    r_rz = -16.0 * rb * p * (
        1.0 / a3 - (5.0 * rb2 * rb2 + 4.0 * rb2 * (1.0 - p2) - (1.0 + p2) ** 2) / b52)
    return r_rr, r_pp, r_zz, r_rz


def energy_plane(proj: DipoleProjection):
    """Flat-plane energy u0 = -(t_rho + t_phi + 2 t_z), units U_ref."""
    return -(proj.d_rho_sq + proj.d_phi_sq + 2.0 * proj.d_z_sq) / proj.d_p_sq


def energy_hemisphere(proj: DipoleProjection, rho0_bar, geo: GeometryConfig):
    """Boss-induced energy u_h, units U_ref; vanishes as r_bar -> 0."""
    r_rr, r_pp, r_zz, r_rz = r_coefficients(rho0_bar, geo)
    return -(proj.d_rho_sq * r_rr + proj.d_phi_sq * r_pp
             + proj.d_z_sq * r_zz + proj.d_rho_z * r_rz) / proj.d_p_sq


def hemisphere_energy_xy(aniso: ParticleAnisotropy, orient: Orientation,
                         x0_bar, y0_bar, geo: GeometryConfig):
    """u_h at lab position (x0_bar, y0_bar) with lab-fixed orientation.

    Broadcasts over array positions; the workhorse for landscapes,
    curvature stencils and minima scans.
    """
    rho0 = np.hypot(x0_bar, y0_bar)
    phi0 = np.arctan2(y0_bar, x0_bar)
    return energy_hemisphere(project(aniso, orient, phi0), rho0, geo)


def energy_total(aniso: ParticleAnisotropy, orient: Orientation,
                 position, geo: GeometryConfig) -> EnergyBreakdown:
    """Full breakdown at lab position (x0_bar, y0_bar).

    The azimuth is phi0 = atan2(y0, x0) (0 at the origin, where the energy
    is direction-independent because Rrr = Rpp and Rrz = 0 there).
    """
    x0, y0 = position
    rho0 = np.hypot(x0, y0)
    phi0 = np.arctan2(y0, x0)
    proj = project(aniso, orient, phi0)
    r_rr, r_pp, r_zz, r_rz = r_coefficients(rho0, geo)
    u0 = energy_plane(proj)
    u_h = -(proj.d_rho_sq * r_rr + proj.d_phi_sq * r_pp
            + proj.d_z_sq * r_zz + proj.d_rho_z * r_rz) / proj.d_p_sq
    return EnergyBreakdown(u0=u0, u_h=u_h, r_rho_rho=r_rr, r_phi_phi=r_pp,
                           r_zz=r_zz, r_rho_z=r_rz, total=u0 + u_h)


def lateral_force(aniso: ParticleAnisotropy, orient: Orientation, position,
                  geo: GeometryConfig, step: float = DEFAULT_FORCE_STEP,
                  part: str = "hemisphere") -> LateralForce:
    """Lateral force F = -grad U at fixed lab-frame orientation.

    Central differences with step h and h/2 combined by one Richardson
    stage, (4 D(h/2) - D(h))/3, giving an O(h^4) gradient of the exact
    energy.  part selects "hemisphere" (u_h only, the landscape quantity)
    or "total" (u0 + u_h); the two coincide because u0 carries no position
    dependence.
    """
    if part not in ("hemisphere", "total"):
        raise DomainError("part must be 'hemisphere' or 'total'")
    x0, y0 = position
    rho0 = float(np.hypot(x0, y0))
    _check_particle_exterior(rho0, geo.r_bar, margin=4.0 * step)

    if part == "hemisphere":
        def f(x, y):
            return hemisphere_energy_xy(aniso, orient, x, y, geo)
    else:
        def f(x, y):
            return energy_total(aniso, orient, (x, y), geo).total

    def deriv(axis):
        def g(t):
            return f(x0 + t, y0) if axis == 0 else f(x0, y0 + t)
        d_h = (g(step) - g(-step)) / (2.0 * step)
        d_h2 = (g(0.5 * step) - g(-0.5 * step)) / step
        return (4.0 * d_h2 - d_h) / 3.0

    return LateralForce(f_x=-deriv(0), f_y=-deriv(1))
