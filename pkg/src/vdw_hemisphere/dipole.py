"""
Second moments of the dipole fluctuations of a cylindrically symmetric
particle, projected onto the local cylindrical frame (rho_hat, phi_hat,
z_hat) at the particle's azimuth phi0.

In its body frame the fluctuation tensor is diag(d_n^2, d_n^2, d_p^2) with
the symmetry axis along the third direction; beta = d_n^2/d_p^2 in (0, 1]
measures the anisotropy (beta = 1 is isotropic).  Tilting the axis to polar
angle theta and lab azimuth gamma gives, with a = gamma - phi0,

    <d_rho^2>   = d_p^2 [beta + (1-beta) sin^2(theta) cos^2(a)]
    <d_phi^2>   = d_p^2 [beta + (1-beta) sin^2(theta) sin^2(a)]
    <d_z^2>     = d_p^2 [beta + (1-beta) cos^2(theta)]
    <d_rho d_z> = d_p^2 [(1-beta)/2 sin(2 theta) cos(a)]

equivalently T = d_p^2 [beta I + (1-beta) n n^T] for the unit axis
n = (sin(theta) cos(a), sin(theta) sin(a), cos(theta)).  The trace
d_p^2 (1 + 2 beta) is preserved for any orientation, and the whole
projection depends on gamma and phi0 only through their difference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_HALF_PI = 0.5 * np.pi


@dataclass(frozen=True)
class ParticleAnisotropy:
    """Anisotropy ratio beta in (0, 1] and overall scale d_p_sq > 0."""

    beta: float
    d_p_sq: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.beta <= 1.0:
            raise DomainError("beta must lie in (0, 1]")
        if not self.d_p_sq > 0.0:
            raise DomainError("d_p_sq must be > 0")


@dataclass(frozen=True)
class Orientation:
    """Symmetry-axis direction (theta, gamma) in the lab frame.

    The axis is headless, so any input is folded into theta in [0, pi/2]
    using (theta, gamma) ~ (2*pi - theta, gamma + pi) ~ (pi - theta,
    gamma + pi); gamma is then reduced mod 2*pi.
    """

    theta: float
    gamma: float

    def __post_init__(self):
        th = float(self.theta) % (2.0 * np.pi)
        ga = float(self.gamma)
        if th > np.pi:
            th = 2.0 * np.pi - th
            ga += np.pi
        if th > _HALF_PI:
            th = np.pi - th
            ga += np.pi
        object.__setattr__(self, "theta", th)
        object.__setattr__(self, "gamma", ga % (2.0 * np.pi))


@dataclass(frozen=True)
class DipoleProjection:
    """The four second moments entering the energy, plus their scale."""

    d_rho_sq: float
    d_phi_sq: float
    d_z_sq: float
    d_rho_z: float
    d_p_sq: float = 1.0


def project(aniso: ParticleAnisotropy, orient: Orientation, phi0) -> DipoleProjection:
    """Project the fluctuation tensor onto the cylindrical frame at phi0.

    phi0 may be an array; the moments then broadcast elementwise.
    """
    b, dp = aniso.beta, aniso.d_p_sq
    a = orient.gamma - np.asarray(phi0, dtype=float)
    ca, sa = np.cos(a), np.sin(a)
    st2 = np.sin(orient.theta) ** 2
    return DipoleProjection(
        d_rho_sq=dp * (b + (1.0 - b) * st2 * ca * ca),
        d_phi_sq=dp * (b + (1.0 - b) * st2 * sa * sa),
        d_z_sq=dp * (b + (1.0 - b) * np.cos(orient.theta) ** 2),
        d_rho_z=dp * (0.5 * (1.0 - b) * np.sin(2.0 * orient.theta) * ca),
        d_p_sq=dp,
    )


def second_moment_tensor(aniso: ParticleAnisotropy, orient: Orientation,
                         phi0: float) -> np.ndarray:
    """Full symmetric 3x3 moment tensor in the cylindrical frame at phi0.

    Built by explicitly rotating the body-frame diagonal
    diag(beta, beta, 1) * d_p_sq with R = Rz(gamma - phi0) @ Ry(theta); an
    independent route used to validate the closed-form projections.
    """
    b, dp = aniso.beta, aniso.d_p_sq
    a = orient.gamma - phi0
    ct, st = np.cos(orient.theta), np.sin(orient.theta)
    ca, sa = np.cos(a), np.sin(a)
    ry = np.array([[ct, 0.0, st], [0.0, 1.0, 0.0], [-st, 0.0, ct]])
    rz = np.array([[ca, -sa, 0.0], [sa, ca, 0.0], [0.0, 0.0, 1.0]])
    rot = rz @ ry
    body = np.diag([b * dp, b * dp, dp])
    return rot @ body @ rot.T
