"""
First-principles recomputation of the interaction energy, used to validate
the closed forms in energy.py.

The energy of a fluctuating dipole at r0 outside a grounded conductor is
the contraction of its second-moment tensor with the mixed second
derivatives of the homogeneous Green's function at coincidence,

    U(r0) = (1/(8 pi eps0)) sum_ij <d_i d_j> dG_ij,
    dG_ij = d/dr_i d/dr'_j G_H(r, r') at r = r' = r0.

In reduced units (lengths in z0, energies in U_ref = <d_p^2>/(64 pi eps0
z0^3)) this becomes u = 8 * sum_ij t_ij M_ij with t_ij = <d_i d_j>/<d_p^2>
and M_ij the reduced Hessian.  M is assembled numerically: each mixed
partial is the product of two independent one-dimensional central
first-derivative stencils, applied in Cartesian coordinates (cylindrical
stencils would degenerate on the axis) and afterwards rotated into the
local cylindrical frame at r0.  Richardson extrapolation over step
halvings removes the leading truncation orders; the azimuthal symmetry of
the conductor makes the rho-phi and phi-z entries of the rotated Hessian
vanish, so the four moments carried by DipoleProjection suffice for the
contraction.

This path is deliberately simple and slow; it never serves grid sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dipole import DipoleProjection
from .errors import ConvergenceError, DomainError
from .geometry import CylPoint, GeometryConfig, green_homogeneous

# offsets and weights of central first-derivative stencils, D f ~ sum w_k f(x + k h) / h
_STENCILS = {
    2: ((-1, -0.5), (1, 0.5)),
    4: ((-2, 1.0 / 12.0), (-1, -8.0 / 12.0), (1, 8.0 / 12.0), (2, -1.0 / 12.0)),
}

RICHARDSON_AGREEMENT = 1e-5


@dataclass(frozen=True)
class StencilConfig:
    """Differencing step, stencil order and number of Richardson levels."""

    step: float = 1e-4
    order: int = 4
    richardson_levels: int = 2

    def __post_init__(self):
        if not self.step > 0.0:
            raise DomainError("step must be > 0")
        if self.order not in _STENCILS:
            raise DomainError(f"order must be one of {sorted(_STENCILS)}")
        if self.richardson_levels < 1:
            raise DomainError("richardson_levels must be >= 1")


def _check_clearance(r0: CylPoint, geo: GeometryConfig, step: float) -> None:
    to_plane = float(r0.z)
    to_sphere = float(np.hypot(r0.rho, r0.z)) - float(geo.r_bar)
    if not 4.0 * step < min(to_plane, to_sphere):
        raise DomainError(
            f"stencil clearance violated: 4*step = {4.0 * step:g} must be "
            f"smaller than the distance to the plane ({to_plane:g}) and to "
            f"the hemisphere ({to_sphere:g})")


def _raw_hessian(gh, base, h: float, order: int) -> np.ndarray:
    """Cartesian dG_ij by products of 1-D stencils in r and r' at step h."""
    stencil = _STENCILS[order]
    m = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            acc = 0.0
            for ki, wi in stencil:
                ra = list(base)
                ra[i] += ki * h
                pa = CylPoint.from_cartesian(*ra)
                for kj, wj in stencil:
                    rb = list(base)
                    rb[j] += kj * h
                    acc += wi * wj * gh(pa, CylPoint.from_cartesian(*rb))
            m[i, j] = acc / (h * h)
    return m


def gh_mixed_hessian(r0: CylPoint, geo: GeometryConfig,
                     cfg: StencilConfig | None = None, gh=None) -> np.ndarray:
    """Extrapolated Hessian dG_ij at coincidence, in the cylindrical frame.

    gh overrides the Green's-function backend (signature gh(r, r_src) ->
    float); used for fault injection in the verification command.

    Raises ConvergenceError when the last two Richardson iterates differ
    by more than RICHARDSON_AGREEMENT relative to the Hessian scale.
    """
    cfg = cfg or StencilConfig()
    _check_clearance(r0, geo, cfg.step)
    if gh is None:
        def gh(a, b, _geo=geo):
            return green_homogeneous(a, b, _geo)
    base = tuple(float(v) for v in r0.to_cartesian())

    levels = [_raw_hessian(gh, base, cfg.step / 2.0 ** k, cfg.order)
              for k in range(cfg.richardson_levels)]
    # Richardson tableau diagonal; central stencils have even error series
    # h^p, h^(p+2), ... so stage m cancels h^(p + 2(m-1)).
    diag = [levels[0]]
    rows = levels
    for m in range(1, cfg.richardson_levels):
        fac = 2.0 ** (cfg.order + 2 * (m - 1))
        rows = [(fac * rows[k + 1] - rows[k]) / (fac - 1.0) for k in range(len(rows) - 1)]
        diag.append(rows[-1])
    m_cart = diag[-1]
    if cfg.richardson_levels >= 2:
        scale = np.max(np.abs(m_cart))
        gap = np.max(np.abs(m_cart - diag[-2]))
        if gap > RICHARDSON_AGREEMENT * scale:
            raise ConvergenceError(
                f"Richardson levels disagree: relative gap {gap / scale:.3e}")

    c, s = np.cos(float(r0.phi)), np.sin(float(r0.phi))
    frame = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])  # cols rho,phi,z
    return frame.T @ m_cart @ frame


def hessian_energy(proj: DipoleProjection, r0: CylPoint, geo: GeometryConfig,
                   cfg: StencilConfig | None = None, gh=None) -> float:
    """Total reduced energy u0 + u_h from the numerically differenced G_H.

    Contracts the rotated Hessian with the four projected moments
    (including both rho-z off-diagonal entries).
    """
    m = gh_mixed_hessian(r0, geo, cfg, gh=gh)
    dp = proj.d_p_sq
    contraction = (proj.d_rho_sq * m[0, 0] + proj.d_phi_sq * m[1, 1]
                   + proj.d_z_sq * m[2, 2] + proj.d_rho_z * (m[0, 2] + m[2, 0])) / dp
    return 8.0 * contraction
