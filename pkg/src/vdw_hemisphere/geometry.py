"""
Image-charge electrostatics of a grounded conducting plane (z = 0) carrying
a hemispherical boss of radius R centered at the origin.

All lengths are measured in units of a reference height z0, so the geometry
is controlled by the single dimensionless radius r_bar = R/z0.  A unit
source charge at r' (strictly outside the conductor, z' > 0 and
rho'^2 + z'^2 > r_bar^2) is balanced by exactly three image charges:

    -1          at the plane reflection      (rho', phi', -z')
    -r_bar/s'   at the sphere inversion      r_bar^2/s'^2 * (rho', phi',  z')
    +r_bar/s'   at the reflected inversion   r_bar^2/s'^2 * (rho', phi', -z')

with s' = sqrt(rho'^2 + z'^2).  Their superposition makes the potential
vanish on the plane and on the hemisphere.  In Gaussian-style 1/|r - r'|
normalization the Dirichlet Green's function is

    G(r, r') = 1/|r - r'| - 1/|r - rt'| - (r_bar/s') * (1/|r - rb'| - 1/|r - rbt'|)

where rt', rb', rbt' are the three image positions above.  Its homogeneous
part G_H = G - 1/|r - r'| contains only image terms, is regular at r = r',
and is the object the energy calculation differentiates.

Conventions: the source point must be strictly exterior; the field point is
allowed on the conductor surface itself (the potential is defined and zero
there).  G > 0 holds strictly inside the exterior domain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularityError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class CylPoint:
    """Point in cylindrical coordinates (rho, phi, z), lengths in units of z0.

    rho must be non-negative; phi is normalized into [0, 2*pi) on
    construction.  Fields may be numpy arrays of matching shape, in which
    case all downstream evaluations broadcast elementwise.
    """

    rho: float
    phi: float
    z: float

    def __post_init__(self):
        if np.any(np.asarray(self.rho) < 0.0):
            raise DomainError("rho must be >= 0")
        object.__setattr__(self, "phi", np.mod(self.phi, TWO_PI))

    def to_cartesian(self):
        return (self.rho * np.cos(self.phi), self.rho * np.sin(self.phi), self.z)

    @staticmethod
    def from_cartesian(x, y, z) -> "CylPoint":
        return CylPoint(np.hypot(x, y), np.arctan2(y, x), z)


@dataclass(frozen=True)
class GeometryConfig:
    """Plane-with-hemisphere geometry, reduced radius r_bar = R/z0 > 0."""

    r_bar: float

    def __post_init__(self):
        if not np.all(np.asarray(self.r_bar) > 0.0):
            raise DomainError("r_bar must be > 0")


@dataclass(frozen=True)
class ImageCharge:
    point: CylPoint
    charge: float


@dataclass(frozen=True)
class ImageSystem:
    """Unit source charge plus its three conductor images.

    Invariants: image_plane.charge == -1 exactly; the two sphere images
    carry equal and opposite charges -+ r_bar/s' and sit on the (reflected)
    ray through the source at radial distance r_bar^2/s' from the origin.
    """

    source: ImageCharge
    image_plane: ImageCharge
    image_sphere: ImageCharge
    image_sphere_plane: ImageCharge

    def terms(self):
        return (self.source, self.image_plane, self.image_sphere, self.image_sphere_plane)

    def potential(self, r: CylPoint):
        """Sum q_k / |r - r_k| over the source and all images.

        Independent of the closed-form route in green_function; used to
        cross-check it.
        """
        return sum(ic.charge / distance(r, ic.point) for ic in self.terms())


def _exterior_violation(p: CylPoint, geo: GeometryConfig, strict: bool) -> bool:
    r2 = p.rho * p.rho + p.z * p.z
    b2 = geo.r_bar * geo.r_bar
    if strict:
        return bool(np.any(p.z <= 0.0) or np.any(r2 <= b2))
    return bool(np.any(p.z < 0.0) or np.any(r2 < b2))


def require_exterior(p: CylPoint, geo: GeometryConfig, *, strict: bool = True,
                     what: str = "point") -> None:
    """Raise DomainError unless p lies outside the conductor.

    strict=True demands the open exterior (sources, particle positions);
    strict=False admits the conductor surface itself (field points).
    """
    if _exterior_violation(p, geo, strict):
        raise DomainError(
            f"{what} must lie {'strictly ' if strict else ''}outside the "
            f"hemisphere (rho^2+z^2 {'>' if strict else '>='} r_bar^2) and above the plane"
        )


def build_image_system(src: CylPoint, geo: GeometryConfig) -> ImageSystem:
    """Construct the three-image system for a unit charge at src.

    The sphere image of a charge at distance s' from the center sits at
    r_bar^2/s' along the same ray with charge -r_bar/s'; reflecting it in
    the plane (charge flipped) restores the plane condition broken by the
    sphere image.
    """
    require_exterior(src, geo, what="source charge")
    s2 = src.rho * src.rho + src.z * src.z
    s = np.sqrt(s2)
    scale = geo.r_bar * geo.r_bar / s2
    q_sphere = geo.r_bar / s
    return ImageSystem(
        source=ImageCharge(src, 1.0),
        image_plane=ImageCharge(CylPoint(src.rho, src.phi, -src.z), -1.0),
        image_sphere=ImageCharge(
            CylPoint(src.rho * scale, src.phi, src.z * scale), -q_sphere),
        image_sphere_plane=ImageCharge(
            CylPoint(src.rho * scale, src.phi, -src.z * scale), q_sphere),
    )


def distance(r: CylPoint, r_img: CylPoint):
    """Euclidean separation of two cylindrical points (law of cosines)."""
    dz = r.z - r_img.z
    return np.sqrt(r.rho * r.rho + r_img.rho * r_img.rho
                   - 2.0 * r.rho * r_img.rho * np.cos(r.phi - r_img.phi)
                   + dz * dz)


def _image_separations(r: CylPoint, src: CylPoint, r_bar):
    """The three image distances |r - rt'|, |r - rb'|, |r - rbt'|.

    The sphere-image distances are evaluated in the scaled closed form
    sqrt(rho^2 s'^4 + r_bar^4 rho'^2 - 2 r_bar^2 s'^2 rho rho' cos(dphi)
         + (z s'^2 -+ r_bar^2 z')^2) / s'^2
    which never forms the image coordinates explicitly.
    """
    s2 = src.rho * src.rho + src.z * src.z
    cosd = np.cos(r.phi - src.phi)
    cross = 2.0 * r.rho * src.rho * cosd
    d_plane = np.sqrt(r.rho * r.rho + src.rho * src.rho - cross
                      + (r.z + src.z) ** 2)
    b2 = r_bar * r_bar
    common = r.rho * r.rho * s2 * s2 + b2 * b2 * src.rho * src.rho - b2 * s2 * cross
    d_sph = np.sqrt(common + (r.z * s2 - b2 * src.z) ** 2) / s2
    d_sph_pl = np.sqrt(common + (r.z * s2 + b2 * src.z) ** 2) / s2
    return d_plane, d_sph, d_sph_pl


def green_function(r: CylPoint, r_src: CylPoint, geo: GeometryConfig):
    """Dirichlet Green's function of the plane-with-hemisphere conductor.

    Vanishes for r on the plane or on the hemisphere; symmetric under
    exchange of r and r_src (reciprocity).  The source must be strictly
    exterior; the field point may touch the conductor surface.

    Raises
    ------
    DomainError
        if either point violates its exterior condition.
    SingularityError
        if r coincides with r_src.
    """
    require_exterior(r_src, geo, what="source point")
    require_exterior(r, geo, strict=False, what="field point")
    d_free = distance(r, r_src)
    if np.any(d_free == 0.0):
        raise SingularityError("field point coincides with the source")
    d_plane, d_sph, d_sph_pl = _image_separations(r, r_src, geo.r_bar)
    q = geo.r_bar / np.sqrt(r_src.rho * r_src.rho + r_src.z * r_src.z)
    return 1.0 / d_free - 1.0 / d_plane - q * (1.0 / d_sph - 1.0 / d_sph_pl)


def green_homogeneous(r: CylPoint, r_src: CylPoint, geo: GeometryConfig):
    """Image-only part G_H = G - 1/|r - r_src|; finite at r = r_src."""
    require_exterior(r_src, geo, what="source point")
    require_exterior(r, geo, strict=False, what="field point")
    d_plane, d_sph, d_sph_pl = _image_separations(r, r_src, geo.r_bar)
    q = geo.r_bar / np.sqrt(r_src.rho * r_src.rho + r_src.z * r_src.z)
    return -1.0 / d_plane - q * (1.0 / d_sph - 1.0 / d_sph_pl)
