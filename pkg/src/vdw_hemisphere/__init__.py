"""Exact van der Waals interaction of an anisotropic particle with a
grounded conducting plane carrying a hemispherical boss, and the resulting
lateral-force sign-inversion phase structure."""

from .analysis import (
    LandscapeGrid,
    OriginClassification,
    PhaseDiagram,
    classify_origin,
    find_minima_on_axis,
    landscape,
    phase_diagram,
)
from .dipole import (
    DipoleProjection,
    Orientation,
    ParticleAnisotropy,
    project,
    second_moment_tensor,
)
from .energy import (
    EnergyBreakdown,
    LateralForce,
    energy_hemisphere,
    energy_plane,
    energy_total,
    hemisphere_energy_xy,
    lateral_force,
    r_coefficients,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    ResolutionError,
    SingularityError,
    VdwError,
)
from .geometry import (
    CylPoint,
    GeometryConfig,
    ImageCharge,
    ImageSystem,
    build_image_system,
    distance,
    green_function,
    green_homogeneous,
)
from .oracle import StencilConfig, gh_mixed_hessian, hessian_energy
from .verification import run_verification

__version__ = "0.1.0"

__all__ = [
    "CylPoint", "GeometryConfig", "ImageCharge", "ImageSystem",
    "build_image_system", "distance", "green_function", "green_homogeneous",
    "ParticleAnisotropy", "Orientation", "DipoleProjection", "project",
    "second_moment_tensor",
    "EnergyBreakdown", "LateralForce", "r_coefficients", "energy_plane",
    "energy_hemisphere", "hemisphere_energy_xy", "energy_total", "lateral_force",
    "StencilConfig", "gh_mixed_hessian", "hessian_energy",
    "LandscapeGrid", "OriginClassification", "PhaseDiagram", "landscape",
    "classify_origin", "phase_diagram", "find_minima_on_axis",
    "run_verification",
    "VdwError", "DomainError", "SingularityError", "ConvergenceError",
    "ResolutionError", "ConfigError",
    "__version__",
]
