"""Linear-array geometry, element patterns, steering vectors.

All distances are in half-wavelength units and all public angles in degrees.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ElementPattern:
    """cos^q element power pattern: gain(theta) = peak_gain * cos(theta)^q."""

    peak_gain: float
    exponent: float

    def __post_init__(self):
        if self.peak_gain <= 0:
            raise ValueError("peak_gain must be positive")
        if self.exponent < 0:
            raise ValueError("exponent must be non-negative")


# presets used throughout: 6 dBi patch (4 cos^2) and 8 dBi patch (6.3 cos^4)
PATCH_6DBI = ElementPattern(peak_gain=4.0, exponent=2.0)
PATCH_8DBI = ElementPattern(peak_gain=6.3, exponent=4.0)
ISOTROPIC = ElementPattern(peak_gain=1.0, exponent=0.0)

ELEMENT_PRESETS = {
    "patch6dBi": PATCH_6DBI,
    "patch8dBi": PATCH_8DBI,
    "isotropic": ISOTROPIC,
}


def element_gain(p: ElementPattern, theta_deg):
    """Linear power gain at angle(s) theta (degrees); 0 beyond +-90 deg."""
    th = np.radians(np.asarray(theta_deg, dtype=float))
    c = np.cos(th)
    g = np.where(np.abs(th) < np.pi / 2, p.peak_gain * np.maximum(c, 0.0) ** p.exponent, 0.0)
    if np.isscalar(theta_deg):
        return float(g)
    return g


def hpbw(p: ElementPattern) -> float:
    """Half-power beamwidth in degrees of the cos^q pattern."""
    if p.exponent == 0:
        return 180.0
    return float(2.0 * np.degrees(np.arccos(2.0 ** (-1.0 / p.exponent))))


def steering_vector(n: int, theta_deg: float) -> np.ndarray:
    """a(theta): entry k = conj(exp(j*pi*k*sin theta)), k = 0..n-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = np.arange(n)
    return np.exp(-1j * np.pi * k * np.sin(np.radians(theta_deg)))


def rayleigh_distance(n: int, spacing: float = 1.0) -> float:
    """Far-field boundary 2L^2/lambda of an n-element array, half-wavelengths."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return float((n * spacing) ** 2)


@dataclass(frozen=True)
class LinearArray:
    """Uniform linear array centered at the origin."""

    num_elements: int
    spacing: float = 1.0
    element_pattern: ElementPattern = field(default=PATCH_6DBI)

    def __post_init__(self):
        if self.num_elements < 1:
            raise ValueError("num_elements must be >= 1")
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")

    def positions(self) -> np.ndarray:
        n = self.num_elements
        return (np.arange(n) - (n - 1) / 2.0) * self.spacing

    def rayleigh_distance(self) -> float:
        return rayleigh_distance(self.num_elements, self.spacing)
