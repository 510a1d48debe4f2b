"""Near-field AMAF -> RIS propagation matrix.

Scene geometry: RIS along the x-axis at z=0 facing +z, AMAF in the parallel
plane z=d facing -z, both arrays centered on the z-axis unless a lateral
offset is given.  Entry (n, m) of T follows the per-element Friis form
    T[n, m] = sqrt(E_A(theta) * E_R(phi)) * exp(j*pi*r) / (2*pi*r)
with r the element separation in half-wavelengths and both angles measured
from the respective element boresight (cos theta = cos phi = d / r).
"""

from dataclasses import dataclass

import numpy as np

from .arrays import LinearArray, element_gain


@dataclass(frozen=True)
class Scene:
    ris: LinearArray
    amaf: LinearArray
    distance_d: float
    amaf_lateral_offset: float = 0.0

    def __post_init__(self):
        if self.distance_d <= 0:
            raise ValueError("distance_d must be positive")


@dataclass(frozen=True)
class PropagationMatrix:
    entries: np.ndarray  # complex, N_p x N_a
    scene: Scene


def build_channel(scene: Scene) -> PropagationMatrix:
    """Evaluate T for the scene; rows index RIS elements, columns AMAF."""
    d = scene.distance_d
    x = scene.ris.positions()[:, None]
    y = scene.amaf.positions()[None, :] + scene.amaf_lateral_offset
    r = np.sqrt(d * d + (x - y) ** 2)
    theta_deg = np.degrees(np.arccos(np.clip(d / r, -1.0, 1.0)))
    e_a = element_gain(scene.amaf.element_pattern, theta_deg)
    e_r = element_gain(scene.ris.element_pattern, theta_deg)
    t = np.sqrt(e_a * e_r) * np.exp(1j * np.pi * r) / (2.0 * np.pi * r)
    return PropagationMatrix(entries=t, scene=scene)


def free_space_coupling(scene: Scene) -> float:
    """Total captured power proxy: squared Frobenius norm of T."""
    t = build_channel(scene).entries
    return float(np.sum(np.abs(t) ** 2))
