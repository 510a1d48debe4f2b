"""SVD of the propagation matrix and the eigenmode-based beam designs.

The SVD phase convention is configurable because mode-combining designs
(flat-top) depend on how the arbitrary per-mode phases are fixed:

* "anchored" (default): u_1 is rotated so its largest-magnitude entry is real
  positive; each higher mode u_i is then phase-aligned against the unit-phase
  profile of u_1 (rotation that makes u_i .* conj(unit(u_1)) as real as
  possible, sign fixed by its largest entry).  This keeps mode combinations
  such as 2u_1 + u_3 coherent across the aperture.
* "largest_entry": every u_i independently gets its largest-magnitude entry
  (lowest index on ties) made real non-negative.

In both cases v_i is co-rotated by the same phase so sigma_i u_i v_i* is
unchanged and the reconstruction is exact.
"""

from dataclasses import dataclass, field

import numpy as np

from .channel import PropagationMatrix


@dataclass(frozen=True)
class EigenDecomposition:
    sigmas: np.ndarray          # length N_a, descending
    u_vectors: np.ndarray       # N_p x N_a, column i is u_i
    v_vectors: np.ndarray       # N_a x N_a, column i is v_i
    degenerate: tuple = ()      # indices i where sigma_i - sigma_{i+1} ~ 0
    convention: str = "anchored"


@dataclass(frozen=True)
class BeamDesign:
    precoder_b: np.ndarray      # length N_a
    ris_phases: np.ndarray      # length N_p, unit modulus (diagonal of D)
    label: str = ""


def _tie_break_argmax(mags: np.ndarray, tol: float = 1e-12) -> int:
    return int(np.argmax(mags >= mags.max() - tol))


def _apply_largest_entry(u: np.ndarray, v: np.ndarray) -> None:
    for i in range(u.shape[1]):
        k = _tie_break_argmax(np.abs(u[:, i]))
        ph = u[k, i] / abs(u[k, i])
        u[:, i] /= ph
        v[:, i] /= ph


def _apply_anchored(u: np.ndarray, v: np.ndarray) -> None:
    k = _tie_break_argmax(np.abs(u[:, 0]))
    ph = u[k, 0] / abs(u[k, 0])
    u[:, 0] /= ph
    v[:, 0] /= ph
    ref = u[:, 0] / np.abs(u[:, 0])
    for i in range(1, u.shape[1]):
        z = u[:, i] * np.conj(ref)
        psi = 0.5 * np.angle(np.sum(z * z))
        zr = z * np.exp(-1j * psi)
        kk = _tie_break_argmax(np.abs(zr))
        if np.real(zr[kk]) < 0:
            psi += np.pi
        rot = np.exp(-1j * psi)
        u[:, i] *= rot
        v[:, i] *= rot


def decompose(t: PropagationMatrix, convention: str = "anchored") -> EigenDecomposition:
    """Thin SVD of T under a fixed singular-vector phase convention."""
    try:
        u, s, vh = np.linalg.svd(t.entries, full_matrices=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise RuntimeError("SVD failed to converge") from exc
    v = vh.conj().T
    if convention == "anchored":
        _apply_anchored(u, v)
    elif convention == "largest_entry":
        _apply_largest_entry(u, v)
    else:
        raise ValueError(f"unknown phase convention: {convention!r}")
    degen = tuple(i for i in range(len(s) - 1) if s[i] - s[i + 1] < 1e-12 * s[0])
    u.setflags(write=False)
    v.setflags(write=False)
    s.setflags(write=False)
    return EigenDecomposition(sigmas=s, u_vectors=u, v_vectors=v,
                              degenerate=degen, convention=convention)


def design1_pencil(dec: EigenDecomposition) -> BeamDesign:
    """Maximum power transfer: b = v_1, RIS phases conjugate-match u_1."""
    u1 = dec.u_vectors[:, 0]
    if np.any(np.abs(u1) < 1e-15):
        raise ValueError("degenerate excitation: u_1 has a near-zero entry")
    phases = np.conj(u1) / np.abs(u1)
    return BeamDesign(precoder_b=dec.v_vectors[:, 0].copy(),
                      ris_phases=phases, label="pencil")


def design2_flattop(dec: EigenDecomposition) -> BeamDesign:
    """Flat-top sector beam: b = 2 v_1/sigma_1 + v_3/sigma_3, D = I."""
    if dec.sigmas.size < 3:
        raise ValueError("flat-top design needs at least 3 modes")
    s, v = dec.sigmas, dec.v_vectors
    b = 2.0 * v[:, 0] / s[0] + v[:, 2] / s[2]
    ones = np.ones(dec.u_vectors.shape[0], dtype=complex)
    return BeamDesign(precoder_b=b, ris_phases=ones, label="flattop")


def design3_monopulse(dec: EigenDecomposition):
    """Monopulse pair: sum b = v_1, difference b = sigma_1 v_2/sigma_2, D = I."""
    if dec.sigmas.size < 2:
        raise ValueError("monopulse design needs at least 2 modes")
    s, v = dec.sigmas, dec.v_vectors
    ones = np.ones(dec.u_vectors.shape[0], dtype=complex)
    sum_d = BeamDesign(precoder_b=v[:, 0].copy(), ris_phases=ones, label="monopulse-sum")
    diff_d = BeamDesign(precoder_b=s[0] * v[:, 1] / s[1], ris_phases=ones,
                        label="monopulse-diff")
    return sum_d, diff_d


def steer(design: BeamDesign, theta_s_deg: float) -> BeamDesign:
    """Add a linear RIS phase gradient that translates the beam in sin-space."""
    k = np.arange(design.ris_phases.size)
    grad = np.exp(-1j * np.pi * k * np.sin(np.radians(theta_s_deg)))
    return BeamDesign(precoder_b=design.precoder_b,
                      ris_phases=design.ris_phases * grad,
                      label=f"{design.label}@{theta_s_deg:g}deg")


def custom_design(dec: EigenDecomposition, betas, ris_phases=None,
                  label: str = "custom") -> BeamDesign:
    """General family member: b = sum_i beta_i v_i with given RIS phases."""
    betas = np.asarray(betas, dtype=float)
    if betas.size > dec.sigmas.size:
        raise ValueError("more betas than available modes")
    b = dec.v_vectors[:, :betas.size] @ betas.astype(complex)
    if ris_phases is None:
        ris_phases = np.ones(dec.u_vectors.shape[0], dtype=complex)
    else:
        ris_phases = np.asarray(ris_phases, dtype=complex)
        if ris_phases.size != dec.u_vectors.shape[0]:
            raise ValueError("ris_phases length mismatch")
    return BeamDesign(precoder_b=b, ris_phases=ris_phases, label=label)


def design_to_dict(design: BeamDesign) -> dict:
    """JSON-friendly export with phases in degrees in [-180, 180)."""
    deg = np.degrees(np.angle(design.ris_phases))
    deg = np.where(deg >= 180.0, deg - 360.0, deg)
    return {
        "label": design.label,
        "b": [[float(z.real), float(z.imag)] for z in design.precoder_b],
        "ris_phases_deg": [float(x) for x in deg],
    }
