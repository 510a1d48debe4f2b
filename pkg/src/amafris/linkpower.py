"""Link budget and DC power comparison of the AMAF-fed RIS (arch. 1, N_a PAs)
against a conventional phased array (arch. 2, one PA per element)."""

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .eigenmodes import EigenDecomposition

C_M_S = 299_792_458.0


@dataclass(frozen=True)
class LinkBudget:
    carrier_hz: float
    bandwidth_hz: float
    range_m: float
    rx_noise_figure_db: float
    required_snr_db: float
    noise_psd_dbm_hz: float = -174.0

    def __post_init__(self):
        if min(self.carrier_hz, self.bandwidth_hz, self.range_m) <= 0:
            raise ValueError("carrier, bandwidth and range must be positive")
        if self.bandwidth_hz >= self.carrier_hz:
            warnings.warn("bandwidth >= carrier: narrowband model questionable")


@dataclass(frozen=True)
class PATechnology:
    name: str
    psat_dbm: float
    pae_fraction: float
    gain_db: float

    def __post_init__(self):
        if not (0.0 < self.pae_fraction < 1.0):
            raise ValueError("pae_fraction must be in (0, 1)")
        if self.gain_db <= 0:
            raise ValueError("gain_db must be positive")


PA_TECHNOLOGIES = {
    "CMOS": PATechnology("CMOS", psat_dbm=14.0, pae_fraction=0.10, gain_db=13.0),
    "SiGe": PATechnology("SiGe", psat_dbm=16.0, pae_fraction=0.14, gain_db=14.0),
    "GaN": PATechnology("GaN", psat_dbm=27.0, pae_fraction=0.14, gain_db=20.0),
    "GaAs": PATechnology("GaAs", psat_dbm=27.0, pae_fraction=0.125, gain_db=27.0),
    "InP": PATechnology("InP", psat_dbm=20.0, pae_fraction=0.22, gain_db=28.0),
}


@dataclass(frozen=True)
class ArchitectureComparison:
    pa_count_arch1: int
    pa_count_arch2: int
    per_pa_dbm_arch1: float
    per_pa_dbm_arch2: float
    drive_dbm: float
    per_pa_dc_w: float
    total_dc_w_arch1: float
    total_dc_w_arch2: float
    total_dc_w_arch1_rounded: float
    total_dc_w_arch2_rounded: float
    arch1_feasible: bool
    arch2_feasible: bool


def dbm_to_w(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0) * 1e-3


def w_to_dbm(w: float) -> float:
    return 10.0 * np.log10(w / 1e-3)


def fspl_db(carrier_hz: float, range_m: float) -> float:
    """Free-space path loss 20 log10(4 pi d / lambda)."""
    lam = C_M_S / carrier_hz
    return float(20.0 * np.log10(4.0 * np.pi * range_m / lam))


def noise_power_dbm(lb: LinkBudget) -> float:
    return lb.noise_psd_dbm_hz + 10.0 * np.log10(lb.bandwidth_hz) + lb.rx_noise_figure_db


def required_tx_power_dbm(lb: LinkBudget) -> float:
    rx_signal = noise_power_dbm(lb) + lb.required_snr_db
    return float(rx_signal + fspl_db(lb.carrier_hz, lb.range_m))


def per_pa_power(arch: int, p_t_dbm: float, dec: EigenDecomposition,
                 e_r0: float) -> float:
    """Per-PA output (dBm): transmit power minus the RIS array gain, plus the
    feed loss sigma_1^2 for arch. 1 (which must push power through T)."""
    if arch not in (1, 2):
        raise ValueError("arch must be 1 or 2")
    coh = np.sum(np.abs(dec.u_vectors[:, 0]))
    array_gain_db = 10.0 * np.log10(e_r0 * coh ** 2)
    p = p_t_dbm - array_gain_db
    if arch == 1:
        p -= 10.0 * np.log10(dec.sigmas[0] ** 2)
    return float(p)


def dc_power_w(p_out_dbm: float, tech: PATechnology) -> tuple[float, bool]:
    """DC draw from PAE = (P_out - P_in)/P_DC; also flags P_out <= Psat."""
    p_out = dbm_to_w(p_out_dbm)
    p_in = p_out / 10.0 ** (tech.gain_db / 10.0)
    feasible = p_out_dbm <= tech.psat_dbm
    return (p_out - p_in) / tech.pae_fraction, feasible


def compare_architectures(lb: LinkBudget, dec: EigenDecomposition,
                          e_r0: float, tech: PATechnology,
                          backoff_db: float = 0.0) -> ArchitectureComparison:
    """Both architectures run every PA at the technology's saturation-class
    drive (Psat); feasibility compares required per-PA power to Psat minus
    the optional back-off."""
    n_p, n_a = dec.u_vectors.shape
    p_t = required_tx_power_dbm(lb)
    pa1 = per_pa_power(1, p_t, dec, e_r0)
    pa2 = per_pa_power(2, p_t, dec, e_r0)
    drive = tech.psat_dbm
    per_pa_dc, _ = dc_power_w(drive, tech)
    rounded = round(per_pa_dc, 2)
    limit = tech.psat_dbm - backoff_db
    return ArchitectureComparison(
        pa_count_arch1=n_a,
        pa_count_arch2=n_p,
        per_pa_dbm_arch1=pa1,
        per_pa_dbm_arch2=pa2,
        drive_dbm=drive,
        per_pa_dc_w=per_pa_dc,
        total_dc_w_arch1=n_a * per_pa_dc,
        total_dc_w_arch2=n_p * per_pa_dc,
        total_dc_w_arch1_rounded=n_a * rounded,
        total_dc_w_arch2_rounded=n_p * rounded,
        arch1_feasible=pa1 <= limit,
        arch2_feasible=pa2 <= limit,
    )
