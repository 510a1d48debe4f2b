"""Feeder-distance optimization and the size sweeps.

The optimal AMAF-RIS distance is formalized as the onset of persistent
unimodality of the natural taper sigma_1|u_1|: below it the profile shows
multiple peaks (split illumination), above it sigma_1^2 only decays, so the
smallest persistently-unimodal distance wins.
"""

from dataclasses import dataclass, field

import numpy as np

from .arrays import ElementPattern, LinearArray, rayleigh_distance
from .channel import Scene, build_channel
from .eigenmodes import decompose, design1_pencil
from .farfield import (array_factor_db, evaluate_pattern, pattern_metrics,
                       ris_gain)


@dataclass(frozen=True)
class ScanRecord:
    d: float
    sigma1_sq_db: float
    peak_count: int
    unimodal: bool


@dataclass(frozen=True)
class DistanceScan:
    records: list

    @property
    def candidate_d(self):
        return [r.d for r in self.records]


@dataclass(frozen=True)
class SweepRow:
    n_p: int
    d_opt: float
    gamma_dbi: float
    array_factor_db: float
    sigma1_sq_db: float
    taper_db: float
    sll_db: float
    v1_taper_db: float
    f_over_d: float


SWEEP_COLUMNS = ["n_p", "d_opt", "gamma_dbi", "array_factor_db",
                 "sigma1_sq_db", "taper_db", "sll_db", "v1_taper_db",
                 "f_over_d"]


def peak_count(profile, plateau_tol: float = 1e-9) -> int:
    """Count strict local-maximum plateaus of a non-negative profile.

    Neighboring samples within relative plateau_tol merge into one plateau;
    plateaus at the profile edges count as peaks when higher than the
    adjacent interior plateau.
    """
    p = np.asarray(profile, dtype=float)
    if p.size < 3:
        raise ValueError("profile must have at least 3 samples")
    runs = [p[0]]
    for x in p[1:]:
        if abs(x - runs[-1]) <= plateau_tol * max(abs(x), abs(runs[-1])):
            continue
        runs.append(x)
    runs = [-np.inf] + runs + [-np.inf]
    return sum(1 for i in range(1, len(runs) - 1)
               if runs[i] > runs[i - 1] and runs[i] > runs[i + 1])


def find_optimal_distance(n_p: int, n_a: int,
                          ris_pattern: ElementPattern,
                          amaf_pattern: ElementPattern,
                          d_step: float = 1.0,
                          spacing: float = 1.0,
                          persistence: int = 10):
    """Smallest d whose sigma_1|u_1| profile is unimodal, requiring the
    unimodality to persist for `persistence` consecutive scan steps."""
    if not (n_p >= n_a >= 1):
        raise ValueError("need n_p >= n_a >= 1")
    records = []
    run_start = None
    run_len = 0
    d_max = rayleigh_distance(n_p, spacing)
    d = d_step
    while d <= d_max:
        scene = Scene(ris=LinearArray(n_p, spacing, ris_pattern),
                      amaf=LinearArray(n_a, spacing, amaf_pattern),
                      distance_d=d)
        dec = decompose(build_channel(scene))
        profile = dec.sigmas[0] * np.abs(dec.u_vectors[:, 0])
        npk = peak_count(profile)
        uni = npk == 1
        records.append(ScanRecord(d=d,
                                  sigma1_sq_db=float(20.0 * np.log10(dec.sigmas[0])),
                                  peak_count=npk, unimodal=uni))
        if uni:
            if run_start is None:
                run_start = d
            run_len += 1
            if run_len >= persistence:
                return run_start, DistanceScan(records=records)
        else:
            run_start = None
            run_len = 0
        d += d_step
    raise RuntimeError("no persistently unimodal distance found below the "
                       f"Rayleigh distance {d_max:g}; scanned {len(records)} steps")


def sweep_sizes(n_p_list, n_a: int,
                ris_pattern: ElementPattern,
                amaf_pattern: ElementPattern,
                d_overrides: dict | None = None,
                spacing: float = 1.0,
                grid_step_deg: float = 0.01):
    """Design-1 metrics at the operating distance for each RIS size.

    d_overrides maps n_p -> distance and bypasses the optimizer for sizes
    where a reference operating distance is pinned.
    """
    rows = []
    for n_p in n_p_list:
        if d_overrides and n_p in d_overrides:
            d_opt = float(d_overrides[n_p])
        else:
            d_opt, _ = find_optimal_distance(n_p, n_a, ris_pattern,
                                             amaf_pattern, spacing=spacing)
        scene = Scene(ris=LinearArray(n_p, spacing, ris_pattern),
                      amaf=LinearArray(n_a, spacing, amaf_pattern),
                      distance_d=d_opt)
        t = build_channel(scene)
        dec = decompose(t)
        design = design1_pencil(dec)
        met = pattern_metrics(evaluate_pattern(design, t, grid_step_deg))
        e_r0 = ris_pattern.peak_gain
        v1 = np.abs(dec.v_vectors[:, 0])
        rows.append(SweepRow(
            n_p=n_p,
            d_opt=d_opt,
            gamma_dbi=ris_gain(dec, e_r0),
            array_factor_db=array_factor_db(dec, e_r0),
            sigma1_sq_db=float(20.0 * np.log10(dec.sigmas[0])),
            taper_db=met.taper_db,
            sll_db=met.sll_db,
            v1_taper_db=float(10.0 * np.log10(v1.max() / v1.min())),
            f_over_d=d_opt / n_p,
        ))
    return rows


# Published operating distances for the reference sweeps (see README note on
# the optimizer criterion): n_p -> d.
REFERENCE_D = {16: 8, 32: 16, 64: 30, 128: 80, 192: 120}
