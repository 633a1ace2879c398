"""Thresholded detection on range-Doppler maps and ROC aggregation.

A bin detects when |R[l, nu]| > eta.  The detection probability averages the
per-target indicators, which for the two-target scene reproduces the tiers
1 (both), 1/2 (exactly one), 0 (none).  False alarms count any exceedance at
range bins 1..n_max outside the target bins; the transmit-leakage row l = 0
is excluded from the false-alarm search.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .receiver import RangeDopplerMap


@dataclass(frozen=True)
class DetectionOutcome:
    """detect() verdict at one threshold; exceeding lists non-target (l, nu) bins."""

    eta: float
    detected: tuple[bool, ...]
    false_alarm: bool
    exceeding: np.ndarray


@dataclass(frozen=True)
class TrialLevels:
    """Sufficient statistics of one map for threshold sweeps."""

    target_levels: tuple[float, ...]
    max_other: float


def _false_alarm_mask(rdmap: RangeDopplerMap, target_bins) -> np.ndarray:
    mask = np.ones_like(rdmap.values, dtype=bool)
    mask[0, :] = False
    for l, nu in target_bins:
        mask[l, nu % rdmap.n_slow] = False
    return mask


def detect(rdmap: RangeDopplerMap, eta: float, target_bins) -> DetectionOutcome:
    """Apply the threshold rule to one map with the given target bin list."""
    if eta <= 0:
        raise ValueError("threshold must be positive")
    mags = np.abs(rdmap.values)
    detected = tuple(bool(abs(rdmap.value_at(l, nu)) > eta) for l, nu in target_bins)
    over = (mags > eta) & _false_alarm_mask(rdmap, target_bins)
    rows, cols = np.nonzero(over)
    nus = np.where(cols == 0, rdmap.n_slow, cols)
    exceeding = np.stack([rows, nus], axis=1) if rows.size else np.empty((0, 2), dtype=int)
    return DetectionOutcome(eta=eta, detected=detected,
                            false_alarm=bool(rows.size), exceeding=exceeding)


def estimate_pd(outcomes) -> float:
    """Average per-target detection fraction over trials."""
    outcomes = list(outcomes)
    if not outcomes:
        raise ValueError("no outcomes")
    return float(np.mean([np.mean(o.detected) for o in outcomes]))


def estimate_pf(outcomes) -> float:
    """Fraction of trials with at least one non-target exceedance."""
    outcomes = list(outcomes)
    if not outcomes:
        raise ValueError("no outcomes")
    return float(np.mean([o.false_alarm for o in outcomes]))


def summarize_map(rdmap: RangeDopplerMap, target_bins) -> TrialLevels:
    """Reduce a map to its target magnitudes and the largest other magnitude."""
    mags = np.abs(rdmap.values)
    levels = tuple(float(abs(rdmap.value_at(l, nu))) for l, nu in target_bins)
    return TrialLevels(target_levels=levels,
                       max_other=float(mags[_false_alarm_mask(rdmap, target_bins)].max()))


@dataclass(frozen=True)
class RocCurves:
    """Detection and false-alarm curves per waveform on a common eta grid."""

    eta: np.ndarray
    pd: dict
    pf: dict
    pd_lo: dict
    pd_hi: dict
    n_trials: int

    def export_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["eta", "pd", "pf", "ci_lo", "ci_hi", "waveform"])
            for wf in self.pd:
                for g in range(self.eta.size):
                    w.writerow([f"{self.eta[g]:.10g}", f"{self.pd[wf][g]:.8f}",
                                f"{self.pf[wf][g]:.8f}", f"{self.pd_lo[wf][g]:.8f}",
                                f"{self.pd_hi[wf][g]:.8f}", wf])


def make_eta_grid(levels_by_waveform: dict, points: int = 200) -> np.ndarray:
    """Log grid from a tenth of the lowest sidelobe ceiling up to twice the
    largest peak, shared by every waveform in the sweep."""
    floors, peaks = [], []
    for levels in levels_by_waveform.values():
        for t in levels:
            floors.append(t.max_other)
            peaks.append(max(t.target_levels))
    lo, hi = 0.1 * min(floors), 2.0 * max(peaks)
    if lo <= 0 or hi <= lo:
        raise ValueError("degenerate level spread for eta grid")
    return np.geomspace(lo, hi, points)


def _wilson(p: np.ndarray, n: int, z: float) -> tuple[np.ndarray, np.ndarray]:
    denom = 1.0 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z * np.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    return np.maximum(0.0, center - half), np.minimum(1.0, center + half)


def threshold_sweep(levels_by_waveform: dict, eta_grid=None, target_bins=None,
                    points: int = 200, z: float = 1.96) -> RocCurves:
    """ROC curves over a common threshold grid.

    levels_by_waveform maps a waveform label to per-trial TrialLevels (or raw
    RangeDopplerMaps, which are summarized first; that needs target_bins).
    Estimates are monotone in eta by construction.  Wilson intervals treat the
    per-target detections as independent Bernoulli draws.
    """
    summarized = {}
    for wf, items in levels_by_waveform.items():
        rows = [summarize_map(it, target_bins) if isinstance(it, RangeDopplerMap) else it
                for it in items]
        if not rows:
            raise ValueError(f"no trials for waveform {wf!r}")
        summarized[wf] = rows
    if eta_grid is None:
        eta_grid = make_eta_grid(summarized, points)
    eta = np.asarray(eta_grid, dtype=float)
    pd, pf, lo, hi = {}, {}, {}, {}
    n_trials = None
    for wf, rows in summarized.items():
        tl = np.array([r.target_levels for r in rows])  # (T, n_targets)
        mo = np.array([r.max_other for r in rows])
        n_trials = tl.shape[0] if n_trials is None else n_trials
        pd[wf] = (tl[None, :, :] > eta[:, None, None]).mean(axis=(1, 2))
        pf[wf] = (mo[None, :] > eta[:, None]).mean(axis=1)
        lo[wf], hi[wf] = _wilson(pd[wf], tl.size, z)
    return RocCurves(eta=eta, pd=pd, pf=pf, pd_lo=lo, pd_hi=hi, n_trials=n_trials)
