"""Aperiodic, periodic and OFDM-ratio correlation analytics.

Correlations are normalized by the block length N:

    chi(l)  = (1/N) sum_n s[n] s*[n-l]          aperiodic, lags -(N-1)..N-1
    rho(l)  = (1/N) sum_n s1[n] s2*[n-l]        aperiodic cross
    V(l)    = (1/N) sum_k (s_q[k]/s_i[k]) e^{+j 2 pi l k / N}   lags 0..N-1

Every routine accepts batched inputs (..., N) and computes along the last
axis.  The "direct" method is a deliberately independent O(N^2) evaluation
kept as an oracle for the FFT route; do not fold the two together.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

PROFILE_KINDS = ("auto", "cross", "periodic_auto", "periodic_cross", "idft_ratio")


@dataclass(frozen=True)
class CorrelationProfile:
    """Correlation values on an explicit lag grid; values may be batched."""

    lags: np.ndarray
    values: np.ndarray
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if self.values.shape[-1] != self.lags.size:
            raise ValueError("lag/value length mismatch")

    def value_at(self, lag: int) -> np.ndarray:
        if self.kind in ("periodic_auto", "periodic_cross", "idft_ratio"):
            lag = lag % self.n
        hit = np.nonzero(self.lags == lag)[0]
        if hit.size == 0:
            if self.kind in ("auto", "cross") and abs(lag) >= self.n:
                # aperiodic correlations have no overlap beyond |l| = N - 1
                return np.zeros(self.values.shape[:-1], dtype=self.values.dtype)[()]
            raise ValueError(f"lag {lag} not in profile")
        return self.values[..., hit[0]]

    def export_csv(self, path) -> None:
        """Write (lag, re, im, abs) rows; only defined for unbatched profiles."""
        if self.values.ndim != 1:
            raise ValueError("csv export needs an unbatched profile")
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["lag", "re", "im", "abs"])
            for lag, v in zip(self.lags.tolist(), self.values.tolist()):
                w.writerow([lag, repr(v.real), repr(v.imag), repr(abs(v))])


def _check_block(s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=np.complex128)
    if s.shape[-1] < 1:
        raise ValueError("empty block")
    return s


def _aperiodic(s1: np.ndarray, s2: np.ndarray, method: str) -> np.ndarray:
    n = s1.shape[-1]
    if method == "fft":
        f1 = np.fft.fft(s1, 2 * n, axis=-1)
        f2 = np.fft.fft(s2, 2 * n, axis=-1)
        c = np.fft.ifft(f1 * np.conj(f2), axis=-1)
        return np.concatenate([c[..., n + 1:], c[..., :n]], axis=-1) / n
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")
    out = np.zeros(s1.shape[:-1] + (2 * n - 1,), dtype=np.complex128)
    for i, lag in enumerate(range(-(n - 1), n)):
        if lag >= 0:
            out[..., i] = np.sum(s1[..., lag:] * np.conj(s2[..., : n - lag]), axis=-1)
        else:
            out[..., i] = np.sum(s1[..., : n + lag] * np.conj(s2[..., -lag:]), axis=-1)
    return out / n


def _select_lags(profile_lags: np.ndarray, values: np.ndarray, lags) -> tuple[np.ndarray, np.ndarray]:
    if lags is None:
        return profile_lags, values
    lags = np.asarray(list(lags), dtype=int)
    idx = np.searchsorted(profile_lags, lags)
    if np.any(idx >= profile_lags.size) or np.any(profile_lags[idx] != lags):
        raise ValueError("requested lag outside the computable range")
    return lags, values[..., idx]


def autocorr(s: np.ndarray, lags=None, method: str = "fft") -> CorrelationProfile:
    """Aperiodic autocorrelation chi over all lags (or a requested subset)."""
    s = _check_block(s)
    n = s.shape[-1]
    full = np.arange(-(n - 1), n)
    sel, vals = _select_lags(full, _aperiodic(s, s, method), lags)
    return CorrelationProfile(lags=sel, values=vals, kind="auto", n=n)


def crosscorr(s1: np.ndarray, s2: np.ndarray, lags=None, method: str = "fft") -> CorrelationProfile:
    """Aperiodic cross-correlation rho of two equal-length blocks."""
    s1, s2 = _check_block(s1), _check_block(s2)
    if s1.shape[-1] != s2.shape[-1]:
        raise ValueError("block length mismatch")
    n = s1.shape[-1]
    full = np.arange(-(n - 1), n)
    sel, vals = _select_lags(full, _aperiodic(s1, s2, method), lags)
    return CorrelationProfile(lags=sel, values=vals, kind="cross", n=n)


def periodic_corr(s: np.ndarray, s2: np.ndarray | None = None) -> CorrelationProfile:
    """Circular correlation, lags 0..N-1; autocorrelation when s2 is omitted."""
    s = _check_block(s)
    other = s if s2 is None else _check_block(s2)
    if other.shape[-1] != s.shape[-1]:
        raise ValueError("block length mismatch")
    n = s.shape[-1]
    vals = np.fft.ifft(np.fft.fft(s, axis=-1) * np.conj(np.fft.fft(other, axis=-1)), axis=-1) / n
    kind = "periodic_auto" if s2 is None else "periodic_cross"
    return CorrelationProfile(lags=np.arange(n), values=vals, kind=kind, n=n)


def idft_ratio(s_i: np.ndarray, s_q: np.ndarray) -> CorrelationProfile:
    """OFDM interference kernel V: inverse DFT of the symbol ratio s_q/s_i."""
    s_i, s_q = _check_block(s_i), _check_block(s_q)
    if s_i.shape[-1] != s_q.shape[-1]:
        raise ValueError("block length mismatch")
    if np.any(np.abs(s_i) < 1e-12):
        raise ValueError("own-signal symbols contain a (near) zero")
    vals = np.fft.ifft(s_q / s_i, axis=-1)
    return CorrelationProfile(lags=np.arange(s_i.shape[-1]), values=vals,
                              kind="idft_ratio", n=s_i.shape[-1])


def _windowed_abs(profile: CorrelationProfile, max_lag: int | None,
                  drop_zero: bool) -> np.ndarray:
    lags = profile.lags
    if profile.kind == "idft_ratio":
        signed = np.where(lags <= profile.n // 2, lags, lags - profile.n)
    else:
        signed = lags
    keep = np.ones(lags.size, dtype=bool)
    if max_lag is not None:
        keep &= np.abs(signed) <= max_lag
    if drop_zero:
        keep &= signed != 0
    if not np.any(keep):
        raise ValueError("no lags left after windowing")
    return np.abs(profile.values[..., keep])


def pslr(profile: CorrelationProfile, max_lag: int | None = None) -> np.ndarray | float:
    """Peak-to-sidelobe ratio in dB, -20 log10 of the largest nonzero-lag |chi|.

    The zero-lag value must sit near 1 (unit-energy blocks) and is used to
    normalize, which also covers QAM blocks whose realized energy fluctuates.
    max_lag restricts the sidelobe search to |l| <= max_lag; the default scans
    every nonzero lag.
    """
    if profile.kind != "auto":
        raise ValueError("pslr is defined on aperiodic autocorrelation profiles")
    peak = np.abs(profile.value_at(0))
    if np.any(np.abs(peak - 1.0) > 0.25):
        raise ValueError("zero-lag correlation far from 1; block not unit energy?")
    side = _windowed_abs(profile, max_lag, drop_zero=True).max(axis=-1)
    # A numerically-zero sidelobe (delta-like chi) reports +inf rather than
    # tripping log-of-zero warnings.
    ratio = np.where(side < 1e-15, np.nan, side) / peak
    with np.errstate(invalid="ignore"):
        out = np.where(np.asarray(side) < 1e-15, np.inf, -20.0 * np.log10(ratio))
    return float(out) if np.ndim(out) == 0 else out


def suppression_metric(profile: CorrelationProfile, max_lag: int | None = None) -> np.ndarray | float:
    """Interference suppression in dB: -20 log10 of the largest |value| over
    all lags (zero lag included)."""
    if profile.kind not in ("cross", "idft_ratio"):
        raise ValueError("suppression is defined on cross or idft_ratio profiles")
    worst = _windowed_abs(profile, max_lag, drop_zero=False).max(axis=-1)
    out = -20.0 * np.log10(worst)
    return float(out) if np.ndim(out) == 0 else out
