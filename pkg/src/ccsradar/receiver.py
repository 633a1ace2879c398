"""Range-Doppler processing for single-carrier, OFDM and FMCW frames.

All maps share one normalization contract: a unit-gain on-bin path produces a
unit-magnitude peak, fast-time sums carry 1/N and the slow-time DFT carries
1/M.  Maps are truncated to range bins 0..n_max.  Doppler bins are 1..M with
bin M (stationary) stored in column 0, matching the slow-time DFT index.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .scene import FmcwParams, write_frame_bin

_DB_FLOOR = 1e-20


@dataclass(frozen=True)
class RangeDopplerMap:
    """(n_max + 1, M) complex map plus provenance; values[l, (nu % M)]."""

    values: np.ndarray
    waveform: str
    normalization: str

    @property
    def n_max(self) -> int:
        return self.values.shape[0] - 1

    @property
    def n_slow(self) -> int:
        return self.values.shape[1]

    def value_at(self, range_bin: int, doppler_bin: int) -> complex:
        if not 0 <= range_bin <= self.n_max:
            raise ValueError("range bin out of map")
        if not 1 <= doppler_bin <= self.n_slow:
            raise ValueError("doppler bin out of map")
        return self.values[range_bin, doppler_bin % self.n_slow]

    def export_csv(self, path) -> None:
        """Rows (l, nu, abs_db); magnitudes are clipped at -400 dB."""
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["l", "nu", "abs_db"])
            mags = 20.0 * np.log10(np.maximum(np.abs(self.values), _DB_FLOOR))
            for l in range(self.values.shape[0]):
                for col in range(self.n_slow):
                    nu = col if col else self.n_slow
                    w.writerow([l, nu, f"{mags[l, col]:.6f}"])

    def export_binary(self, path) -> None:
        """Same container as frame dumps: header dims are (M, n_max + 1)."""
        write_frame_bin(path, self.values)


def _slow_dft(r: np.ndarray) -> np.ndarray:
    return np.fft.fft(r, axis=1) / r.shape[1]


def mf_bank(y: np.ndarray, x: np.ndarray, n_max: int) -> np.ndarray:
    """Per-block matched-filter outputs r[l, m] = (1/N) sum_n y[n, m] x*[n-l, m].

    y may carry the delayed tail (width N + n_max) or be truncated to N; short
    inputs are zero-extended, which matches the zero-fill channel convention.
    """
    y = np.asarray(y, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    m_slow, n_fast = x.shape
    if n_max >= n_fast:
        raise ValueError("n_max must be smaller than the block length")
    if y.shape[0] != m_slow or y.shape[1] < n_fast:
        raise ValueError("received frame incompatible with reference frame")
    if y.shape[1] < n_fast + n_max:
        pad = np.zeros((m_slow, n_fast + n_max - y.shape[1]), dtype=np.complex128)
        y = np.concatenate([y, pad], axis=1)
    xc = np.conj(x)
    r = np.empty((n_max + 1, m_slow), dtype=np.complex128)
    for lag in range(n_max + 1):
        r[lag] = np.einsum("mn,mn->m", y[:, lag:lag + n_fast], xc)
    return r / n_fast


def sc_range_doppler(r: np.ndarray) -> RangeDopplerMap:
    """Slow-time DFT of the matched-filter bank, 1/M normalized."""
    return RangeDopplerMap(values=_slow_dft(r), waveform="sc",
                           normalization="1/N fast, 1/M slow")


def ofdm_range_doppler(y_freq: np.ndarray, s: np.ndarray, n_max: int) -> RangeDopplerMap:
    """Zero-forcing map: divide out the own symbols, inverse DFT over
    subcarriers, forward DFT over blocks."""
    y_freq = np.asarray(y_freq, dtype=np.complex128)
    s = np.asarray(s, dtype=np.complex128)
    if y_freq.shape != s.shape:
        raise ValueError("received and reference symbol shapes differ")
    if n_max >= s.shape[1]:
        raise ValueError("n_max must be smaller than the block length")
    if np.any(np.abs(s) < 1e-12):
        raise ValueError("reference symbols contain a (near) zero")
    per_block = np.fft.ifft(y_freq / s, axis=1)  # (m, l)
    return RangeDopplerMap(values=_slow_dft(per_block.T[: n_max + 1]),
                           waveform="ofdm",
                           normalization="zero-forcing, 1/N fast, 1/M slow")


def fmcw_range_doppler(y: np.ndarray, params: FmcwParams, n_max: int) -> RangeDopplerMap:
    """Dechirp against the reference, range IDFT, slow-time DFT.

    A delay-l beat tone only occupies N - l samples of the reference window,
    so each range bin is rescaled by N / (N - l); on-bin peaks then read |gain|
    exactly while the rectangular-window leakage of the truncated tone stays.
    """
    y = np.asarray(y, dtype=np.complex128)
    n_fast = params.n_fast
    if n_max >= n_fast:
        raise ValueError("n_max must be smaller than the chirp length")
    if y.shape[0] != params.n_chirps or y.shape[1] < n_fast:
        raise ValueError("received frame incompatible with FMCW parameters")
    mixed = y[:, :n_fast] * np.conj(params.chirp())
    per_chirp = np.fft.ifft(mixed, axis=1)[:, : n_max + 1]  # (m, l)
    lags = np.arange(n_max + 1)
    comp = n_fast / (n_fast - lags)
    return RangeDopplerMap(values=_slow_dft(per_chirp.T * comp[:, None]),
                           waveform="fmcw",
                           normalization="window-loss compensated, 1/M slow")
