"""Frames, target scenes and channel synthesis.

Conventions.  A frame holds M slow-time blocks of N fast-time samples as an
(M, N) array, row m being block m+1.  Delays are integer range bins applied as
linear (zero-fill) shifts, so a single-carrier receive window spans N + n_max
samples.  A path with Doppler bin m_t rotates block m by exp(j 2 pi m_t (m-1)/M),
bin M (phase 0) meaning stationary.  The OFDM channel is evaluated directly in
the frequency domain with unitary-DFT bookkeeping: a delay is the phase ramp
exp(-j 2 pi n_t k / N) and the per-bin noise variance equals the time-domain
noise variance.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from ._rng import as_rng

WAVEFORMS = ("sc", "ofdm", "fmcw")
_BIN_MAGIC = b"CCSFRM01"


@dataclass(frozen=True)
class Path:
    """One propagation path: range bin, Doppler bin, complex gain."""

    range_bin: int
    doppler_bin: int
    gain: complex


@dataclass(frozen=True)
class TargetScene:
    """Own-radar targets plus per-interferer path lists and the noise level."""

    targets: tuple[Path, ...]
    interference: tuple[tuple[Path, ...], ...] = ()
    noise_var: float = 0.0
    n_max: int = 32

    def __post_init__(self):
        if self.noise_var < 0:
            raise ValueError("noise variance must be nonnegative")
        for p in self.all_paths():
            if not 0 <= p.range_bin <= self.n_max:
                raise ValueError(f"range bin {p.range_bin} outside [0, {self.n_max}]")

    def all_paths(self):
        for p in self.targets:
            yield p
        for paths in self.interference:
            yield from paths


@dataclass(frozen=True)
class FmcwParams:
    """Repeated-chirp reference; slope 1.0 sweeps the full bandwidth in N samples."""

    n_fast: int
    n_chirps: int
    slope: float = 1.0

    def chirp(self) -> np.ndarray:
        n = np.arange(self.n_fast)
        return np.exp(1j * np.pi * self.slope * n * n / self.n_fast)


@dataclass(frozen=True)
class Frame:
    """Transmit frame: (M, N) samples, waveform tag, and what produced it."""

    samples: np.ndarray
    waveform: str
    source: object = field(default=None, repr=False)

    def __post_init__(self):
        if self.waveform not in WAVEFORMS:
            raise ValueError(f"unknown waveform {self.waveform!r}")
        if self.samples.ndim != 2:
            raise ValueError("frame samples must be (M, N)")

    @property
    def n_fast(self) -> int:
        return self.samples.shape[1]

    @property
    def n_slow(self) -> int:
        return self.samples.shape[0]


def _block_matrix(blocks) -> np.ndarray:
    if hasattr(blocks, "ndim"):
        mat = np.asarray(blocks, dtype=np.complex128)
        if mat.ndim == 1:
            mat = mat[None, :]
    else:
        mat = np.stack([b.symbols for b in blocks])
    return mat


def synth_frame(source, waveform: str) -> Frame:
    """Build a frame from symbol blocks (sc, ofdm) or FmcwParams (fmcw).

    sc transmits the symbols directly; ofdm applies the unitary-scaled inverse
    DFT per block, so both waveforms radiate unit average power for unit-energy
    constellations.
    """
    if waveform == "fmcw":
        if not isinstance(source, FmcwParams):
            raise ValueError("fmcw frames are built from FmcwParams")
        samples = np.tile(source.chirp(), (source.n_chirps, 1))
        return Frame(samples=samples, waveform="fmcw", source=source)
    if isinstance(source, FmcwParams):
        raise ValueError(f"chirp parameters cannot drive a {waveform!r} frame")
    mat = _block_matrix(source)
    if waveform == "sc":
        return Frame(samples=mat.copy(), waveform="sc", source=mat)
    if waveform == "ofdm":
        n = mat.shape[1]
        samples = np.fft.ifft(mat, axis=1) * np.sqrt(n)
        return Frame(samples=samples, waveform="ofdm", source=mat)
    raise ValueError(f"unknown waveform {waveform!r}")


def awgn(x: np.ndarray, noise_var: float, rng) -> np.ndarray:
    """x plus circularly-symmetric complex white noise of the given variance."""
    if noise_var < 0:
        raise ValueError("noise variance must be nonnegative")
    if noise_var == 0:
        return np.array(x, copy=True)
    gen = as_rng(rng)
    w = gen.standard_normal(x.shape) + 1j * gen.standard_normal(x.shape)
    return x + np.sqrt(noise_var / 2.0) * w


def _doppler_phase(m_slow: int, doppler_bin: int) -> np.ndarray:
    if not 1 <= doppler_bin <= m_slow:
        raise ValueError(f"doppler bin {doppler_bin} outside [1, {m_slow}]")
    return np.exp(2j * np.pi * doppler_bin * np.arange(m_slow) / m_slow)


def _gather_frames(frames, scene: TargetScene) -> list[np.ndarray]:
    mats = [f.samples if isinstance(f, Frame) else np.asarray(f) for f in frames]
    if len(mats) != 1 + len(scene.interference):
        raise ValueError("need one frame per radar (own first, then interferers)")
    shape = mats[0].shape
    if any(m.shape != shape for m in mats):
        raise ValueError("mismatched frame sizes")
    return mats


def apply_channel_sc(frames, scene: TargetScene, rng=None) -> np.ndarray:
    """Time-domain received frame, (M, N + n_max) with zero-fill delays.

    frames[0] is the own transmission (echoes per scene.targets); frames[1:]
    line up with scene.interference.
    """
    mats = _gather_frames(frames, scene)
    m_slow, n_fast = mats[0].shape
    y = np.zeros((m_slow, n_fast + scene.n_max), dtype=np.complex128)
    per_radar = [scene.targets] + [tuple(p) for p in scene.interference]
    for mat, paths in zip(mats, per_radar):
        for p in paths:
            phase = _doppler_phase(m_slow, p.doppler_bin)
            y[:, p.range_bin:p.range_bin + n_fast] += p.gain * mat * phase[:, None]
    return awgn(y, scene.noise_var, rng)


def apply_channel_ofdm(blocks, scene: TargetScene, rng=None) -> np.ndarray:
    """Frequency-domain received frame Y[k, m] as an (M, N) array.

    Each path contributes gain * s * exp(-j 2 pi n_t k / N) * doppler(m); the
    noise is i.i.d. complex Gaussian with the time-domain variance, which is
    exact under the unitary DFT convention.
    """
    mats = _gather_frames(blocks, scene)
    m_slow, n_fast = mats[0].shape
    k = np.arange(n_fast)
    y = np.zeros((m_slow, n_fast), dtype=np.complex128)
    per_radar = [scene.targets] + [tuple(p) for p in scene.interference]
    for mat, paths in zip(mats, per_radar):
        for p in paths:
            ramp = np.exp(-2j * np.pi * p.range_bin * k / n_fast)
            phase = _doppler_phase(m_slow, p.doppler_bin)
            y += p.gain * mat * ramp[None, :] * phase[:, None]
    return awgn(y, scene.noise_var, rng)


def write_frame_bin(path, samples) -> None:
    """Dump a complex 2-D array: 16-byte header (magic, n_fast, n_slow), then
    little-endian float64 (re, im) pairs in slow-major order."""
    mat = samples.samples if isinstance(samples, Frame) else np.asarray(samples)
    if mat.ndim != 2:
        raise ValueError("expected a 2-D array")
    m_slow, n_fast = mat.shape
    inter = np.empty((m_slow, n_fast, 2), dtype="<f8")
    inter[..., 0] = mat.real
    inter[..., 1] = mat.imag
    with open(path, "wb") as fh:
        fh.write(_BIN_MAGIC + struct.pack("<II", n_fast, m_slow))
        fh.write(inter.tobytes())


def read_frame_bin(path) -> np.ndarray:
    """Inverse of write_frame_bin; returns the (n_slow, n_fast) complex array."""
    with open(path, "rb") as fh:
        head = fh.read(16)
        if len(head) != 16 or head[:8] != _BIN_MAGIC:
            raise ValueError("bad frame file header")
        n_fast, m_slow = struct.unpack("<II", head[8:])
        raw = np.frombuffer(fh.read(), dtype="<f8")
    if raw.size != 2 * n_fast * m_slow:
        raise ValueError("truncated frame file")
    inter = raw.reshape(m_slow, n_fast, 2)
    return inter[..., 0] + 1j * inter[..., 1]
