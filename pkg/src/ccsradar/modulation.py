"""Constellations and c.c.s block assembly.

The c.c.s pipeline is message bits -> systematic encoder -> parity interleaver
-> Gray-labeled constellation symbols.  Gray labelings follow the published
3GPP TS 38.211 tables for QPSK/16QAM/256QAM (bit 0 first, even-indexed bits on
the in-phase axis); BPSK is the classic real +-1 mapping.  All constellations
are zero mean with unit average energy and contain no zero point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._rng import as_rng
from .coding import CodeConfig, encode, generate_message, interleave_codeword

CONSTELLATION_NAMES = ("bpsk", "qpsk", "16qam", "256qam")


@dataclass(frozen=True)
class Constellation:
    name: str
    points: np.ndarray  # complex, indexed by the bit label (bit 0 = MSB)

    def __post_init__(self):
        pts = np.asarray(self.points)
        if pts.size & (pts.size - 1) or pts.size < 2:
            raise ValueError("constellation size must be a power of two >= 2")
        if np.any(np.abs(pts) < 1e-12):
            raise ValueError("constellation contains a zero point")
        if abs(pts.mean()) > 1e-9 or abs(np.mean(np.abs(pts) ** 2) - 1.0) > 1e-9:
            raise ValueError("constellation must be zero mean with unit energy")

    @property
    def bits_per_symbol(self) -> int:
        return int(np.log2(self.points.size))


def _qam_axis_levels(n_axis_bits: int, axis_bits: np.ndarray) -> np.ndarray:
    # 38.211 nesting: level = 2^t - (1-2b)(...), built from the innermost term;
    # the last axis bit sits innermost, the first axis bit carries the sign
    level = np.ones(axis_bits.shape[0])
    for t in range(1, n_axis_bits):
        level = (1 << t) - (1.0 - 2.0 * axis_bits[:, n_axis_bits - t]) * level
    return (1.0 - 2.0 * axis_bits[:, 0]) * level


@lru_cache(maxsize=None)
def constellation(name: str) -> Constellation:
    """Built-in Gray-labeled constellation by name."""
    if name not in CONSTELLATION_NAMES:
        raise ValueError(f"unknown constellation {name!r}")
    if name == "bpsk":
        return Constellation("bpsk", np.array([1.0 + 0j, -1.0 + 0j]))
    m = {"qpsk": 2, "16qam": 4, "256qam": 8}[name]
    labels = np.arange(1 << m)
    bits = (labels[:, None] >> np.arange(m - 1, -1, -1)) & 1
    i_levels = _qam_axis_levels(m // 2, bits[:, 0::2])
    q_levels = _qam_axis_levels(m // 2, bits[:, 1::2])
    pts = i_levels + 1j * q_levels
    pts /= np.sqrt(np.mean(np.abs(pts) ** 2))
    return Constellation(name, pts)


def map_bits(bits: np.ndarray, const: Constellation) -> np.ndarray:
    """Gray-map a bit stream to symbols; length must divide into whole symbols."""
    bits = np.asarray(bits, dtype=np.uint8)
    m = const.bits_per_symbol
    if bits.shape[-1] % m:
        raise ValueError(f"bit count {bits.shape[-1]} not divisible by {m}")
    groups = bits.reshape(bits.shape[:-1] + (bits.shape[-1] // m, m))
    weights = 1 << np.arange(m - 1, -1, -1)
    labels = (groups * weights).sum(axis=-1)
    return const.points[labels]


def product_bound_b(const: Constellation) -> float:
    """Bound b with |s[n] s*[n']| <= b, i.e. the peak symbol energy."""
    return float(np.max(np.abs(const.points)) ** 2)


def ratio_bound_b(num_const: Constellation, den_const: Constellation) -> float:
    """Bound b with |s_q[k] / s_i[k]| <= b for cross-waveform symbol ratios."""
    return float(np.max(np.abs(num_const.points)) / np.min(np.abs(den_const.points)))


@dataclass(frozen=True)
class CcsBlock:
    """One fast-time block of a c.c.s: the symbols plus their provenance."""

    symbols: np.ndarray
    code: CodeConfig
    constellation: Constellation
    message_bits: np.ndarray
    seed: int | None = None

    @property
    def n_symbols(self) -> int:
        return self.symbols.size


def _check_sizes(n_symbols: int, code: CodeConfig, const: Constellation) -> None:
    if code.n_code_bits != n_symbols * const.bits_per_symbol:
        raise ValueError(
            f"code length {code.n_code_bits} != {n_symbols} symbols x "
            f"{const.bits_per_symbol} bits")


def generate_ccs_block(n_symbols: int, code: CodeConfig, const: Constellation,
                       rng) -> CcsBlock:
    """Draw a message and run the full c.c.s pipeline for one block."""
    _check_sizes(n_symbols, code, const)
    seed = rng if isinstance(rng, (int, np.integer)) else None
    gen = as_rng(rng)
    msg = generate_message(code.n_msg_bits, gen)
    symbols = map_bits(interleave_codeword(encode(msg, code), code), const)
    return CcsBlock(symbols=symbols, code=code, constellation=const,
                    message_bits=msg, seed=seed)


def generate_ccs_blocks(n_symbols: int, code: CodeConfig, const: Constellation,
                        n_blocks: int, rng) -> np.ndarray:
    """Batch of i.i.d.-message blocks as an (n_blocks, n_symbols) symbol array.

    All blocks share the configured interleaver draw; messages are independent.
    """
    _check_sizes(n_symbols, code, const)
    gen = as_rng(rng)
    msgs = gen.integers(0, 2, size=(n_blocks, code.n_msg_bits), dtype=np.uint8)
    return map_bits(interleave_codeword(encode(msgs, code), code), const)
