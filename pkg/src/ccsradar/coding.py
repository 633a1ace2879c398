"""Channel codes and interleaving for c.c.s construction.

All encoders are systematic: a codeword is [message | parity], so the first
n_msg_bits positions carry the message verbatim.  Codes that are not naturally
systematic (polar, LDPC) are brought to that form deterministically, by a fixed
reparameterization and bit-position reordering of the same codebook.

Bits are uint8 arrays in {0, 1}; batch encoding acts on the last axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._gf2 import gf2_matmul
from ._rng import as_rng

CODE_KINDS = ("uncoded", "repetition", "polar", "ldpc")

_LDPC_ROW_WEIGHT = 3


@dataclass(frozen=True)
class CodeConfig:
    """Code selection plus interleaver policy for one c.c.s stream.

    interleaver_seed picks the permutation draw; interleave=False keeps the
    natural codeword order.  construction_seed only matters for ldpc, where it
    seeds the pseudo-random parity-check construction.
    """

    kind: str
    n_code_bits: int
    n_msg_bits: int
    interleave: bool = True
    interleaver_seed: int | None = 0
    construction_seed: int = 0

    def __post_init__(self):
        if self.kind not in CODE_KINDS:
            raise ValueError(f"unknown code kind {self.kind!r}")
        if self.n_msg_bits < 1 or self.n_code_bits < self.n_msg_bits:
            raise ValueError(f"bad code dimensions ({self.n_msg_bits}, {self.n_code_bits})")
        if self.kind == "uncoded" and self.n_code_bits != self.n_msg_bits:
            raise ValueError("uncoded requires n_code_bits == n_msg_bits")
        if self.kind == "repetition" and self.n_code_bits % self.n_msg_bits:
            raise ValueError("repetition factor must be an integer")
        if self.kind == "polar" and self.n_code_bits & (self.n_code_bits - 1):
            raise ValueError("polar codeword length must be a power of two")
        if self.kind == "ldpc" and self.n_code_bits == self.n_msg_bits:
            raise ValueError("ldpc needs at least one parity bit")

    @property
    def rate(self) -> float:
        return self.n_msg_bits / self.n_code_bits

    @property
    def gamma(self) -> int:
        if self.kind != "repetition":
            raise ValueError("gamma is defined for repetition codes only")
        return self.n_code_bits // self.n_msg_bits


@dataclass(frozen=True)
class Permutation:
    """Bit interleaver: out[p] = in[table[p]].  First n_fixed positions are identity."""

    table: np.ndarray
    n_fixed: int

    def __post_init__(self):
        t = np.asarray(self.table)
        if sorted(t.tolist()) != list(range(t.size)):
            raise ValueError("table is not a permutation")
        if not np.array_equal(t[: self.n_fixed], np.arange(self.n_fixed)):
            raise ValueError("prefix positions must be fixed")

    def apply(self, bits: np.ndarray) -> np.ndarray:
        return np.asarray(bits)[..., self.table]

    def inverse(self) -> "Permutation":
        inv = np.argsort(self.table)
        return Permutation(table=inv, n_fixed=self.n_fixed)


def generate_message(n_bits: int, rng) -> np.ndarray:
    """n_bits i.i.d. equiprobable bits."""
    if n_bits < 1:
        raise ValueError("n_bits must be positive")
    return as_rng(rng).integers(0, 2, size=n_bits, dtype=np.uint8)


def make_interleaver(n_code_bits: int, n_msg_bits: int, seed) -> Permutation:
    """Uniform random permutation of the parity positions, message prefix fixed."""
    if not 0 < n_msg_bits <= n_code_bits:
        raise ValueError("need 0 < n_msg_bits <= n_code_bits")
    tail = n_msg_bits + as_rng(seed).permutation(n_code_bits - n_msg_bits)
    table = np.concatenate([np.arange(n_msg_bits), tail])
    return Permutation(table=table, n_fixed=n_msg_bits)


# ---------------------------------------------------------------------------
# repetition

def encode_repetition(msg: np.ndarray, gamma: int) -> np.ndarray:
    """gamma concatenated copies of the message."""
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    msg = np.asarray(msg, dtype=np.uint8)
    return np.concatenate([msg] * gamma, axis=-1)


def repetition_bit_correlation(i: int, j: int, n_msg_bits: int, gamma: int,
                               interleaved: bool) -> float:
    """Correlation of codeword bits i and j (as +-1 symbols) for a repetition code.

    For the interleaved case the correlation is averaged over the random
    parity permutation; positions below n_msg_bits are the systematic copy.
    """
    k = n_msg_bits
    n = gamma * k
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError("bit positions out of range")
    if i == j:
        return 1.0
    if not interleaved:
        return 1.0 if (j - i) % k == 0 else 0.0
    both_msg = i < k and j < k
    both_par = i >= k and j >= k
    if both_msg:
        return 0.0
    if both_par:
        return (gamma - 2) / ((gamma - 1) * k - 1)
    return 1.0 / k


# ---------------------------------------------------------------------------
# polar

def _polar_transform(bits: np.ndarray) -> np.ndarray:
    """Kronecker-power transform of the lower-triangular 2x2 kernel, last axis."""
    x = np.array(bits, dtype=np.uint8, copy=True)
    n = x.shape[-1]
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    lead = x.shape[:-1]
    flat = x.reshape(-1, n)
    h = 1
    while h < n:
        v = flat.reshape(-1, n // (2 * h), 2, h)
        v[:, :, 1, :] ^= v[:, :, 0, :]
        h *= 2
    return flat.reshape(*lead, n)


@lru_cache(maxsize=32)
def polar_info_set(n_code_bits: int, n_msg_bits: int) -> tuple[int, ...]:
    """Input positions carrying message bits, by Bhattacharyya ranking at design
    erasure 0.5.  The returned set is closed under the bitwise-subset order,
    which the systematic encoder relies on.
    """
    z = np.array([0.5])
    while z.size < n_code_bits:
        z = np.concatenate([z * z, 2.0 * z - z * z])
    order = np.argsort(z, kind="stable")
    info = np.sort(order[:n_msg_bits])
    member = np.zeros(n_code_bits, dtype=bool)
    member[info] = True
    for j in info:
        b = 1
        while b <= j:
            if (j & b) and not member[j ^ b]:
                raise AssertionError("info set is not subset-closed")
            b <<= 1
    return tuple(int(v) for v in info)


def encode_polar(msg: np.ndarray, config: CodeConfig) -> np.ndarray:
    """Plain (non-systematic) polar transform of the frozen-bit-padded message."""
    if config.kind != "polar":
        raise ValueError("config is not a polar code")
    msg = np.asarray(msg, dtype=np.uint8)
    if msg.shape[-1] != config.n_msg_bits:
        raise ValueError("message length mismatch")
    info = np.array(polar_info_set(config.n_code_bits, config.n_msg_bits))
    u = np.zeros(msg.shape[:-1] + (config.n_code_bits,), dtype=np.uint8)
    u[..., info] = msg
    return _polar_transform(u)


def _encode_polar_systematic(msg: np.ndarray, config: CodeConfig) -> np.ndarray:
    # Two transforms with a mask in between give the codeword x with
    # x[info] = msg and frozen transform-domain inputs zero; subset closure of
    # the info set makes the masked double transform exact.  The systematic
    # form then lists the info positions first.
    info = np.array(polar_info_set(config.n_code_bits, config.n_msg_bits))
    comp = np.setdiff1d(np.arange(config.n_code_bits), info)
    u = np.zeros(msg.shape[:-1] + (config.n_code_bits,), dtype=np.uint8)
    u[..., info] = msg
    y = _polar_transform(u)
    y[..., comp] = 0
    x = _polar_transform(y)
    return np.concatenate([x[..., info], x[..., comp]], axis=-1)


# ---------------------------------------------------------------------------
# ldpc

@lru_cache(maxsize=8)
def _ldpc_tables(n_code_bits: int, n_msg_bits: int, construction_seed: int):
    """Systematic parity-check [A | I] and parity map A^T, seeded.

    Row-regular Gallager-style construction: every check involves
    _LDPC_ROW_WEIGHT distinct message bits plus its own parity bit, and all
    check supports are distinct, so no parity bit is constant or duplicated
    and the matrix is full rank by the identity block.
    """
    m = n_code_bits - n_msg_bits
    w = min(_LDPC_ROW_WEIGHT, n_msg_bits)
    if math.comb(n_msg_bits, w) < m:
        raise ValueError("code rate too low for distinct parity checks")
    rng = as_rng(np.random.SeedSequence((construction_seed, n_code_bits, n_msg_bits)))
    a = np.zeros((m, n_msg_bits), dtype=np.uint8)
    seen, r = set(), 0
    while r < m:
        support = tuple(sorted(rng.choice(n_msg_bits, size=w, replace=False).tolist()))
        if support in seen:
            continue
        seen.add(support)
        a[r, support] = 1
        r += 1
    h_sys = np.concatenate([a, np.eye(m, dtype=np.uint8)], axis=1)
    return h_sys, np.ascontiguousarray(a.T)


def parity_check_matrix(config: CodeConfig) -> np.ndarray:
    """The [A | I] parity-check matrix the systematic ldpc encoder satisfies."""
    if config.kind != "ldpc":
        raise ValueError("config is not an ldpc code")
    return _ldpc_tables(config.n_code_bits, config.n_msg_bits, config.construction_seed)[0].copy()


def encode_ldpc(msg: np.ndarray, config: CodeConfig) -> np.ndarray:
    """Systematic codeword [msg | parity] with H @ c = 0."""
    if config.kind != "ldpc":
        raise ValueError("config is not an ldpc code")
    msg = np.asarray(msg, dtype=np.uint8)
    if msg.shape[-1] != config.n_msg_bits:
        raise ValueError("message length mismatch")
    _, parity_map = _ldpc_tables(config.n_code_bits, config.n_msg_bits, config.construction_seed)
    return np.concatenate([msg, gf2_matmul(msg, parity_map)], axis=-1)


# ---------------------------------------------------------------------------
# dispatch

def encode(msg: np.ndarray, config: CodeConfig) -> np.ndarray:
    """Systematic encoding for any configured code; batch shape (..., n_msg_bits)."""
    msg = np.asarray(msg, dtype=np.uint8)
    if msg.shape[-1] != config.n_msg_bits:
        raise ValueError("message length mismatch")
    if config.kind == "uncoded":
        return msg.copy()
    if config.kind == "repetition":
        return encode_repetition(msg, config.gamma)
    if config.kind == "polar":
        return _encode_polar_systematic(msg, config)
    return encode_ldpc(msg, config)


def interleave_codeword(codeword: np.ndarray, config: CodeConfig) -> np.ndarray:
    """Apply the configured parity interleaver (identity when disabled)."""
    if not config.interleave:
        return codeword
    perm = make_interleaver(config.n_code_bits, config.n_msg_bits, config.interleaver_seed)
    return perm.apply(codeword)
