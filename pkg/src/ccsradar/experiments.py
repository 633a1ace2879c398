"""Experiment drivers: sidelobe sweeps, bound checks and the near-far study.

Each driver takes an ExperimentConfig and returns ResultTables built from
seeded substreams, so reruns with the same config and seed reproduce every
data row byte for byte.  Trials draw a fresh message and a fresh parity
interleaver per block; near-far trials additionally redraw the per-frame
interleaver of each radar.  Substreams are keyed by (domain, combo indices,
trial), which makes the merge order irrelevant.
"""

from __future__ import annotations

import time
from pathlib import Path

import numpy as np

from ._rng import substream
from .bounds import (TailBoundSpec, autocorr_tail_lb, autocorr_tail_ub,
                     crosscorr_tail_ub, empirical_tail, median_pslr_from_bound,
                     median_suppression_from_bound, ofdm_tail_ub)
from .coding import CodeConfig, encode, interleave_codeword
from .config import ExperimentConfig, ResultTable, result_meta
from .correlation import autocorr, crosscorr, idft_ratio, pslr, suppression_metric
from .detection import RocCurves, summarize_map, threshold_sweep
from .modulation import (constellation, generate_ccs_blocks, map_bits,
                         product_bound_b, ratio_bound_b)
from .receiver import fmcw_range_doppler, mf_bank, ofdm_range_doppler, sc_range_doppler
from .scene import FmcwParams, apply_channel_ofdm, apply_channel_sc, synth_frame, write_frame_bin

# substream domains, one per independent randomness consumer
_D_PSLR, _D_SUPP, _D_INTL, _D_BND, _D_NF_MSG, _D_NF_PERM, _D_NF_NOISE = range(7)

_CHUNK = 256
# Parity-check construction cost grows cubically with the codeword length;
# beyond this cap the sweep gains nothing at desk scale.
LDPC_N_CAP = 1024

NEARFAR_VARIANTS = ("ccs_sc", "ccs_sc_nointf", "ccs_ofdm", "ccs_ofdm_nointf", "fmcw")


def _symbol_batch(cfg: CodeConfig, const, n_blocks: int, rng,
                  interleaved: bool = True) -> np.ndarray:
    """(n_blocks, N) symbol matrix with a fresh message and parity permutation per row."""
    msgs = rng.integers(0, 2, size=(n_blocks, cfg.n_msg_bits), dtype=np.uint8)
    cw = encode(msgs, cfg)
    k = cfg.n_msg_bits
    if interleaved and cfg.n_code_bits > k:
        tail = cw[:, k:]
        order = rng.random(tail.shape).argsort(axis=1)
        cw = np.concatenate([cw[:, :k], np.take_along_axis(tail, order, axis=1)], axis=1)
    return map_bits(cw, const)


def _curve_combos(config: ExperimentConfig):
    """(ci, ri, code, rate_num, rate_den, modulation) per plotted curve.

    Uncoded curves collapse to one entry per modulation since the rate is
    immaterial for them.
    """
    out, seen_uncoded = [], set()
    for ci, code in enumerate(config.codes):
        for ri, (num, den, mod) in enumerate(config.rates):
            if code == "uncoded":
                if mod in seen_uncoded:
                    continue
                seen_uncoded.add(mod)
                out.append((ci, ri, code, 1.0, 1, mod))
            else:
                out.append((ci, ri, code, num, den, mod))
    return out


def _rate_label(num: float, den: int) -> str:
    return f"{num:g}/{den}"


def _k_symbols(cfg: CodeConfig, const) -> float:
    return cfg.n_msg_bits / const.bits_per_symbol


def _skip(code: str, n: int) -> bool:
    return code == "ldpc" and n > LDPC_N_CAP


# ---------------------------------------------------------------------------
# sidelobe sweeps

def run_pslr_sweep(config: ExperimentConfig) -> ResultTable:
    """Median windowed PSLR per (code, rate, N) plus the bound-implied median."""
    t0 = time.perf_counter()
    seed = config.require_seed()
    trials = config.resolved_trials()
    window = config.sidelobe_window
    rows = []
    for ci, ri, code, num, den, mod in _curve_combos(config):
        const = constellation(mod)
        for ni, n in enumerate(config.n_list):
            if _skip(code, n):
                continue
            cfg = config.code_config(code, num, den, n, mod)
            rng = substream(seed, _D_PSLR, ci, ri, ni)
            vals = []
            for start in range(0, trials, _CHUNK):
                m = min(_CHUNK, trials - start)
                syms = _symbol_batch(cfg, const, m, rng)
                vals.append(pslr(autocorr(syms), max_lag=window))
            vals = np.concatenate(vals)
            spec = TailBoundSpec(N=n, lag=1, b=product_bound_b(const),
                                 K=_k_symbols(cfg, const))
            rows.append((code, _rate_label(num, den), mod, n, trials,
                         float(np.median(vals)),
                         float(np.percentile(vals, 25)),
                         float(np.percentile(vals, 75)),
                         median_pslr_from_bound(spec)))
    cols = ("code", "rate", "modulation", "n", "trials", "median_pslr_db",
            "p25_db", "p75_db", "bound_median_db")
    return ResultTable(cols, rows, result_meta(config, time.perf_counter() - t0))


def run_suppression_sweep(config: ExperimentConfig) -> ResultTable:
    """Median windowed suppression of an independent interferer, per statistic.

    sc_cross is the aperiodic cross-correlation peak between the two signals;
    ofdm_kernel is the peak of the inverse-DFT ratio kernel.  Both windows
    cover |l| <= sidelobe_window including the zero lag.
    """
    t0 = time.perf_counter()
    seed = config.require_seed()
    trials = config.resolved_trials()
    window = config.sidelobe_window
    rows = []
    for ci, ri, code, num, den, mod in _curve_combos(config):
        const = constellation(mod)
        for ni, n in enumerate(config.n_list):
            if _skip(code, n):
                continue
            cfg = config.code_config(code, num, den, n, mod)
            rng_i = substream(seed, _D_SUPP, ci, ri, ni, 0)
            rng_q = substream(seed, _D_SUPP, ci, ri, ni, 1)
            vals_cross, vals_ofdm = [], []
            for start in range(0, trials, _CHUNK):
                m = min(_CHUNK, trials - start)
                s_i = _symbol_batch(cfg, const, m, rng_i)
                s_q = _symbol_batch(cfg, const, m, rng_q)
                vals_cross.append(suppression_metric(crosscorr(s_q, s_i), max_lag=window))
                vals_ofdm.append(suppression_metric(idft_ratio(s_i, s_q), max_lag=window))
            k_sym = _k_symbols(cfg, const)
            spec_cross = TailBoundSpec(N=n, lag=0, b=product_bound_b(const),
                                       K_i=k_sym, K_q=k_sym)
            spec_ofdm = TailBoundSpec(N=n, lag=0, b=ratio_bound_b(const, const),
                                      K_i=k_sym, K_q=k_sym)
            for metric, vals, spec, kind in (
                    ("sc_cross", vals_cross, spec_cross, "cross"),
                    ("ofdm_kernel", vals_ofdm, spec_ofdm, "ofdm")):
                rows.append((code, _rate_label(num, den), mod, n, trials, metric,
                             float(np.median(np.concatenate(vals))),
                             median_suppression_from_bound(spec, kind)))
    cols = ("code", "rate", "modulation", "n", "trials", "metric",
            "median_db", "bound_median_db")
    return ResultTable(cols, rows, result_meta(config, time.perf_counter() - t0))


def run_interleaver_study(config: ExperimentConfig) -> ResultTable:
    """Median PSLR with and without the parity interleaver, vs the uncoded
    reference at the same modulation."""
    t0 = time.perf_counter()
    seed = config.require_seed()
    trials = config.resolved_trials()
    window = config.sidelobe_window
    rows = []

    def median_pslr(cfg, const, ci, ri, ni, interleaved):
        rng = substream(seed, _D_INTL, ci, ri, ni, int(interleaved))
        vals = []
        for start in range(0, trials, _CHUNK):
            m = min(_CHUNK, trials - start)
            syms = _symbol_batch(cfg, const, m, rng, interleaved=interleaved)
            vals.append(pslr(autocorr(syms), max_lag=window))
        return float(np.median(np.concatenate(vals)))

    for ci, ri, code, num, den, mod in _curve_combos(config):
        const = constellation(mod)
        flags = (True,) if code == "uncoded" else (True, False)
        for ni, n in enumerate(config.n_list):
            if _skip(code, n):
                continue
            cfg = config.code_config(code, num, den, n, mod)
            for flag in flags:
                rows.append((code, _rate_label(num, den), mod, n, int(flag), trials,
                             median_pslr(cfg, const, ci, ri, ni, flag)))
    cols = ("code", "rate", "modulation", "n", "interleaved", "trials",
            "median_pslr_db")
    return ResultTable(cols, rows, result_meta(config, time.perf_counter() - t0))


# ---------------------------------------------------------------------------
# tail bounds

def _bound_statistics(cfg: CodeConfig, const, n: int, trials: int, seed: int,
                      key: tuple) -> dict:
    """10^4-scale samples of chi(1), rho(0) and V[1] for one signal family."""
    chi, rho, v1 = [], [], []
    kernel = np.exp(2j * np.pi * np.arange(n) / n)
    for ci, start in enumerate(range(0, trials, _CHUNK)):
        m = min(_CHUNK, trials - start)
        s = _symbol_batch(cfg, const, m, substream(seed, *key, 0, ci))
        s_i = _symbol_batch(cfg, const, m, substream(seed, *key, 1, ci))
        s_q = _symbol_batch(cfg, const, m, substream(seed, *key, 2, ci))
        chi.append(np.einsum("tn,tn->t", s[:, 1:], np.conj(s[:, :-1])) / n)
        rho.append(np.einsum("tn,tn->t", s_q, np.conj(s_i)) / n)
        v1.append((s_q / s_i) @ kernel / n)
    return {"chi1": np.concatenate(chi), "rho0": np.concatenate(rho),
            "v1": np.concatenate(v1)}


def _lb_witness_rows(u: float = 0.01) -> list:
    """Exhaustive all-message enumeration of the short repetition code.

    The all-zero message makes every symbol identical, so |Re chi(l)| reaches
    (N - l)/N with probability at least 2^-K; enumeration gives the exact tail.
    """
    cfg = CodeConfig("repetition", 8, 4, interleave=False)
    const = constellation("bpsk")
    msgs = ((np.arange(16)[:, None] >> np.arange(3, -1, -1)) & 1).astype(np.uint8)
    syms = map_bits(encode(msgs, cfg), const)
    spec = TailBoundSpec(N=8, lag=1, K=4, m_s=1)
    rows = []
    for lag in (1, 2):
        chi = np.einsum("tn,tn->t", syms[:, lag:], np.conj(syms[:, :8 - lag])) / 8
        p_hat = float(np.mean(np.abs(chi.real) > u))
        lb = autocorr_tail_lb(spec)
        rows.append((f"chi_lb_l{lag}", "re", "repetition", "1/2", "bpsk", 8, 16,
                     u, p_hat, p_hat, p_hat, lb, "lb", int(p_hat >= lb)))
    return rows


def run_tail_bound_check(config: ExperimentConfig) -> ResultTable:
    """Empirical tails vs analytic bounds on a u grid, plus the enumeration
    witness for the lower bound.

    dominated means the 3-sigma Wilson lower limit stays below the upper bound
    (side ub) or the exact tail stays above the lower bound (side lb).
    """
    t0 = time.perf_counter()
    seed = config.require_seed()
    trials = config.resolved_trials()
    num, den, mod = config.rates[0]
    const = constellation(mod)
    u = config.u_grid()
    rows = []
    for ki, kind in enumerate(("uncoded", "polar")):
        for ni, n in enumerate(config.bounds_n_list):
            cfg = config.code_config(kind, num, den, n, mod)
            stats = _bound_statistics(cfg, const, n, trials, seed, (_D_BND, ki, ni))
            k_sym = _k_symbols(cfg, const)
            b_prod, b_ratio = product_bound_b(const), ratio_bound_b(const, const)
            spec_auto = TailBoundSpec(N=n, lag=1, b=b_prod, K=k_sym,
                                      m_s=const.bits_per_symbol)
            spec_cross = TailBoundSpec(N=n, lag=0, b=b_prod, K_i=k_sym, K_q=k_sym)
            spec_ofdm = TailBoundSpec(N=n, lag=0, b=b_ratio, K_i=k_sym, K_q=k_sym)
            per_stat = (("chi1", autocorr_tail_ub(spec_auto, u)),
                        ("rho0", crosscorr_tail_ub(spec_cross, u)),
                        ("v1", ofdm_tail_ub(spec_ofdm, u)))
            rate = _rate_label(1.0, 1) if kind == "uncoded" else _rate_label(num, den)
            for stat, ub in per_stat:
                for part, samples in (("re", stats[stat].real), ("im", stats[stat].imag)):
                    tail = empirical_tail(samples, u, z=3.0)
                    for g in range(u.size):
                        rows.append((stat, part, kind, rate, mod, n, trials,
                                     float(u[g]), float(tail.p[g]), float(tail.lo[g]),
                                     float(tail.hi[g]), float(ub[g]), "ub",
                                     int(tail.lo[g] <= ub[g] + 1e-15)))
    rows.extend(_lb_witness_rows())
    cols = ("stat", "part", "code", "rate", "modulation", "n", "trials", "u",
            "p_hat", "wilson_lo", "wilson_hi", "bound", "bound_side", "dominated")
    return ResultTable(cols, rows, result_meta(config, time.perf_counter() - t0))


# ---------------------------------------------------------------------------
# near-far study

def _nearfar_code_kind(config: ExperimentConfig) -> str:
    coded = [c for c in config.codes if c != "uncoded"]
    if "polar" in coded:
        return "polar"
    return coded[0] if coded else "uncoded"


def run_near_far(config: ExperimentConfig, dump_dir=None):
    """Monte Carlo of the two-target scene with one interfering radar.

    Five map variants per trial: c.c.s single-carrier and OFDM each with and
    without the interferer, plus an interference-free FMCW reference.  Returns
    (summary ResultTable, RocCurves, per-variant TrialLevels lists); when
    dump_dir is set the trial-0 maps and transmit frames are written there.
    """
    t0 = time.perf_counter()
    seed = config.require_seed()
    trials = config.resolved_trials()
    n, m_slow = config.n_fast, config.m_slow
    num, den, mod = config.rates[0]
    kind = _nearfar_code_kind(config)
    const = constellation(mod)
    scene_i = config.scene(with_interference=True)
    scene_n = config.scene(with_interference=False)
    tbins = config.target_bins()
    params = FmcwParams(n_fast=n, n_chirps=m_slow)
    fmcw_frame = synth_frame(params, "fmcw")
    levels = {v: [] for v in NEARFAR_VARIANTS}
    for t in range(trials):
        iseeds = [int(substream(seed, _D_NF_PERM, t, j).integers(2 ** 62)) for j in (0, 1)]
        cfgs = [config.code_config(kind, num, den, n, mod, interleaver_seed=s)
                for s in iseeds]
        s1 = generate_ccs_blocks(n, cfgs[0], const, m_slow, substream(seed, _D_NF_MSG, t, 0))
        s2 = generate_ccs_blocks(n, cfgs[1], const, m_slow, substream(seed, _D_NF_MSG, t, 1))
        y = apply_channel_sc([s1, s2], scene_i, substream(seed, _D_NF_NOISE, t, 0))
        maps = {"ccs_sc": sc_range_doppler(mf_bank(y, s1, config.n_max))}
        y = apply_channel_sc([s1], scene_n, substream(seed, _D_NF_NOISE, t, 1))
        maps["ccs_sc_nointf"] = sc_range_doppler(mf_bank(y, s1, config.n_max))
        yf = apply_channel_ofdm([s1, s2], scene_i, substream(seed, _D_NF_NOISE, t, 2))
        maps["ccs_ofdm"] = ofdm_range_doppler(yf, s1, config.n_max)
        yf = apply_channel_ofdm([s1], scene_n, substream(seed, _D_NF_NOISE, t, 3))
        maps["ccs_ofdm_nointf"] = ofdm_range_doppler(yf, s1, config.n_max)
        y = apply_channel_sc([fmcw_frame], scene_n, substream(seed, _D_NF_NOISE, t, 4))
        maps["fmcw"] = fmcw_range_doppler(y, params, config.n_max)
        for v in NEARFAR_VARIANTS:
            levels[v].append(summarize_map(maps[v], tbins))
        if t == 0 and dump_dir is not None:
            out = Path(dump_dir)
            for v in NEARFAR_VARIANTS:
                maps[v].export_csv(out / f"map_{v}.csv")
                maps[v].export_binary(out / f"map_{v}.bin")
            write_frame_bin(out / "frame_ccs_sc.bin", s1)
            write_frame_bin(out / "frame_fmcw.bin", fmcw_frame)
    roc = threshold_sweep(levels, points=config.eta_points)
    rows = []
    for v in NEARFAR_VARIANTS:
        near = np.array([tl.target_levels[0] for tl in levels[v]])
        far = np.array([tl.target_levels[1] for tl in levels[v]])
        other = np.array([tl.max_other for tl in levels[v]])
        lo, hi, pts = _sweet_band(roc, v)
        rows.append((v, trials, float(near.mean()), float(near.min()),
                     float(far.mean()), float(far.min()), float(far.max()),
                     float(other.mean()), float(other.max()), lo, hi, pts))
    cols = ("variant", "trials", "near_mean", "near_min", "far_mean", "far_min",
            "far_max", "max_other_mean", "max_other_max", "band_lo", "band_hi",
            "band_points")
    table = ResultTable(cols, rows, result_meta(config, time.perf_counter() - t0))
    return table, roc, levels


def _sweet_band(roc: RocCurves, variant: str) -> tuple[float, float, int]:
    """Threshold band with every target detected and no false alarm."""
    mask = (roc.pd[variant] >= 1.0) & (roc.pf[variant] <= 0.0)
    if not np.any(mask):
        return float("nan"), float("nan"), 0
    eta = roc.eta[mask]
    return float(eta.min()), float(eta.max()), int(mask.sum())


# ---------------------------------------------------------------------------
# property checks (CLI --check)

def _curve_meds(table: ResultTable, **conds) -> list[tuple[int, float]]:
    rows = table.select(**conds)
    n_i = table.columns.index("n")
    v_i = table.columns.index("median_pslr_db" if "median_pslr_db" in table.columns
                              else "median_db")
    return sorted((r[n_i], r[v_i]) for r in rows)


def _avg_slope(meds: list[tuple[int, float]]) -> float:
    (n0, v0), (n1, v1) = meds[0], meds[-1]
    return (v1 - v0) / np.log2(n1 / n0)


def check_pslr(table: ResultTable, config: ExperimentConfig) -> list:
    checks = []
    ref = _curve_meds(table, code="uncoded", modulation="qpsk")
    ref_1024 = dict(ref).get(1024)
    if ref_1024 is not None:
        checks.append(("uncoded_qpsk_median_n1024", 23.0 <= ref_1024 <= 27.0,
                       f"{ref_1024:.2f} dB (want 25 +- 2)"))
    for ci, ri, code, num, den, mod in _curve_combos(config):
        meds = _curve_meds(table, code=code, rate=_rate_label(num, den), modulation=mod)
        if len(meds) < 2:
            continue
        slope = _avg_slope(meds)
        checks.append((f"slope_{code}_{mod}", 2.5 <= slope <= 3.5,
                       f"{slope:.2f} dB per doubling (want [2.5, 3.5])"))
    for num, den, mod in config.rates:
        if "polar" not in config.codes or "ldpc" not in config.codes:
            break
        label = _rate_label(num, den)
        pol = dict(_curve_meds(table, code="polar", rate=label, modulation=mod))
        ldp = dict(_curve_meds(table, code="ldpc", rate=label, modulation=mod))
        gaps = [abs(pol[n] - ldp[n]) for n in sorted(set(pol) & set(ldp))]
        if gaps:
            checks.append((f"polar_ldpc_gap_{mod}", max(gaps) < 0.5,
                           f"max {max(gaps):.3f} dB (want < 0.5)"))
    return checks


def check_suppression(table: ResultTable, config: ExperimentConfig) -> list:
    checks = []
    for ci, ri, code, num, den, mod in _curve_combos(config):
        for metric in ("sc_cross", "ofdm_kernel"):
            meds = _curve_meds(table, code=code, rate=_rate_label(num, den),
                               modulation=mod, metric=metric)
            if len(meds) < 2:
                continue
            slope = _avg_slope(meds)
            checks.append((f"slope_{metric}_{code}_{mod}", 2.5 <= slope <= 3.5,
                           f"{slope:.2f} dB per doubling (want [2.5, 3.5])"))
    sc = dict(_curve_meds(table, code="uncoded", modulation="qpsk", metric="sc_cross"))
    of = dict(_curve_meds(table, code="uncoded", modulation="qpsk", metric="ofdm_kernel"))
    gaps = [abs(sc[n] - of[n]) for n in sorted(set(sc) & set(of))]
    if gaps:
        checks.append(("sc_vs_ofdm_qpsk", max(gaps) <= 1.0,
                       f"max {max(gaps):.3f} dB (want <= 1.0)"))
    return checks


def check_interleaver(table: ResultTable, config: ExperimentConfig) -> list:
    checks = []
    low = min(config.rates, key=lambda r: r[0] / r[1])
    high = max(config.rates, key=lambda r: r[0] / r[1])
    for code in config.codes:
        if code == "uncoded":
            continue
        num, den, mod = low
        ref = dict(_curve_meds(table, code="uncoded", modulation=mod))
        inter = dict(_curve_meds(table, code=code, rate=_rate_label(num, den),
                                 modulation=mod, interleaved=1))
        plain = dict(_curve_meds(table, code=code, rate=_rate_label(num, den),
                                 modulation=mod, interleaved=0))
        gaps = [abs(inter[n] - ref[n]) for n in sorted(set(inter) & set(ref))]
        if gaps:
            checks.append((f"interleaved_matches_uncoded_{code}", max(gaps) <= 0.5,
                           f"max {max(gaps):.3f} dB (want <= 0.5)"))
        n0 = min(config.n_list)
        if n0 in plain and n0 in inter:
            checks.append((f"plain_below_interleaved_{code}", plain[n0] < inter[n0],
                           f"{plain[n0]:.2f} < {inter[n0]:.2f} dB at N={n0}"))
        num, den, mod = high
        ref = dict(_curve_meds(table, code="uncoded", modulation=mod))
        plain = dict(_curve_meds(table, code=code, rate=_rate_label(num, den),
                                 modulation=mod, interleaved=0))
        gaps = [abs(plain[n] - ref[n]) for n in sorted(set(plain) & set(ref))]
        if gaps:
            checks.append((f"high_rate_plain_near_uncoded_{code}", max(gaps) <= 1.0,
                           f"max {max(gaps):.3f} dB (want <= 1.0)"))
    return checks


def check_bounds(table: ResultTable, config: ExperimentConfig) -> list:
    dom = table.column("dominated")
    side = table.column("bound_side")
    n_ub = sum(1 for d, s in zip(dom, side) if s == "ub" and d)
    n_ub_all = sum(1 for s in side if s == "ub")
    n_lb = sum(1 for d, s in zip(dom, side) if s == "lb" and d)
    n_lb_all = sum(1 for s in side if s == "lb")
    return [("upper_bounds_dominate", n_ub == n_ub_all, f"{n_ub}/{n_ub_all} grid points"),
            ("lower_bound_witness", n_lb == n_lb_all, f"{n_lb}/{n_lb_all} enumerations")]


def check_nearfar(table: ResultTable, roc: RocCurves,
                  config: ExperimentConfig) -> list:
    checks = []
    far_ref = config.gains()[1]
    lo_db, hi_db = far_ref * 10 ** (-3 / 20), far_ref * 10 ** (3 / 20)
    sel = {r[0]: r for r in table.rows}
    cols = table.columns
    for v in ("ccs_sc", "ccs_sc_nointf", "ccs_ofdm", "ccs_ofdm_nointf"):
        fmin = sel[v][cols.index("far_min")]
        fmax = sel[v][cols.index("far_max")]
        checks.append((f"far_peak_within_3db_{v}", lo_db <= fmin and fmax <= hi_db,
                       f"[{fmin:.4f}, {fmax:.4f}] vs [{lo_db:.4f}, {hi_db:.4f}]"))
    for v in ("ccs_sc", "ccs_ofdm"):
        pts = sel[v][cols.index("band_points")]
        checks.append((f"sweet_band_nonempty_{v}", pts > 0, f"{pts} grid points"))
    excess = np.any(roc.pf["fmcw"] > roc.pf["ccs_sc_nointf"])
    checks.append(("fmcw_false_alarm_excess", bool(excess),
                   "fmcw exceeds interference-free sc somewhere on the grid"))
    gap_sc_ofdm = float(np.max(np.abs(roc.pd["ccs_sc"] - roc.pd["ccs_ofdm"])))
    checks.append(("sc_vs_ofdm_pd", gap_sc_ofdm <= 0.05,
                   f"max gap {gap_sc_ofdm:.3f} (want <= 0.05)"))
    for v in ("ccs_sc", "ccs_ofdm"):
        gap = float(np.max(np.abs(roc.pd[v] - roc.pd["fmcw"])))
        checks.append((f"{v}_matches_fmcw_pd", gap <= 0.05,
                       f"max grid gap {gap:.3f} (want <= 0.05)"))
    return checks
