"""Config loading, result tables, physical bookkeeping and the CLI."""

import math
import re

import numpy as np
import pytest

from ccsradar import cli, experiments
from ccsradar.config import (ConfigError, ExperimentConfig, ResultTable,
                             doppler_bin_for_speed, load_config,
                             range_bin_for_distance, result_meta)


# -- INI loading --------------------------------------------------------------

GOOD_INI = """\
[experiment]
kind = pslr
seed = 42
trials = 50
out_dir = results

[signal]
n_list = 64, 128
codes = uncoded, polar
rates = 120/1024:qpsk
sidelobe_window = 16

[scene]
snr_db = 3.0
near_range_bin = 5

[bounds]
u_points = 7
n_list = 128
"""


def test_load_config_reads_all_sections(tmp_path):
    path = tmp_path / "exp.ini"
    path.write_text(GOOD_INI, encoding="utf-8")
    cfg = load_config(path)
    assert cfg.kind == "pslr"
    assert cfg.seed == 42 and cfg.trials == 50
    assert cfg.out_dir == "results"
    assert cfg.n_list == (64, 128)
    assert cfg.codes == ("uncoded", "polar")
    assert cfg.rates == ((120.0, 1024, "qpsk"),)
    assert cfg.sidelobe_window == 16
    assert cfg.snr_db == 3.0 and cfg.near_range_bin == 5
    assert cfg.u_points == 7
    assert cfg.bounds_n_list == (128,)
    # untouched keys keep their defaults
    assert cfg.m_slow == 1024 and cfg.sir_db == -11.0


def test_load_config_inline_comments(tmp_path):
    path = tmp_path / "exp.ini"
    path.write_text("[experiment]\nseed = 3  # master seed\n", encoding="utf-8")
    assert load_config(path).seed == 3


def test_load_config_unknown_key(tmp_path):
    path = tmp_path / "exp.ini"
    path.write_text("[scene]\ntypo_key = 1\n", encoding="utf-8")
    with pytest.raises(ConfigError, match=r"\[scene\] typo_key"):
        load_config(path)


def test_load_config_bad_value(tmp_path):
    path = tmp_path / "exp.ini"
    path.write_text("[signal]\nn_fast = twelve\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="bad value"):
        load_config(path)


def test_load_config_bad_rate_spec(tmp_path):
    path = tmp_path / "exp.ini"
    path.write_text("[signal]\nrates = 120:qpsk\n", encoding="utf-8")
    with pytest.raises(ConfigError, match=r"\[signal\] rates"):
        load_config(path)


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "nope.ini")


def test_load_config_malformed(tmp_path):
    path = tmp_path / "exp.ini"
    path.write_text("seed = 3\n", encoding="utf-8")  # key before any section
    with pytest.raises(ConfigError, match="cannot parse"):
        load_config(path)


# -- derived config pieces ----------------------------------------------------

def test_seed_and_trial_defaults():
    cfg = ExperimentConfig()
    with pytest.raises(ConfigError, match="seed is mandatory"):
        cfg.require_seed()
    assert ExperimentConfig(seed=9).require_seed() == 9
    for kind, want in (("pslr", 1000), ("suppress", 1000), ("interleave", 1000),
                       ("bounds", 10000), ("nearfar", 100)):
        assert ExperimentConfig(kind=kind).resolved_trials() == want
    assert ExperimentConfig(kind="pslr", trials=7).resolved_trials() == 7
    assert ExperimentConfig(kind="???").resolved_trials() == 100


def test_gains_and_noise():
    cfg = ExperimentConfig()
    near, far, direct = cfg.gains()
    assert near == 1.0
    assert far == pytest.approx(10 ** (-12 / 20))
    assert direct == pytest.approx(10 ** (11 / 20))
    assert cfg.noise_var() == pytest.approx(1.0)
    assert ExperimentConfig(snr_db=10.0).noise_var() == pytest.approx(0.1)


def test_scene_assembly():
    cfg = ExperimentConfig()
    sc = cfg.scene()
    assert [(p.range_bin, p.doppler_bin) for p in sc.targets] == [(14, 516), (27, 518)]
    assert len(sc.interference) == 1 and len(sc.interference[0]) == 1
    assert sc.interference[0][0].gain == pytest.approx(10 ** (11 / 20))
    assert sc.noise_var == pytest.approx(1.0)
    quiet = cfg.scene(with_interference=False)
    assert quiet.interference == ()
    assert cfg.target_bins() == ((14, 516), (27, 518))


def test_code_config_construction():
    cfg = ExperimentConfig()
    un = cfg.code_config("uncoded", 1.0, 1, 256, "qpsk")
    assert (un.kind, un.n_code_bits, un.n_msg_bits, un.interleave) == \
        ("uncoded", 512, 512, False)
    pol = cfg.code_config("polar", 120.0, 1024, 1024, "qpsk")
    assert (pol.n_code_bits, pol.n_msg_bits) == (2048, 240)
    qam = cfg.code_config("ldpc", 682.5, 1024, 256, "256qam")
    assert (qam.n_code_bits, qam.n_msg_bits) == (2048, 1365)


def test_code_config_fractional_bits():
    # 682.5/1024 at N = 256 QPSK symbols asks for 341.25 message bits
    with pytest.raises(ConfigError, match="fractional bit count"):
        ExperimentConfig().code_config("polar", 682.5, 1024, 256, "qpsk")


def test_u_grid():
    grid = ExperimentConfig(u_min=0.1, u_max=0.2, u_points=3).u_grid()
    assert np.allclose(grid, [0.1, 0.15, 0.2])
    with pytest.raises(ConfigError, match="bad u grid"):
        ExperimentConfig(u_min=0.0).u_grid()
    with pytest.raises(ConfigError, match="bad u grid"):
        ExperimentConfig(u_min=0.3, u_max=0.2).u_grid()


def test_canonical_text_and_hash():
    cfg = ExperimentConfig(kind="pslr", seed=1)
    text = cfg.canonical_text()
    names = [line.split(" = ")[0] for line in text.strip().splitlines()]
    assert names == sorted(names) and "seed = 1" in text
    h = cfg.config_hash()
    assert re.fullmatch(r"[0-9a-f]{12}", h)
    assert h == ExperimentConfig(kind="pslr", seed=1).config_hash()
    assert h != ExperimentConfig(kind="pslr", seed=2).config_hash()
    assert h != ExperimentConfig(kind="pslr", seed=1, n_fast=512).config_hash()


# -- result tables ------------------------------------------------------------

def test_result_table_csv(tmp_path):
    table = ResultTable(columns=("name", "n", "val"),
                        rows=[("a", 8, 0.5), ("b", 16, 0.25)],
                        meta={"seed": 3, "config_hash": "abc"})
    path = tmp_path / "t.csv"
    table.write_csv(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# config_hash: abc"   # meta keys sorted
    assert lines[1] == "# seed: 3"
    assert lines[2] == "name,n,val"
    assert lines[3] == "a,8,0.5"
    assert table.column("n") == [8, 16]
    assert table.select(name="b") == [("b", 16, 0.25)]


def test_result_meta_keys():
    cfg = ExperimentConfig(kind="bounds", seed=5)
    meta = result_meta(cfg)
    assert meta["seed"] == 5 and meta["kind"] == "bounds"
    assert meta["config_hash"] == cfg.config_hash()
    assert meta["version"].startswith("ccsradar-v")
    assert "wall_time_s" not in meta
    assert result_meta(cfg, wall_time_s=1.25)["wall_time_s"] == "1.250"


# -- physical bookkeeping helpers ----------------------------------------------

def test_range_bins_for_desk_distances():
    b = 1.0e9  # 0.15 m per bin
    assert range_bin_for_distance(2.05, b) == 14
    assert range_bin_for_distance(4.0, b) == 27
    assert range_bin_for_distance(4.3, b) == 29
    assert range_bin_for_distance(0.15, b) == 1


def test_doppler_bins_for_desk_speeds():
    cfg = ExperimentConfig()
    args = (cfg.carrier_hz, cfg.m_slow, cfg.n_fast, cfg.bandwidth_hz)
    lam = 3.0e8 / cfg.carrier_hz
    step = lam * cfg.bandwidth_hz / (2 * cfg.m_slow * cfg.n_fast)
    assert step == pytest.approx(1.0219, abs=2e-4)  # m/s, about 2.29 mph
    assert doppler_bin_for_speed(0.0, *args) == 512
    assert doppler_bin_for_speed(4.2, *args) == 516
    assert doppler_bin_for_speed(6.3, *args) == 518
    # closing speeds quoted in mph land on the same bins
    assert doppler_bin_for_speed(10 * 0.44704, *args) == 516
    assert doppler_bin_for_speed(15 * 0.44704, *args) == 518


def test_default_bins_match_desk_geometry():
    cfg = ExperimentConfig()
    assert range_bin_for_distance(2.05, cfg.bandwidth_hz) == cfg.near_range_bin
    assert range_bin_for_distance(4.0, cfg.bandwidth_hz) == cfg.far_range_bin
    assert range_bin_for_distance(4.3, cfg.bandwidth_hz) == cfg.intf_range_bin


# -- CLI ----------------------------------------------------------------------

SMALL_PSLR_INI = """\
[experiment]
trials = 16

[signal]
n_list = 64, 128
codes = uncoded
rates = 1/1:qpsk
sidelobe_window = 16
"""


def _write(tmp_path, text, name="exp.ini"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_parser_shape():
    parser = cli.build_parser()
    assert parser.prog == "ccsradar"
    for cmd in ("pslr", "suppress", "interleave", "bounds", "nearfar"):
        args = parser.parse_args([cmd, "--seed", "0"])
        assert args.command == cmd and args.seed == 0


def test_cli_requires_seed(tmp_path, capsys):
    cfg = _write(tmp_path, SMALL_PSLR_INI)
    rc = cli.main(["pslr", "--config", str(cfg), "--out", str(tmp_path / "o")])
    assert rc == 2
    assert "config error" in capsys.readouterr().err


def test_cli_rejects_bad_config(tmp_path, capsys):
    cfg = _write(tmp_path, "[scene]\nbogus = 1\n")
    rc = cli.main(["pslr", "--config", str(cfg), "--seed", "0"])
    assert rc == 2
    assert "bogus" in capsys.readouterr().err


def test_cli_rejects_missing_config(tmp_path, capsys):
    rc = cli.main(["pslr", "--config", str(tmp_path / "nope.ini"), "--seed", "0"])
    assert rc == 2
    capsys.readouterr()


def test_cli_rejects_nonpositive_trials(tmp_path, capsys):
    cfg = _write(tmp_path, SMALL_PSLR_INI)
    rc = cli.main(["pslr", "--config", str(cfg), "--seed", "0", "--trials", "0",
                   "--out", str(tmp_path / "o")])
    assert rc == 2
    assert "trials" in capsys.readouterr().err


def test_cli_pslr_run_writes_csv(tmp_path, capsys):
    cfg = _write(tmp_path, SMALL_PSLR_INI)
    out = tmp_path / "out"
    rc = cli.main(["pslr", "--config", str(cfg), "--seed", "11",
                   "--out", str(out)])
    assert rc == 0
    assert "wrote" in capsys.readouterr().out
    lines = (out / "pslr_sweep.csv").read_text(encoding="utf-8").splitlines()
    meta = [l for l in lines if l.startswith("#")]
    assert any(l.startswith("# config_hash:") for l in meta)
    assert any(l == "# seed: 11" for l in meta)
    header = [l for l in lines if not l.startswith("#")][0]
    assert header.startswith("code,rate,modulation,n,trials,median_pslr_db")
    data = [l for l in lines if not l.startswith("#")][1:]
    assert len(data) == 2  # uncoded qpsk at N in {64, 128}


def test_cli_deterministic_given_seed(tmp_path):
    cfg = _write(tmp_path, SMALL_PSLR_INI)
    out = tmp_path / "out"
    texts = []
    for _ in range(2):  # same out dir, so the full config (and its hash) repeats
        assert cli.main(["pslr", "--config", str(cfg), "--seed", "5",
                         "--out", str(out)]) == 0
        body = (out / "pslr_sweep.csv").read_text(encoding="utf-8")
        texts.append([l for l in body.splitlines()
                      if not l.startswith("# wall_time_s")])
    assert texts[0] == texts[1]


def test_cli_seed_changes_rows(tmp_path):
    cfg = _write(tmp_path, SMALL_PSLR_INI)
    rows = []
    for seed in ("5", "6"):
        out = tmp_path / f"s{seed}"
        assert cli.main(["pslr", "--config", str(cfg), "--seed", seed,
                         "--out", str(out)]) == 0
        body = (out / "pslr_sweep.csv").read_text(encoding="utf-8")
        rows.append([l for l in body.splitlines() if not l.startswith("#")][1:])
    assert rows[0] != rows[1]


def test_cli_check_failure_exits_3(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(experiments, "check_pslr",
                        lambda table, config: [("rigged", False, "forced")])
    cfg = _write(tmp_path, SMALL_PSLR_INI)
    rc = cli.main(["pslr", "--config", str(cfg), "--seed", "0",
                   "--out", str(tmp_path / "o"), "--check"])
    assert rc == 3
    assert "[check] rigged: FAIL (forced)" in capsys.readouterr().out


def test_cli_bounds_check_passes(tmp_path, capsys):
    ini = """\
[signal]
rates = 120/1024:qpsk
codes = uncoded, polar

[bounds]
n_list = 256
u_points = 5
"""
    cfg = _write(tmp_path, ini)
    out = tmp_path / "out"
    rc = cli.main(["bounds", "--config", str(cfg), "--seed", "0",
                   "--trials", "400", "--out", str(out), "--check"])
    captured = capsys.readouterr().out
    assert rc == 0
    assert "[check] upper_bounds_dominate: PASS" in captured
    assert "[check] lower_bound_witness: PASS" in captured
    assert (out / "tail_bounds.csv").exists()


def test_cli_nearfar_small_scene(tmp_path, capsys):
    ini = """\
[experiment]
trials = 3

[signal]
n_fast = 128
m_slow = 16
codes = uncoded
rates = 1/1:qpsk

[scene]
n_max = 16
near_range_bin = 3
near_doppler_bin = 10
far_range_bin = 9
far_doppler_bin = 11
intf_range_bin = 11
intf_doppler_bin = 11

[detection]
eta_points = 40
"""
    cfg = _write(tmp_path, ini)
    out = tmp_path / "out"
    rc = cli.main(["nearfar", "--config", str(cfg), "--seed", "0",
                   "--out", str(out)])
    capsys.readouterr()
    assert rc == 0
    assert (out / "nearfar_summary.csv").exists()
    roc = (out / "roc_curves.csv").read_text(encoding="utf-8").splitlines()
    header = [l for l in roc if not l.startswith("#")][0]
    assert header == "eta,pd,pf,ci_lo,ci_hi,waveform"
    for v in ("ccs_sc", "ccs_sc_nointf", "ccs_ofdm", "ccs_ofdm_nointf", "fmcw"):
        assert (out / f"map_{v}.bin").exists()
    assert (out / "frame_ccs_sc.bin").exists()
    assert (out / "frame_fmcw.bin").exists()


def test_cli_plot_script_emission(tmp_path, capsys):
    cfg = _write(tmp_path, SMALL_PSLR_INI)
    out = tmp_path / "out"
    rc = cli.main(["pslr", "--config", str(cfg), "--seed", "1",
                   "--out", str(out), "--plot-script"])
    capsys.readouterr()
    assert rc == 0
    script = (out / "plot_pslr.py").read_text(encoding="utf-8")
    assert "matplotlib" in script and "pslr_sweep.csv" in script
