import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from towercodes.cli import main
from towercodes.code import corrupt
from towercodes.hse import sample_key
from towercodes.pipeline import (Infeasible, PipelineConfig, describe, pipeline, pipeline_decode, pipeline_encode,
                                 plan_params, sweep)

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
H_DEMO = PipelineConfig.from_dict(json.loads((CONFIGS / "h_demo.json").read_text()))
E2E = PipelineConfig.from_dict(json.loads((CONFIGS / "e2e.json").read_text()))


def test_config_round_trip():
    assert PipelineConfig.from_dict(json.loads(H_DEMO.to_json())) == H_DEMO
    with pytest.raises(ValueError):
        PipelineConfig.from_dict({"kind": "gs", "bogus": 1})


def test_e2e_reported_values():
    rep = describe(E2E)
    assert E2E.rate() == Fraction(120, 504)
    assert (rep["genus"], rep["D"], rep["t_min"], rep["errors_tolerated"]) == (28, 80, 38, 18)
    assert E2E.c_value == 8


def test_describe_small_hermitian():
    rep = describe(H_DEMO)
    assert (rep["D"], rep["t_min"], rep["genus"], rep["l"]) == (13, 10, 6, 26)
    assert rep["unknowns"] > rep["equations"]


def test_pipeline_planted_and_deterministic():
    key = sample_key(H_DEMO.hse_params, 1)
    pipe = pipeline(H_DEMO)
    F = pipe.F
    rng = np.random.default_rng(0)
    for t in (0, 2):
        x = F.vrandom(rng, pipe.hp.msg_len)
        cw = pipeline_encode(H_DEMO, key, x)
        assert (cw == pipeline_encode(H_DEMO, key, x)).all()
        rep = pipeline_decode(H_DEMO, key, corrupt(F, cw, t, rng))
        assert any((x == a).all() for a in rep.accepted)
        assert all(a >= pipe.t_min for a, c in zip(rep.agreements, rep.candidates) if any((c == y).all() for y in rep.accepted))


def test_pipeline_injective():
    key = sample_key(H_DEMO.hse_params, 2)
    pipe = pipeline(H_DEMO)
    X = pipe.F.vrandom(np.random.default_rng(1), (1000, pipe.hp.msg_len))
    X = np.unique(X, axis=0)
    cws = np.stack([pipe.encode(key, x).reshape(-1) for x in X])
    assert len(np.unique(cws, axis=0)) == len(X)


def test_plan_returns_valid_config():
    cfg, rep = plan_params(0.05, "hermitian", 4, 60)
    cfg.validate()
    assert Fraction(rep["rate"]) >= Fraction(1, 20)


def test_plan_rejects_radius_above_ceiling():
    with pytest.raises(Infeasible):
        plan_params(0.1, "hermitian", 4, 60, tau=0.7, s=2)


def test_plan_gs_has_better_genus_ratio():
    _, h = plan_params(0.05, "hermitian", 8, 3000)
    _, g = plan_params(0.05, "gs", 8, 3000)
    assert h["e"] == g["e"] == 3
    assert g["genus_ratio"] < h["genus_ratio"]


def test_sweep_rows():
    key = sample_key(H_DEMO.hse_params, 3)
    out = sweep(H_DEMO, key, [0, 2, 8], trials=4, seed=5)
    lines = out.splitlines()
    assert lines[0].startswith("# towercodes sweep v")
    rows = [ln.split(",") for ln in lines[2:]]
    assert rows[0][2] == "1.0000" and rows[1][2] == "1.0000"
    again = sweep(H_DEMO, key, [0, 2, 8], trials=4, seed=5).splitlines()
    assert [ln.split(",")[:4] for ln in again[2:]] == [r[:4] for r in rows]
    rec = [float(r[2]) for r in rows]
    assert rec == sorted(rec, reverse=True)


def test_cli_round_trip(tmp_path, capsys):
    cfg = str(CONFIGS / "h_demo.json")
    d = tmp_path
    assert main(["params", "--config", cfg]) == 0
    assert main(["keygen", "--config", cfg, "--out", str(d / "key.txt")]) == 0
    assert main(["encode", "--config", cfg, "--key", str(d / "key.txt"), "--seed", "3",
                 "--message-out", str(d / "msg.txt"), "--out", str(d / "cw.txt")]) == 0
    assert main(["corrupt", "--config", cfg, "--in", str(d / "cw.txt"), "--t", "2", "--out", str(d / "rx.txt")]) == 0
    assert main(["decode-subspace", "--config", cfg, "--in", str(d / "rx.txt"), "--out", str(d / "W.txt")]) == 0
    assert main(["decode", "--config", cfg, "--key", str(d / "key.txt"), "--in", str(d / "rx.txt"),
                 "--out", str(d / "list.txt")]) == 0
    assert (d / "msg.txt").read_text().strip() in (d / "list.txt").read_text()
    # the message space is far too large for brute force here
    assert main(["oracle", "--config", cfg, "--key", str(d / "key.txt"), "--in", str(d / "rx.txt")]) == 2
    assert main(["hse-decode", "--config", cfg, "--key", str(d / "key.txt"), "--vector", " ".join(["0"] * 15)]) == 2
    assert main(["plan", "--rate", "0.1", "--kind", "hermitian", "--r", "4", "--size", "60", "--tau", "0.9",
                 "--s", "2"]) == 2
    assert main(["baseline-rs"]) == 0
    assert main(["hse-verify", "--config", cfg, "--key", str(d / "key.txt"), "--trials", "3"]) == 0
    assert main(["params", "--config", cfg, "--set", "N=40"]) == 2
