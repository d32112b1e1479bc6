import json

import pytest


def test_resonances_double_barrier(run, double_barrier_walk):
    out = json.loads(run("resonances", double_barrier_walk, "--method", "both").stdout)
    lams = [complex(r["re"], r["im"]) for r in out["resonances"]]
    assert len(lams) == 4
    for z in lams:
        assert abs(z**4 + 0.25) < 1e-12


def test_expand_verify(run, double_barrier_walk, pulse_state):
    run("expand", double_barrier_walk, pulse_state, "--J", "0,2", "--verify")


def test_simulate_conserves_norm(run, double_barrier_walk, pulse_state, tmp_path):
    out_path = tmp_path / "evolved.json"
    run("simulate", double_barrier_walk, pulse_state, "-n", 25, "--out", out_path)
    amps = json.loads(out_path.read_text())
    state = amps.get("state", amps)
    total = 0.0
    for a in state["amplitudes"]:
        for key in ("L", "R"):
            re, im = a.get(key, [0.0, 0.0])
            total += re * re + im * im
    assert abs(total - 1.0) < 1e-12


def test_observe_csv(run, double_barrier_walk, pulse_state):
    out = run("observe", double_barrier_walk, pulse_state, "--J", "0,2", "--n-max", 40, "--format", "csv").stdout
    lines = out.strip().splitlines()
    assert lines[0].split(",")[:2] == ["n", "survival"]
    assert len(lines) == 42


def test_verify_single_criterion(run):
    out = run("verify", "--criterion", 1).stdout
    assert out.startswith("PASS 1")


def test_bad_inputs_exit_nonzero(run, tmp_path, pulse_state):
    bad = tmp_path / "bad.json"
    bad.write_text('{"coins": [{"x": 0, "matrix": [[[0,0],[1,0]],[[1,0],[0,0]]]}]}')
    proc = run("resonances", bad, check=False)
    assert proc.returncode == 1
    assert "coins[0]" in proc.stderr

    broken = tmp_path / "broken.json"
    broken.write_text('{"coins": [\n  {"x": 0,, }]}')
    proc = run("resonances", broken, check=False)
    assert proc.returncode == 1
    assert "broken.json:2:" in proc.stderr


@pytest.mark.parametrize("k", [1, 3])
def test_gallery_walk_out_round_trips(run, tmp_path, k):
    path = tmp_path / "w.json"
    run("gallery", "double-barrier", "--k", k, "--r", 0.3, "--walk-out", path, "--out", tmp_path / "g.json")
    xs = [c["x"] for c in json.loads(path.read_text())["coins"]]
    assert xs == [0, k]
