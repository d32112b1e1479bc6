import json
import os
import shutil
import subprocess
from pathlib import Path

import pytest


@pytest.fixture(scope="session")
def qwres_bin():
    path = os.environ.get("QWRES_BIN") or shutil.which("qwres")
    if not path:
        pytest.skip("qwres executable not found; set QWRES_BIN")
    return path


@pytest.fixture
def run(qwres_bin):
    def _run(*args, check=True):
        proc = subprocess.run([qwres_bin, *map(str, args)], capture_output=True, text=True, timeout=300)
        if check and proc.returncode != 0:
            raise AssertionError(f"qwres {' '.join(map(str, args))} exited {proc.returncode}: {proc.stderr}")
        return proc

    return _run


@pytest.fixture
def double_barrier_walk(run, tmp_path: Path):
    path = tmp_path / "walk.json"
    run("gallery", "double-barrier", "--k", 2, "--r", 0.5, "--walk-out", path, "--out", tmp_path / "g.json")
    return path


@pytest.fixture
def pulse_state(tmp_path: Path):
    path = tmp_path / "state.json"
    path.write_text(json.dumps({"amplitudes": [{"x": 1, "R": [1, 0]}]}))
    return path
