"""Fixtures: produce input CSVs by invoking the simulator CLI, the only
interface the figure scripts depend on."""
import subprocess
import sys
from pathlib import Path

import pytest

FIGDIR = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(FIGDIR))


def _cli(*args) -> None:
    proc = subprocess.run(
        [sys.executable, "-m", "dqdsim.cli", *args],
        capture_output=True, text=True,
    )
    if proc.returncode != 0:
        raise RuntimeError(f"cli failed: {proc.stderr}")


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory) -> Path:
    return tmp_path_factory.mktemp("csv")


@pytest.fixture(scope="session")
def feedback_csv(data_dir) -> Path:
    out = data_dir / "feedback.csv"
    _cli("simulate", "--delta", "5", "--eps0", "90", "--t-end", "120",
         "--out", str(out))
    return out


@pytest.fixture(scope="session")
def rabi_csv(data_dir) -> Path:
    # dissipation-free resonant oscillation: eps0 = 0, negligible pulse,
    # lifetimes pushed out so the state stays on the sphere surface
    out = data_dir / "rabi.csv"
    _cli("simulate", "--mode", "lzs", "--delta", "10", "--eps0", "0",
         "--amplitude-a", "1e-9", "--t-r", "250", "--t1", "1e15",
         "--t2", "1e15", "--hold-dt", "0.5", "--out", str(out))
    return out


@pytest.fixture(scope="session")
def constant_csv(data_dir) -> Path:
    # gapless pulse cannot move the state: every series is flat
    out = data_dir / "constant.csv"
    _cli("simulate", "--mode", "lzs", "--delta", "0", "--eps0", "90",
         "--amplitude-a", "180", "--t-r", "10", "--out", str(out))
    return out


@pytest.fixture(scope="session")
def sweep_csv(data_dir) -> Path:
    out = data_dir / "grid.csv"
    _cli("sweep", "--delta", "5", "--axis1", "g:0.1:0.3:3",
         "--axis2", "eps0:40:140:3", "--t-end", "80",
         "--p-l-floor", "0.5", "--out", str(out))
    return out
