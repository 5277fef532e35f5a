import hashlib

import numpy as np
import pytest

import bloch3d
import heatmap
import trace
from common import FigureSpec, SchemaError, bloch_norms, load_trajectory_csv


def _spec(kind, src, out):
    return FigureSpec(kind=kind, input_path=str(src), output_path=str(out))


# ----------------------------------------------------------------- trace

def test_trace_renders_feedback_run(feedback_csv, tmp_path):
    out = tmp_path / "trace.png"
    arrays = trace.render(_spec("trace", feedback_csv, out))
    assert out.exists() and out.stat().st_size > 0
    for name, arr in arrays.items():
        assert np.all(np.isfinite(arr)), name


def test_trace_constant_run_is_flat(constant_csv, tmp_path):
    arrays = trace.render(_spec("trace", constant_csv, tmp_path / "flat.png"))
    # checksum of the plotted data, not of pixels
    digest = hashlib.sha256(arrays["p_l"].tobytes()).hexdigest()
    want = hashlib.sha256(np.zeros_like(arrays["p_l"]).tobytes()).hexdigest()
    assert digest == want
    assert np.all(arrays["f1_uev"] == 0.0)


def test_trace_missing_column_named(feedback_csv, tmp_path):
    broken = tmp_path / "broken.csv"
    lines = feedback_csv.read_text().splitlines()
    header = lines[0].split(",")
    drop = header.index("fidelity")
    rows = [",".join(c for i, c in enumerate(line.split(",")) if i != drop)
            for line in lines]
    broken.write_text("\n".join(rows) + "\n")
    with pytest.raises(SchemaError, match="fidelity"):
        trace.render(_spec("trace", broken, tmp_path / "x.png"))


def test_trace_does_not_mutate_input(feedback_csv, tmp_path):
    before = feedback_csv.read_bytes()
    trace.render(_spec("trace", feedback_csv, tmp_path / "t.png"))
    assert feedback_csv.read_bytes() == before


# ----------------------------------------------------------------- heatmap

def test_heatmap_renders_sweep(sweep_csv, tmp_path):
    out = tmp_path / "grid.png"
    arrays = heatmap.render(_spec("heatmap", sweep_csv, out))
    assert out.exists() and out.stat().st_size > 0
    shown = arrays["shown"]
    assert shown.shape == (3, 3)
    # the display floor masks the weak-transfer cells distinctly
    assert shown.mask.any()
    assert not shown.mask.all()
    assert np.all(np.isfinite(shown.compressed()))


def test_heatmap_rejects_wrong_schema(feedback_csv, tmp_path):
    with pytest.raises(SchemaError, match="masked"):
        heatmap.render(_spec("heatmap", feedback_csv, tmp_path / "x.png"))


def test_heatmap_synthetic_single_masked_cell(tmp_path):
    src = tmp_path / "tiny.csv"
    src.write_text(
        "g,eps0,value,masked\n"
        "0.1,50,0.25,0\n0.1,100,0.5,0\n0.2,50,0.75,0\n0.2,100,nan,1\n")
    arrays = heatmap.render(_spec("heatmap", src, tmp_path / "tiny.png"))
    assert arrays["shown"].mask.sum() == 1
    assert arrays["shown"].compressed().size == 3


# ----------------------------------------------------------------- bloch3d

def test_bloch_renders_and_stays_on_sphere(rabi_csv, tmp_path):
    out = tmp_path / "bloch.png"
    arrays = bloch3d.render(_spec("bloch3d", rabi_csv, out))
    assert out.exists() and out.stat().st_size > 0
    # dissipation-free run: the trajectory lies on the unit sphere
    assert np.max(np.abs(arrays["norms"] - 1.0)) <= 1e-6


def test_bloch_dissipative_run_stays_inside(feedback_csv, tmp_path):
    arrays = bloch3d.render(_spec("bloch3d", feedback_csv, tmp_path / "b.png"))
    assert np.all(arrays["norms"] <= 1.0 + 1e-6)


def test_bloch_rejects_inflated_vectors(rabi_csv, tmp_path):
    data = load_trajectory_csv(str(rabi_csv))
    lines = rabi_csv.read_text().splitlines()
    header = lines[0].split(",")
    ix = header.index("bloch_x")
    rows = [lines[0]]
    for line in lines[1:]:
        cells = line.split(",")
        cells[ix] = str(1.5)
        rows.append(",".join(cells))
    bad = tmp_path / "inflated.csv"
    bad.write_text("\n".join(rows) + "\n")
    with pytest.raises(ValueError, match="unit sphere"):
        bloch3d.render(_spec("bloch3d", bad, tmp_path / "x.png"))
    assert np.all(np.isfinite(data["bloch_x"]))


def test_norms_helper_matches_columns(rabi_csv):
    data = load_trajectory_csv(str(rabi_csv))
    norms = bloch_norms(data)
    want = np.sqrt(data["bloch_x"] ** 2 + data["bloch_y"] ** 2
                   + data["bloch_z"] ** 2)
    assert np.array_equal(norms, want)


# ----------------------------------------------------------- script entry

def test_script_entry_points(feedback_csv, sweep_csv, rabi_csv, tmp_path):
    assert trace.main([str(feedback_csv), "-o", str(tmp_path / "a.png")]) == 0
    assert heatmap.main([str(sweep_csv), "-o", str(tmp_path / "b.png")]) == 0
    assert bloch3d.main([str(rabi_csv), "-o", str(tmp_path / "c.png")]) == 0
    assert trace.main([str(tmp_path / "missing.csv"),
                       "-o", str(tmp_path / "d.png")]) == 1
