import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from casimir_lab import cli
from casimir_lab.constants import CM, EV, PN, UM
from casimir_lab.errors import DataError
from casimir_lab.io import (read_dataset, read_imperfections, read_optical_table, read_oscillators,
                            read_table, render_table, write_atomic)

EXAMPLE = "src/casimir_lab/data/example_dataset.csv"


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(autouse=True)
def _no_env_config(monkeypatch):
    monkeypatch.delenv(cli.CONFIG_ENV, raising=False)


# --- readers -----------------------------------------------------------------------

def test_read_dataset(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("# comment\nd_um,f_pn,sigma_pn\n1,10,0.5\n2,5,0.4\n3,2,0.3\n")
    data = read_dataset(p, attractive_magnitudes=True)
    assert np.allclose(data.d, [1e-6, 2e-6, 3e-6], rtol=1e-15, atol=0)
    assert np.allclose(data.F, [-10 * PN, -5 * PN, -2 * PN], rtol=1e-15, atol=0)


@pytest.mark.parametrize("body", [
    "d,f,s\n1,2,3\n",
    "d_um,f_pn,sigma_pn\n1,2\n",
    "d_um,f_pn,sigma_pn\n1,x,3\n2,1,1\n3,1,1\n",
    "d_um,f_pn,sigma_pn\n",
    "d_um,f_pn,sigma_pn\n1,1,1\n2,1,0\n3,1,1\n",
])
def test_read_dataset_rejects(tmp_path, body):
    p = tmp_path / "bad.csv"
    p.write_text(body)
    with pytest.raises(DataError):
        read_dataset(p)


def test_read_missing_file(tmp_path):
    with pytest.raises(DataError):
        read_dataset(tmp_path / "nope.csv")


def test_read_optical_table(tmp_path):
    p = tmp_path / "o.csv"
    p.write_text("omega_ev,im_eps\n0.5,10\n1.0,5\n2.0,1\n")
    t = read_optical_table(p)
    assert t.omega[1] == pytest.approx(EV, rel=1e-15, abs=0)


def test_read_imperfections_and_oscillators(tmp_path):
    p = tmp_path / "i.csv"
    p.write_text("r1_cm,d_offset_um\n10.6,0.2\n5.0,0\n")
    imps = read_imperfections(p)
    assert imps[0].R1 == pytest.approx(10.6 * CM, rel=1e-15, abs=0)
    assert imps[0].D == pytest.approx(0.2 * UM, rel=1e-15, abs=0)
    q = tmp_path / "osc.json"
    q.write_text(json.dumps([{"g_ev2": 25.0, "omega_ev": 3.0, "gamma_ev": 0.5}]))
    osc = read_oscillators(q)
    assert osc[0].omega == pytest.approx(3 * EV, rel=1e-15, abs=0)
    q.write_text("[{\"omega_ev\": 3}]")
    with pytest.raises(DataError):
        read_oscillators(q)


# --- writers -------------------------------------------------------------------------

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=20), st.sampled_from(["csv", "json"]))
@settings(max_examples=40, deadline=None)
def test_round_trip_is_lossless(tmp_path_factory, rows, fmt):
    path = tmp_path_factory.mktemp("rt") / f"t.{fmt}"
    rows = [list(r) for r in rows]
    write_atomic(path, render_table(["a", "b"], rows, {"tool": "x", "config_hash": "abc"}, fmt))
    cols, back, prov = read_table(path)
    assert cols == ["a", "b"]
    assert back == rows
    assert prov["config_hash"] == "abc"


def test_write_atomic_leaves_no_temp(tmp_path):
    write_atomic(tmp_path / "sub" / "x.csv", "hello\n")
    assert [p.name for p in (tmp_path / "sub").iterdir()] == ["x.csv"]


# --- CLI -------------------------------------------------------------------------------

def test_pressure_csv_has_provenance(capsys):
    code, out, _ = run(["pressure", "--points", "3", "--tol", "1e-6"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# tool: casimir-lab")
    assert any(ln.startswith("# config_hash: ") for ln in lines)
    header = next(ln for ln in lines if not ln.startswith("#"))
    assert header == "d_um,P_drude_Pa,P_plasma_Pa,ratio_plasma_drude"
    body = [ln for ln in lines if ln and not ln.startswith("#")][1:]
    assert len(body) == 3 and float(body[0].split(",")[0]) == pytest.approx(0.162, rel=1e-12, abs=0)


def test_output_is_deterministic(tmp_path, capsys):
    args = ["force-curve", "--points", "4", "--vrms", "5.4", "--offset", "-3", "--format", "json"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(args + ["--out", str(a)], capsys)[0] == 0
    assert run(args + ["--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    payload = json.loads(a.read_text())
    assert payload["provenance"]["models"]["drude"]["type"] == "Drude"
    assert payload["pfa_path"] == "simple"


def test_force_curve_columns(capsys):
    code, out, _ = run(["force-curve", "--dmin", "7.29um", "--dmax", "8um", "--points", "2",
                        "--vrms", "5.4", "--offset", "-3"], capsys)
    assert code == 0
    cols, rows, _ = read_table_from_text(out)
    row = dict(zip(cols, rows[0]))
    assert row["F_patch_pN"] == pytest.approx(-17.36, abs=0.01)
    assert row["F_offset_pN"] == pytest.approx(3.0, rel=1e-15, abs=0)
    assert row["F_total_pN"] == pytest.approx(row["F_C_pN"] + row["F_patch_pN"] + 3.0, rel=1e-12, abs=0)
    assert row["Fd_total_pN_um"] == pytest.approx(row["F_total_pN"] * 7.29, rel=1e-12, abs=0)


def read_table_from_text(text, tmp=None):
    import tempfile, os
    fd, name = tempfile.mkstemp(suffix=".csv")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    try:
        return read_table(name)
    finally:
        os.unlink(name)


def test_force_curve_with_imperfections(tmp_path, capsys):
    p = tmp_path / "imp.csv"
    p.write_text("r1_cm,d_offset_um\n10.6,0.2\n5.0,0\n")
    code, out, _ = run(["force-curve", "--imperfections", str(p), "--points", "2"], capsys)
    assert code == 0
    assert "# pfa_path: \"imperfect\"" in out
    bad = tmp_path / "bad.csv"
    bad.write_text("r1_cm,d_offset_um\n1.0,0.2\n")
    assert run(["force-curve", "--imperfections", str(bad), "--points", "2"], capsys)[0] == cli.EXIT_CONFIG


def test_fit_on_example_dataset(capsys):
    code, out, _ = run(["fit", "--data", EXAMPLE, "--attractive-magnitudes", "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["n_points"] == 10
    assert [r[0] for r in payload["rows"]] == ["drude", "plasma"]
    assert "best supported" in payload["verdict"]


def test_fit_subset_counts_points(capsys):
    code, out, _ = run(["fit", "--data", EXAMPLE, "--attractive-magnitudes", "--dmin", "3um",
                        "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["n_points"] == 5


def test_fit_subset_too_small_is_data_error(capsys):
    code, _, err = run(["fit", "--data", EXAMPLE, "--dmin", "6um"], capsys)
    assert code == cli.EXIT_DATA and "data error" in err


def test_fit_needs_data(capsys):
    assert run(["fit"], capsys)[0] == cli.EXIT_CONFIG


def test_bad_data_file_is_data_error(tmp_path, capsys):
    p = tmp_path / "bad.csv"
    p.write_text("d_um,f_pn,sigma_pn\n1,2,3\n")
    assert run(["fit", "--data", str(p)], capsys)[0] == cli.EXIT_DATA


def test_single_point_grid_rejected(capsys):
    assert run(["pressure", "--points", "1"], capsys)[0] == cli.EXIT_CONFIG


def test_inverted_grid_rejected(capsys):
    assert run(["pressure", "--dmin", "1um", "--dmax", "500nm"], capsys)[0] == cli.EXIT_CONFIG


def test_entropy_temperatures_must_be_positive(capsys):
    assert run(["entropy", "--temps", "0,1,2"], capsys)[0] == cli.EXIT_CONFIG


def test_convergence_error_exit_code(capsys):
    # a loose-tolerance T = 1e-6 K run needs billions of Matsubara terms
    code, _, err = run(["pressure", "--temp", "1e-6", "--points", "2", "--dmin", "1um", "--dmax", "2um"],
                       capsys)
    assert code == cli.EXIT_CONVERGENCE and "convergence" in err


def test_config_layering(tmp_path, monkeypatch, capsys):
    env = tmp_path / "env.json"
    env.write_text(json.dumps({"points": 2, "format": "json", "temp": 10.0}))
    mine = tmp_path / "mine.json"
    mine.write_text(json.dumps({"temp": 20.0}))
    monkeypatch.setenv(cli.CONFIG_ENV, str(env))
    code, out, _ = run(["patch-window", "--config", str(mine), "--points", "3"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["provenance"]["temperature_K"] == 20.0
    assert len(payload["rows"]) == 3


def test_unknown_config_key(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"bogus": 1}))
    assert run(["patch-window", "--config", str(p)], capsys)[0] == cli.EXIT_CONFIG


def test_gplasma_requires_oscillators(capsys):
    assert run(["force-curve", "--model", "gplasma", "--points", "2"], capsys)[0] == cli.EXIT_CONFIG


def test_gplasma_with_oscillator_file(tmp_path, capsys):
    q = tmp_path / "osc.json"
    q.write_text(json.dumps([{"g_ev2": 25.0, "omega_ev": 3.0, "gamma_ev": 0.5}]))
    code, out, _ = run(["force-curve", "--model", "gplasma", "--oscillators", str(q), "--points", "2"], capsys)
    assert code == 0 and "GeneralizedPlasma" in out


def test_patch_window(capsys):
    code, out, _ = run(["patch-window", "--dmin", "1um", "--dmax", "2um", "--points", "2"], capsys)
    assert code == 0
    cols, rows, _ = read_table_from_text(out)
    assert rows[0][cols.index("r_eff_mm")] == pytest.approx(np.sqrt(0.156 * 1e-6) * 1e3, rel=1e-12, abs=0)


def test_entropy_runs(capsys):
    code, out, _ = run(["entropy", "--temps", "50", "--format", "json"], capsys)
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row[1] < 0 < row[3]


def test_masquerade_reports_threshold(capsys):
    code, out, _ = run(["masquerade", "--points", "5", "--format", "json", "--tol", "1e-5"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["match_threshold"] == 0.10
    assert "reporting choice" in payload["note"]
