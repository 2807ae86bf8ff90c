import io
import math

import pytest

from screened_casimir.cli import SWEEP_COLUMNS, main

HEADER = ",".join(SWEEP_COLUMNS)


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def parse_report(text):
    return {k: v.split()[0] for k, v in (item.split("=", 1) for item in text.split() if "=" in item)}


def csv_rows(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    header = lines[0].split(",")
    return header, [dict(zip(header, ln.split(","))) for ln in lines[1:]]


def test_eval_room_temperature():
    code, text = run(["eval", "--sep", "1e-6", "--temp", "300", "--wp", "0", "--mirror", "perfect"])
    assert code == 0
    rep = parse_report(text)
    F = float(rep["F_total"])
    assert -4.6e-10 < F < -4.3e-10
    assert F == pytest.approx(float(rep["F_n0"]) + float(rep["F_npos"]), rel=1e-9)
    assert float(rep["x"]) == pytest.approx(0.262, abs=1e-3)


def test_eval_zero_temperature():
    code, text = run(["eval", "--sep", "1e-6", "--temp", "0"])
    assert code == 0
    assert float(parse_report(text)["F_total"]) == pytest.approx(-4.3338e-10, rel=1e-4)


def test_eval_drude_mirror(tmp_path):
    code, text = run(["eval", "--sep", "2e-5", "--temp", "300", "--mirror", "drude:1.37e16:5.32e13"])
    assert code == 0
    assert float(parse_report(text)["F_total"]) < 0


def test_eval_medium_file(tmp_path):
    path = tmp_path / "gap.csv"
    path.write_text("# constant dielectric\nxi_rad_s,eps\n1e10,2.0\n1e18,2.0\n")
    code, text = run(["eval", "--sep", "1e-6", "--temp", "300", "--medium-file", str(path)])
    assert code == 0
    assert float(parse_report(text)["F_total"]) < 0


def test_eval_missing_sep(capsys):
    code, _ = run(["eval", "--temp", "300"])
    assert code == 2
    err = capsys.readouterr().err
    assert "usage" in err and "--sep" in err


def test_eval_negative_wp(capsys):
    code, _ = run(["eval", "--sep", "1e-6", "--temp", "300", "--wp", "-1"])
    assert code == 2
    assert "--wp" in capsys.readouterr().err


@pytest.mark.parametrize("argv,flag", [
    (["eval", "--sep=-1e-6", "--temp", "300"], "--sep"),
    (["eval", "--sep", "1e-6", "--temp=-3"], "--temp"),
    (["eval", "--sep", "1e-6", "--temp", "300", "--mirror", "copper"], "--mirror"),
    (["eval", "--sep", "1e-6", "--temp", "300", "--medium-file", "/nonexistent.csv"], "--medium-file"),
    (["eval", "--sep", "1e-6", "--temp", "300", "--wp", "1e14", "--medium-file", "x.csv"], "--wp"),
    (["sweep", "--temp", "300", "--points", "1"], "--points"),
    (["sweep", "--temp", "300", "--l-min", "1e-5", "--l-max", "1e-6"], "--l-min"),
])
def test_usage_errors_name_flag(argv, flag, capsys):
    code, _ = run(argv)
    assert code == 2
    assert flag in capsys.readouterr().err


def test_bad_table_reports_line(tmp_path, capsys):
    path = tmp_path / "gap.csv"
    path.write_text("xi_rad_s,eps\n1e10,2.0\n1e9,2.0\n")
    code, _ = run(["eval", "--sep", "1e-6", "--temp", "300", "--medium-file", str(path)])
    assert code == 2
    assert "line 3" in capsys.readouterr().err


def test_convergence_exit_code(capsys):
    code, _ = run(["eval", "--sep", "1e-6", "--temp", "1e-3", "--max-matsubara", "10"])
    assert code == 3
    assert "convergence" in capsys.readouterr().err


def test_two_point_sweep():
    code, text = run(["sweep", "--temp", "300", "--points", "2"])
    assert code == 0
    lines = text.splitlines()
    data = [ln for ln in lines if not ln.startswith("#")]
    assert data[0] == HEADER
    assert len(data) == 3
    assert lines[0].startswith("# screened_casimir ")
    assert "--points=2" in lines[1]
    assert "\r" not in text


def test_sweep_rows_ordered_and_consistent():
    code, text = run(["sweep", "--temp", "300", "--points", "12", "--wp", "0,1e14"])
    assert code == 0
    header, rows = csv_rows(text)
    assert header == SWEEP_COLUMNS
    assert len(rows) == 24
    for wp in ("0.000000000e+00", "1.000000000e+14"):
        ls = [float(r["l_m"]) for r in rows if r["wp_rad_s"] == wp]
        assert ls == sorted(ls)
    for r in rows:
        assert r["err"] == ""
        total = float(r["F_total_J_m2"])
        assert total == pytest.approx(float(r["F_n0_J_m2"]) + float(r["F_npos_J_m2"]), rel=1e-9)
        assert len(r["F_total_J_m2"].split("e")[0].replace("-", "").replace(".", "")) == 10


def test_sweep_screening_ordering():
    code, text = run(["sweep", "--temp", "300", "--points", "50", "--wp", "0,1e13,1e14"])
    assert code == 0
    _, rows = csv_rows(text)
    by_wp = {}
    for r in rows:
        by_wp.setdefault(float(r["wp_rad_s"]), []).append(float(r["corr_factor"]))
    a, b, c = (by_wp[k] for k in sorted(by_wp))
    assert all(x > y > z for x, y, z in zip(a, b, c))


def test_sweep_vacuum_small_separation():
    code, text = run(["sweep", "--temp", "300", "--points", "2", "--l-min", "1e-8", "--l-max", "1e-7"])
    _, rows = csv_rows(text)
    assert float(rows[0]["corr_factor"]) == pytest.approx(1.0, abs=1e-6)


def test_sweep_failure_rows_carry_error():
    code, text = run(["sweep", "--temp", "0.1", "--points", "2", "--max-matsubara", "1000",
                      "--l-min", "1e-7", "--l-max", "1e-4"])
    assert code == 0
    _, rows = csv_rows(text)
    assert rows[0]["err"].startswith("ConvergenceError")
    assert rows[0]["F_total_J_m2"] == ""
    assert rows[1]["err"] == ""


def test_sweep_output_file(tmp_path):
    path = tmp_path / "out.csv"
    code, text = run(["sweep", "--temp", "300", "--points", "3", "--output", str(path)])
    assert code == 0 and text == ""
    assert HEADER in path.read_text()


def test_sweep_thread_determinism():
    base = ["sweep", "--temp", "300", "--points", "30", "--wp", "0,1e13,1e14,1e15"]
    _, one = run(base + ["--threads", "1"])
    _, many = run(base + ["--threads", "6"])
    _, again = run(base + ["--threads", "6"])
    assert one == many == again


def test_ratio_columns_and_values():
    code, text = run(["ratio", "--temp", "300", "--wp", "1e14", "--l-min", "1e-6",
                      "--l-max", "3e-5", "--points", "8"])
    assert code == 0
    header, rows = csv_rows(text)
    assert header == SWEEP_COLUMNS[:-1] + ["ratio_total", "err"]
    for r in rows:
        assert float(r["ratio_n0"]) == pytest.approx(
            float(r["F_n0_J_m2"]) / float(r["asym_n0_J_m2"]), rel=1e-8)
        if float(r["kappa_l"]) >= 3:
            assert 0.99 <= float(r["ratio_n0"]) <= 1.01


def test_ratio_requires_screening(capsys):
    code, _ = run(["ratio", "--temp", "300", "--wp", "0"])
    assert code == 2
    code, _ = run(["ratio", "--temp", "300", "--wp", "1e14", "--mirror", "drude:1e16:1e14"])
    assert code == 2


def test_nuclear_defaults():
    code, text = run(["nuclear"])
    assert code == 0
    kv = dict(line.split(" = ", 1) for line in text.splitlines() if " = " in line)
    assert float(kv["E_n0_MeV"].split()[0]) == pytest.approx(4.18, rel=1e-2)
    assert float(kv["E_npos_asym_MeV"].split()[0]) == pytest.approx(3.00, rel=1e-2)
    assert float(kv["temperature_K"]) == 3.2e11
    assert "T_density_K" in kv and "T_balance_K" in kv
    assert "note:" in text


def test_nuclear_balance_mode():
    code, text = run(["nuclear", "--temp-mode", "balance", "--sep", "3.6"])
    kv = dict(line.split(" = ", 1) for line in text.splitlines() if " = " in line)
    assert float(kv["temperature_K"]) == pytest.approx(3.18e11, rel=5e-3)


def test_nuclear_density_mode():
    code, text = run(["nuclear", "--temp-mode", "density"])
    kv = dict(line.split(" = ", 1) for line in text.splitlines() if " = " in line)
    assert float(kv["temperature_K"]) == pytest.approx(4.78e11, rel=1e-2)
    assert "x quoted value" in kv["T_density_K"]


def test_nuclear_bad_flag():
    with pytest.raises(SystemExit) as info:
        main(["nuclear", "--temp-mode", "hot"])
    assert info.value.code == 2
    code, _ = run(["nuclear", "--meson-mass", "-5"])
    assert code == 2


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# recipe\nl-min = 1e-6\nl-max = 1e-5\npoints = 3\ntemp = 300\nwp = 1e14\n")
    code, text = run(["sweep", "--config", str(cfg)])
    assert code == 0
    _, rows = csv_rows(text)
    assert len(rows) == 3 and float(rows[0]["l_m"]) == 1e-6
    code, text = run(["sweep", "--config", str(cfg), "--points", "5"])
    _, rows = csv_rows(text)
    assert len(rows) == 5


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("bogus = 1\n")
    code, _ = run(["sweep", "--config", str(cfg)])
    assert code == 2
    assert "bogus" in capsys.readouterr().err


def test_shipped_configs():
    from pathlib import Path

    root = Path(__file__).resolve().parent.parent / "configs"
    code, text = run(["nuclear", "--config", str(root / "nuclear.cfg")])
    assert code == 0 and "E_total_MeV" in text
    code, text = run(["ratio", "--config", str(root / "fig3.cfg"), "--points", "4"])
    assert code == 0
    _, rows = csv_rows(text)
    assert all(math.isfinite(float(r["ratio_total"])) for r in rows)
