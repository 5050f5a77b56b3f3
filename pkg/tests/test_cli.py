import csv
import io
import json

import pytest

from mhbesov import coeffs
from mhbesov import harmonic as ha
from mhbesov.cli import EXIT_ERROR, EXIT_FAIL, EXIT_OK, SweepConfig, main, render_reports
from mhbesov.verify import SUITES, VerificationReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def write_spec(tmp_path, name, components, n=2):
    path = tmp_path / name
    path.write_text(json.dumps({"n": n, "components": components}))
    return str(path)


MIXED = [{"p": 1, "q": 1, "terms": [{"alpha": [1, 0], "beta": [0, 1], "re": 1}]}]
CONST = [{"p": 0, "q": 0, "terms": [{"alpha": [0, 0], "beta": [0, 0], "re": 1}]}]


def test_coeffs_small_table(capsys):
    code, out, _ = run(capsys, "coeffs", "--n", "2", "--s", "0", "--pmax", "4", "--qmax", "4")
    assert code == EXIT_OK
    rows = rows_of(out)
    assert len(rows) == 25
    assert list(rows[0]) == ["p", "q", "s", "value", "err_est", "route", "normalized_value"]
    first = rows[0]
    assert (first["p"], first["q"], float(first["value"])) == ("0", "0", 1.0)
    for r in rows:
        assert float(r["value"]) > 0
        p, q = int(r["p"]), int(r["q"])
        assert r["route"] == ("closed_p0" if p * q == 0 else "quadrature")


def test_coeffs_routes_agree_cellwise(capsys):
    tables = {}
    for route in ("quadrature", "double_integral"):
        code, out, _ = run(capsys, "coeffs", "--n", "2", "--s", "0.5", "--pmax", "3", "--route", route)
        assert code == EXIT_OK
        tables[route] = {(r["p"], r["q"]): float(r["value"]) for r in rows_of(out) if r["p"] != "0" and r["q"] != "0"}
    for key, v in tables["quadrature"].items():
        assert abs(v - tables["double_integral"][key]) <= 1e-8 * v


def test_coeffs_below_minus_one_uses_valid_routes(capsys):
    code, out, _ = run(capsys, "coeffs", "--n", "2", "--s", "-1.5", "--pmax", "3")
    assert code == EXIT_OK
    assert {r["route"] for r in rows_of(out)} == {"double_integral", "closed_p0"}


def test_coeffs_multiple_s_sorted(capsys):
    code, out, _ = run(capsys, "coeffs", "--n", "3", "--s", "1", "--s", "0", "--s", "1", "--pmax", "1")
    assert code == EXIT_OK
    rows = rows_of(out)
    assert len(rows) == 8
    assert [float(r["s"]) for r in rows[:2]] == [0.0, 1.0]


def test_coeffs_output_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["coeffs", "--n", "2", "--s", "0", "--s", "-0.5", "--pmax", "3", "--out", str(p)]) == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_coeffs_json(capsys):
    code, out, _ = run(capsys, "coeffs", "--n", "2", "--s", "0", "--pmax", "1", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert len(doc["rows"]) == 4 and doc["rows"][0]["value"] == 1.0


@pytest.mark.parametrize("argv, fragment", [
    (["--tol", "0.5"], "tolerance"),
    (["--tol", "0"], "tolerance"),
    (["--pmax", "-1"], "non-negative"),
])
def test_coeffs_bad_input_exit_2(capsys, argv, fragment):
    base = ["coeffs", "--n", "2", "--s", "0", "--pmax", "2"]
    code, _, err = run(capsys, *(base + argv))
    assert code == EXIT_ERROR
    assert fragment in err


def test_coeffs_s_out_of_range(capsys):
    code, _, err = run(capsys, "coeffs", "--n", "2", "--s", "-3", "--pmax", "2")
    assert code == EXIT_ERROR and "outside" in err


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(2, [0.0], 2, 2, route="simpson")
    cfg = SweepConfig(2, [1.0, 0.0, 1.0], 2, 2)
    assert cfg.s == [0.0, 1.0]


@pytest.mark.parametrize("suite", ["blowup", "eigenvalues"])
def test_verify_fast_suites_pass(capsys, suite, tmp_path):
    out_path = tmp_path / "r.csv"
    code, _, err = run(capsys, "verify", suite, "--n", "2", "--out", str(out_path))
    assert code == EXIT_OK, err
    text = out_path.read_text()
    assert text.startswith(f"# suite: {suite}\n")
    rows = rows_of(text)
    assert rows and all(r["passed"] == "true" for r in rows)
    assert "runtime" not in rows[0]


def test_verify_json_and_runtime(capsys):
    code, out, _ = run(capsys, "verify", "blowup", "--format", "json", "--runtime")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["suite"] == "blowup"
    assert all("runtime" in r for r in doc["reports"])


def test_verify_bad_dimension(capsys):
    code, _, err = run(capsys, "verify", "blowup", "--n", "1")
    assert code == EXIT_ERROR


def test_render_reports_failure_counted():
    suite = SUITES["blowup"]
    reports = [VerificationReport("x", {"n": 2}, 1.0, 2.0, 0.5, 0.1, False, "")]
    text = render_reports(suite, reports, "csv")
    assert "# 0/1 checks passed" in text


def test_verify_failure_exit_code(monkeypatch, capsys):
    from mhbesov import cli, verify
    failing = verify.Suite("blowup", "h", lambda cfg: [VerificationReport("x", {}, 1.0, 2.0, 0.5, 0.1, False, "")])
    monkeypatch.setitem(verify.SUITES, "blowup", failing)
    code, _, err = run(capsys, "verify", "blowup")
    assert code == EXIT_FAIL
    assert err.startswith("FAIL x")


def test_norms_constant_all_ratios_one(tmp_path, capsys):
    code, out, _ = run(capsys, "norms", write_spec(tmp_path, "c.json", CONST), "--s", "0")
    assert code == EXIT_OK
    d = {r["quantity"]: float(r["value"]) for r in rows_of(out)}
    for k in ("bergman_s", "tangential_m", "box_smoothed_t", "hardy_smoothed"):
        assert d[k] == pytest.approx(1.0, rel=1e-12)
    assert all(v == pytest.approx(1.0, rel=1e-12) for k, v in d.items() if k.startswith("ratio"))


def test_norms_single_component_closed_forms(tmp_path, capsys):
    code, out, _ = run(capsys, "norms", write_spec(tmp_path, "h.json", MIXED), "--s", "0", "--format", "json")
    assert code == EXIT_OK
    d = json.loads(out)
    sphere = 1.0 / 6.0  # mean of |z1|^2 |z2|^2 over the sphere in C^2
    assert d["bergman_s"] == pytest.approx(coeffs.c_pq_value(2, 1, 1, 0.0) * sphere, rel=1e-9)
    lam = float(ha.box_eigenvalue(2, 1, 1))
    assert d["hardy_smoothed"] == pytest.approx(sphere / (lam + 1.0), rel=1e-12)


def test_norms_with_orders(tmp_path, capsys):
    code, out, _ = run(capsys, "norms", write_spec(tmp_path, "h.json", MIXED), "--s", "0.5", "--m", "1",
                       "--t", "1", "--format", "json")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["m"] == 1 and d["t"] == 1.0
    assert all(0 < v < float("inf") for v in d["ratios"].values())


def test_norms_non_harmonic_exit_2(tmp_path, capsys):
    bad = [{"p": 1, "q": 1, "terms": [{"alpha": [1, 0], "beta": [1, 0], "re": 1}]}]
    code, _, err = run(capsys, "norms", write_spec(tmp_path, "b.json", bad), "--s", "0")
    assert code == EXIT_ERROR
    assert "component (1,1)" in err and "not harmonic" in err


def test_norms_missing_file_exit_2(tmp_path, capsys):
    code, _, err = run(capsys, "norms", str(tmp_path / "none.json"), "--s", "0")
    assert code == EXIT_ERROR
