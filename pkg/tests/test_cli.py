import json

import pytest

from kissing import __version__
from kissing.cli import build_parser, read_polynomial_file, run
from kissing.config import CONFIG_ENV_VAR
from kissing.errors import InvalidInput
from kissing.tables import table_csv

from conftest import sharp_polynomial_8


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)


def run_json(capsys, *argv):
    assert run(["--format", "json", *argv]) == 0
    return json.loads(capsys.readouterr().out)


def test_levenshtein_text(capsys):
    assert run(["upper", "--n", "8", "--s", "0.5"]) == 0
    out = capsys.readouterr().out
    assert "levenshtein" in out
    assert "floor=240" in out


def test_levenshtein_uses_configured_tolerance(capsys):
    payload = run_json(capsys, "--tol", "1e-6", "upper", "--n", "4", "--s", "0.5")
    (report,) = payload["reports"]
    assert report["notes"] == ["verified at tolerance 1e-06"]


def test_levenshtein_exact_json(capsys):
    payload = run_json(capsys, "--exact", "upper", "--n", "24", "--s", "1/2")
    (report,) = payload["reports"]
    assert report["value_exact"] == "196560"
    assert report["s_exact"] == "1/2"
    assert report["rigorous"] is True
    assert "generated_at" in payload


def test_show_intervals(capsys):
    assert run(["upper", "--n", "8", "--s", "0.5", "--show-intervals"]) == 0
    out = capsys.readouterr().out
    assert "I_0:" in out
    assert "I_7:" in out


def test_coxeter_boroczky_at_the_600_cell(capsys):
    payload = run_json(capsys, "upper", "--n", "4", "--s", "0.809017", "--method", "cb")
    (report,) = payload["reports"]
    assert report["method"] == "coxeter-boroczky"
    assert abs(report["value"] - 120.0) < 0.5


def test_fejes_toth_needs_three_dimensions(capsys):
    assert run(["upper", "--n", "4", "--s", "0.5", "--method", "ft"]) == 2
    assert "n = 3" in capsys.readouterr().err


def test_all_methods(capsys):
    payload = run_json(
        capsys, "upper", "--n", "5", "--s", "0.5", "--method", "all", "--degree", "5", "--grid", "200"
    )
    methods = [r["method"] for r in payload["reports"]]
    assert methods == sorted(methods)
    assert {"levenshtein", "coxeter-boroczky"} <= set(methods)
    assert payload["best"]["rigorous"] is True
    assert payload["best"]["floor_value"] <= 48


def test_all_methods_csv(capsys):
    assert run(["--format", "csv", "upper", "--n", "3", "--s", "0.45", "--method", "all",
                "--degree", "5", "--grid", "200"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "method,kind,n,s,value,floor_value,rigorous"
    assert any(line.startswith("fejes-toth,upper,3,") for line in lines)


def test_lower_construction_a(capsys):
    payload = run_json(capsys, "lower", "--construction", "a", "--code", "ext_hamming8", "--enumerate")
    (report,) = payload["reports"]
    assert report["floor_value"] == 240
    assert report["kind"] == "lower"
    assert payload["contact_count"] == 240
    assert payload["contact_max_inner_product"] <= 0.5 + 1e-12
    assert len(payload["contact_vectors"]) == 240


def test_lower_leech(capsys):
    assert run(["lower", "--construction", "leech", "--code", "golay24"]) == 0
    assert "lower=196560" in capsys.readouterr().out


def test_lower_from_code_file(capsys, write_lines):
    path = write_lines("code.txt", ["# repetition code", "0000", "1111"])
    assert run(["lower", "--construction", "a", "--code-file", path]) == 0
    assert "lower=24" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["lower", "--construction", "a", "--code", "nope"],
        ["lower", "--construction", "leech", "--code", "ext_hamming8", "--enumerate"],
        ["upper", "--n", "2", "--s", "0.5"],
        ["upper", "--n", "8", "--s", "half"],
        ["upper", "--n", "8", "--s", "1"],
        ["analyze", "--points", "e8_roots", "--cap", "1", "0.3", "--pfender", "0.4"],
    ],
)
def test_invalid_input_exits_2(capsys, argv):
    assert run(argv) == 2
    assert capsys.readouterr().err.startswith("kissing: ")


def test_verify_exact_certificate(capsys, write_lines):
    path = write_lines("p8.txt", ["# (t+1)(t+1/2)^2 t^2 (t-1/2)"] + [str(c) for c in sharp_polynomial_8().coeffs])
    payload = run_json(capsys, "--exact", "verify", "--poly-file", path, "--n", "8", "--s", "1/2")
    (report,) = payload["reports"]
    assert report["floor_value"] == 240
    assert report["rigorous"] is True


def test_verify_failure_exits_3(capsys, write_lines):
    path = write_lines("t.txt", ["0", "1"])
    assert run(["verify", "--poly-file", path, "--n", "3", "--s", "0.5"]) == 3
    assert "A1" in capsys.readouterr().err


def test_read_polynomial_file(write_lines):
    p = read_polynomial_file(write_lines("p.txt", ["1/2  # constant", "", "-3"]), exact=True)
    assert p.coeffs == (0.5, -3)
    with pytest.raises(InvalidInput):
        read_polynomial_file(write_lines("empty.txt", ["# nothing"]), exact=False)


def test_analyze(capsys):
    payload = run_json(capsys, "analyze", "--points", "e8_roots", "--pfender", "0.5")
    assert payload["size"] == 240
    assert payload["max_inner_product"] == pytest.approx(0.5)
    (check,) = payload["checks"]
    assert check["holds"] is True
    assert sum(item["A_t"] for item in payload["distance_distribution"]) == pytest.approx(240)


def test_analyze_points_file(capsys, write_lines):
    path = write_lines("square.txt", ["1 0", "0 1", "-1 0", "0 -1"])
    assert run(["--format", "csv", "analyze", "--points-file", path]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "t,A_t"
    assert len(lines) == 4


def test_table_csv(capsys):
    assert run(["--format", "csv", "table"]) == 0
    assert capsys.readouterr().out == table_csv()


def test_table_text(capsys):
    assert run(["table"]) == 0
    out = capsys.readouterr().out
    assert "196560" in out
    assert "44.998" in out


def test_table_reconcile(capsys):
    payload = run_json(capsys, "table", "--reconcile")
    rows = {r["n"]: r for r in payload["reconciliation"]}
    assert len(rows) == 22
    assert rows[8]["gap"] == 0
    assert rows[24]["gap"] == 0
    assert rows[3]["best_upper"] == 13
    assert rows[3]["upper_method"] == "fejes-toth"


def test_seed_and_tol_overrides():
    args = build_parser().parse_args(["--seed", "5", "--tol", "1e-9", "table"])
    assert args.seed == 5
    assert args.tol == 1e-9


def test_version(capsys):
    with pytest.raises(SystemExit):
        run(["--version"])
    assert __version__ in capsys.readouterr().out
