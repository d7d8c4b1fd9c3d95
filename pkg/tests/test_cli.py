import json

import pytest

from gpfree.cli import build_parser, run


def run_capture(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_density_greedy_json(capsys):
    code, out, err = run_capture(
        capsys, ["density", "greedy", "--d", "-1", "--trunc-prime", "100000"]
    )
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert payload["command"] == "density greedy"
    assert abs(payload["results"]["value"] - 0.762340) < 1e-5
    whole, frac = payload["results"]["value_6dp"].split(".")
    assert whole == "0" and len(frac) == 6
    assert payload["results"]["error_bound"] < 1e-5
    assert payload["version"] == "0.1.0"


def test_repeated_invocations_byte_identical(capsys):
    argv = ["density", "ideals", "--d", "-5", "--trunc-prime", "10000"]
    _, out1, _ = run_capture(capsys, argv)
    _, out2, _ = run_capture(capsys, argv)
    assert out1 == out2


def test_density_rankin(capsys):
    code, out, _ = run_capture(capsys, ["density", "rankin", "--trunc-prime", "10000"])
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["results"]["value"] - 0.71974) < 1e-4


def test_bounds_riddell_json_and_csv(capsys):
    code, out, _ = run_capture(capsys, ["bounds", "riddell", "--d", "-3"])
    assert code == 0
    assert json.loads(out)["results"]["bound"] == "12/13"
    code, out, _ = run_capture(
        capsys, ["bounds", "riddell", "--d", "-3", "--format", "csv"]
    )
    assert code == 0
    assert out.startswith("key,value\n")
    assert "results.bound,12/13" in out


def test_bounds_universal(capsys):
    code, out, _ = run_capture(
        capsys, ["bounds", "universal", "--trunc-prime", "10000"]
    )
    payload = json.loads(out)
    assert abs(payload["results"]["lower"]["value"] - 0.518033) < 1e-4
    assert abs(payload["results"]["upper"]["value"] - 0.939735) < 1e-4


def test_bounds_lower_preset(capsys):
    code, out, _ = run_capture(capsys, ["bounds", "lower", "--d", "-11", "--preset"])
    assert code == 0
    payload = json.loads(out)["results"]
    assert payload["certificate"] == "CERTIFIED"
    assert payload["density_6dp"] == "0.908642"
    assert payload["chaining_constant"] == 405
    assert payload["density_mismatch_vs_quoted"] is False


def test_bounds_lower_gaussian_flags_discrepancy(capsys):
    code, out, _ = run_capture(capsys, ["bounds", "lower", "--d", "-1", "--preset"])
    payload = json.loads(out)["results"]
    assert payload["density_mismatch_vs_quoted"] is True
    assert "note" in payload
    assert payload["density_6dp"] == "0.844569"
    assert payload["quoted_density"] == 0.844662


def test_bounds_lower_interval_file(tmp_path, capsys):
    path = tmp_path / "system.txt"
    path.write_text("# single top interval\n4 1\n")
    code, out, _ = run_capture(
        capsys, ["bounds", "lower", "--d", "-1", "--intervals", str(path)]
    )
    assert code == 0
    payload = json.loads(out)["results"]
    assert payload["certificate"] == "CERTIFIED"
    assert payload["density"] == "3/4"


def test_bounds_lower_bad_interval_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("4 1 9\n")
    code, _, err = run_capture(
        capsys, ["bounds", "lower", "--d", "-1", "--intervals", str(path)]
    )
    assert code == 1
    assert "line 1" in err


def test_bounds_smooth(capsys):
    code, out, _ = run_capture(
        capsys, ["bounds", "smooth", "--d", "-1", "--nmax", "100"]
    )
    payload = json.loads(out)["results"]
    assert payload["profile"] == [[4, 1], [20, 3], [32, 4], [64, 5], [100, 8]]
    assert payload["coprime_density"] == "8/25"
    assert payload["riddell"] == "6/7"


def test_verify_greedy(capsys):
    code, out, _ = run_capture(
        capsys, ["verify", "greedy", "--d", "-1", "--norm-max", "400"]
    )
    assert code == 0
    payload = json.loads(out)["results"]
    assert payload["included"] + payload["excluded"] > 0
    assert 0.5 < payload["empirical_density_decimal"] < 1.0


def test_envelope_error_bounds_key(capsys):
    _, out, _ = run_capture(
        capsys, ["density", "greedy", "--d", "-1", "--trunc-prime", "10000"]
    )
    payload = json.loads(out)
    assert payload["error_bounds"]["value"] >= 0


def test_verify_characterization(capsys):
    code, out, _ = run_capture(
        capsys, ["verify", "characterization", "--d", "-1", "--norm-max", "200"]
    )
    assert code == 0
    assert json.loads(out)["results"]["greedy_equals_digit_characterization"] is True


def test_verify_gauss(capsys):
    code, out, _ = run_capture(
        capsys, ["verify", "gauss", "--d", "-1", "--norm-max", "10000"]
    )
    assert code == 0
    assert json.loads(out)["results"]["ok"] is True


def test_survey_csv_and_histogram(tmp_path, capsys):
    hist = tmp_path / "hist.csv"
    code, out, _ = run_capture(
        capsys,
        [
            "survey", "--dmax", "50", "--trunc-prime", "2000",
            "--bins", "0.05", "--histogram-out", str(hist),
        ],
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "d,discriminant,density,error_bound"
    assert lines[1].startswith("-1,-4,0.76")
    htext = hist.read_text()
    assert htext.splitlines()[0] == "bin_lo,bin_hi,count"


def test_out_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    code, out, _ = run_capture(
        capsys, ["bounds", "riddell", "--d", "-1", "--out", str(path)]
    )
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["results"]["bound"] == "6/7"


def test_domain_error_exit_code(capsys):
    code, _, err = run_capture(capsys, ["field-info", "--d", "12"])
    assert code == 1
    assert "squarefree" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["density", "nonsense"])
    assert exc.value.code == 2


def test_missing_d_is_domain_error(capsys):
    code, _, err = run_capture(capsys, ["density", "greedy"])
    assert code == 1
    assert "--d" in err


def test_field_info(capsys):
    code, out, _ = run_capture(capsys, ["field-info", "--d", "-163"])
    payload = json.loads(out)["results"]
    assert payload["discriminant"] == -163
    assert payload["class_number_one"] is True
    assert payload["smallest_nonunit_norms"] == [4, 9, 25]
