import json

import pytest

from codetower.cli import EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_codes_json(capsys):
    code, out, _ = run(capsys, "codes", "@delta4+", "--format", "json", "--dual")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "kleinian" and data["weight_enumerator"] == [1, 0, 6, 0, 9]
    assert data["self_dual"] is True


def test_codes_recover(capsys):
    code, out, _ = run(capsys, "codes", "@e8", "--recover", "--format", "json")
    assert code == 0
    assert json.loads(out)["recovery"]["mode"]


def test_codes_from_file(tmp_path, capsys):
    p = tmp_path / "c.code"
    p.write_text("binary 4\n1111\n")
    code, out, _ = run(capsys, "codes", str(p), "--equivalent", str(p), "--format", "json")
    assert code == 0 and json.loads(out)["equivalence"] is not None


def test_json_is_deterministic(capsys):
    a = run(capsys, "lattices", "@L+(e8)", "--format", "json", "--precision", "4")[1]
    b = run(capsys, "lattices", "@L+(e8)", "--format", "json", "--precision", "4")[1]
    assert a == b
    data = json.loads(a)
    assert data["determinant"] == 4 and data["theta"][1] == [2, 112]


def test_classify_plus(capsys):
    code, out, _ = run(capsys, "lattices", "@E8^2", "--classify", "plus", "@D16+", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"]["outcome"] == "ExceptionalPair" and data["verdict_verified"]


def test_census_text(capsys):
    code, out, _ = run(capsys, "lattices", "@E8", "--census")
    assert code == 0 and "census" in out


def test_qseries(capsys):
    code, out, _ = run(capsys, "qseries", "chVLplus", "--lattice", "@E8", "--precision", "3", "--format", "json")
    assert code == 0 and "120" in out
    assert run(capsys, "qseries", "twisted", "--rank", "16", "--dim-t", "256", "--precision", "2")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "no-such-check"],
        ["verify"],
        ["codes", "@nothing"],
        ["codes", "/nonexistent/file"],
        ["qseries", "eta", "--scale", "3"],
        ["qseries", "twisted"],
        ["lattices", "@E8", "--classify", "sideways", "@E8"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_bogus_command_exits_64(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == EXIT_USAGE


def test_parse_error_exit(tmp_path, capsys):
    p = tmp_path / "bad.code"
    p.write_text("binary 4\n11x1\n")
    code, _, err = run(capsys, "codes", str(p))
    assert code == EXIT_USAGE and "line 2" in err


def test_hypothesis_violation_exit(tmp_path, capsys):
    assert run(capsys, "codes", "@e8", "--recover", "--coset", "1")[0] == EXIT_USAGE
    code, _, err = run(capsys, "codes", "@e8", "--recover", "--coset", "11111111")
    assert code == 1 and "HypothesisViolation" in err
    p = tmp_path / "odd.lat"
    p.write_text("lattice 1 1\n1\nform 1\n")
    code, _, err = run(capsys, "lattices", str(p), "--classify", "plus", str(p))
    assert code == 1 and "even" in err


def test_verify_with_report(tmp_path, capsys):
    d = tmp_path / "rep"
    code, out, _ = run(capsys, "verify", "kleinian-recovery", "code-constructions", "--precision", "4", "--report-dir", str(d), "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [r["status"] for r in data["reports"]] == ["pass", "pass"]
    for name in ("checks.csv", "theta.csv", "check_times.png", "theta.png", "characters.png"):
        assert (d / name).stat().st_size > 0
    rows = (d / "checks.csv").read_text().splitlines()
    assert rows[0] == "check,status,wall_ms" and len(rows) == 3
