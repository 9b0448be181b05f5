"""CLI surface: exit codes, report schema, determinism."""

import json

from siegelcert.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_cuspidal_full_run(capsys):
    code, out = _run(capsys, "cuspidal", "--n", "8")
    assert code == 0
    doc = json.loads(out)
    assert doc["family"] == "cuspidal"
    assert doc["salem"]["coeffs"] == [1, -2, 1, -2, 1, -2, 1, -2, 1]
    assert abs(doc["salem"]["entropy"] - 0.6901) < 1e-3
    assert doc["matrix"] == {"bound": 4, "dim": 28, "trace": 2}
    assert doc["config"]["version"] and doc["config"]["seed"] == 0
    assert doc["config"]["root_tol"] > 0
    principal = doc["principal"]
    vs = [v for v in doc["verdicts"] if v["section"] == principal]
    assert [v["verdict"] for v in vs] == ["SiegelCertified", "SiegelCertified"]
    d0 = doc["sections"][principal]["delta"]["center"]
    assert abs(complex(*d0) - (0.6098 + 0.7925j)) < 5e-4
    for v in vs:
        w = complex(*v["witness"]["delta"]["center"])
        assert abs(w - (-0.7478 + 0.6640j)) < 5e-4


def test_cuspidal_no_salem_factor_exit_1(capsys):
    code, out = _run(capsys, "cuspidal", "--n", "1")
    assert code == 1
    doc = json.loads(out)
    assert doc["error"]["stage"] == "NoSalemFactor"


def test_cuspidal_strict_adds_evidence(capsys):
    code, out = _run(capsys, "cuspidal", "--n", "8", "--strict")
    doc = json.loads(out)
    ev = doc["evidence"]["strict"]
    assert ev["resultant_degree"] == 16
    assert isinstance(ev["irreducible"], bool)
    assert doc["config"]["strict"] is True


def test_three_lines_n1_report(capsys):
    code, out = _run(capsys, "three-lines", "--m", "2", "--n", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["matrix"] == {"bound": 4, "dim": 13, "trace": 2}
    per_section = {}
    for fp in doc["fixed_points"]:
        per_section.setdefault(fp["section"], []).append(fp)
    for recs in per_section.values():
        assert len(recs) == 4  # N + 3


def test_three_lines_excluded_orbit(capsys):
    code, out = _run(capsys, "three-lines", "--m", "1", "--n", "1")
    assert code == 1
    assert "excluded" in json.loads(out)["error"]["message"]


def test_three_lines_n2_report(capsys):
    code, out = _run(capsys, "three-lines", "--m", "1,2", "--n", "1,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["parameters"]["N"] == 2
    assert doc["matrix"]["bound"] == 5


def test_theorem1_k1_usage_error(capsys):
    code = main(["theorem1", "--k", "1"])
    captured = capsys.readouterr()
    assert code == 1
    assert "delegated" in captured.err


def test_theorem1_k2_runs_cuspidal(capsys):
    code, out = _run(capsys, "theorem1", "--k", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["family"] == "cuspidal"
    vs = [v for v in doc["verdicts"]
          if v["section"] == doc["principal"]
          and v["verdict"] == "SiegelCertified"]
    assert len(vs) == 2


def test_report_determinism(capsys):
    _, out1 = _run(capsys, "cuspidal", "--n", "8", "--seed", "7")
    _, out2 = _run(capsys, "cuspidal", "--n", "8", "--seed", "7")
    assert out1 == out2
    _, out3 = _run(capsys, "three-lines", "--m", "2", "--n", "1")
    _, out4 = _run(capsys, "three-lines", "--m", "2", "--n", "1")
    assert out3 == out4


def test_report_written_to_out(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out = _run(capsys, "cuspidal", "--n", "8", "--out", str(path))
    assert code == 0
    assert path.read_text() == out


def test_matrix_dump_quad(capsys):
    code, out = _run(capsys, "matrix", "--family", "quad", "--n", "2,3,4")
    assert code == 0
    head = out.splitlines()[0].split()
    assert head[0] == "H" and len(head) == 1 + (2 + 3 + 4 + 3)


def test_matrix_dump_three_lines(capsys):
    code, out = _run(capsys, "matrix", "--family", "three-lines",
                     "--m", "2", "--n", "1")
    assert code == 0
    assert len(out.splitlines()) == 1 + 13


def test_matrix_dump_bad_args(capsys):
    code, out = _run(capsys, "matrix", "--family", "quad", "--n", "2,3")
    assert code == 1
