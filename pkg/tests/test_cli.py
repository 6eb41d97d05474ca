import io as stdio
import json

import pytest

from graphcurv.cli import run


def call(argv):
    out = stdio.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


@pytest.fixture
def theta_file(tmp_path):
    path = tmp_path / "t.json"
    assert call(["generate", "theta", "--variant", "pl_minimal", "-o", str(path)])[0] == 0
    return str(path)


def test_generate_then_curvature(theta_file):
    code, out = call(["curvature", theta_file])
    assert code == 0
    assert "K_total=3.0" in out.splitlines()


def test_curvature_json(theta_file):
    code, out = call(["curvature", theta_file, "--json"])
    doc = json.loads(out)
    assert doc["K_total"] == 3.0 and doc["b1"] == 2


def test_morse_ok_and_degenerate(theta_file):
    code, out = call(["morse", theta_file, "--dir", "0,1,0"])
    assert code == 0
    doc = json.loads(out)
    assert doc["M"] == [1, 2] and doc["w"] == 3 and doc["chi_check"] == -1
    code, _ = call(["morse", theta_file, "--dir", "0,0,1"])
    assert code == 3


def test_scan_is_deterministic(theta_file, monkeypatch):
    a = call(["scan", theta_file, "--samples", "20000", "--seed", "7"])[1]
    b = call(["scan", theta_file, "--samples", "20000", "--seed", "7", "--threads", "1"])[1]
    monkeypatch.setenv("GRAPHCURV_THREADS", "3")
    c = call(["scan", theta_file, "--samples", "20000", "--seed", "7"])[1]
    assert a == b == c
    doc = json.loads(a)
    assert json.loads(json.dumps(doc)) == doc
    assert doc["samples"] == 20000 and doc["seed"] == 7


def test_tightness_and_report(theta_file):
    code, out = call(["tightness", theta_file, "--probes", "200"])
    assert code == 0 and json.loads(out)["classification"] == "TypeC"
    code, out = call(["report", theta_file, "--samples", "1000"])
    assert code == 0 and "gap = 0" in out


def test_link(tmp_path, capsys):
    path = str(tmp_path / "h.json")
    assert call(["generate", "hopf", "--eps", "0.25", "-o", path])[0] == 0
    code, out = call(["link", path, "--edge-cycles", "0,1;3,4"])
    assert code == 0 and abs(json.loads(out)["linking_number"]) == 1
    # fundamental cycles share edges, so they are not disjoint curves
    code, out = call(["link", path, "--cycles", "0,1"])
    assert code == 1 and "intersect" in capsys.readouterr().err


def test_exit_codes(tmp_path, theta_file):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [{"id": 0, "pos": [0, 0, 0]}], "edges": '
                   '[{"id": 0, "ends": [0, 0], "polyline": [[0, 0, 0], [1, 0, 0]]}]}')
    assert call(["curvature", str(bad)])[0] == 2
    (tmp_path / "junk.json").write_text("not json")
    assert call(["curvature", str(tmp_path / "junk.json")])[0] == 2
    assert call(["curvature", str(tmp_path / "missing.json")])[0] == 2
    with pytest.raises(SystemExit) as exc:
        call(["curvature", theta_file, "--bogus"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        call(["morse", theta_file, "--dir", "1,2"])
    assert exc.value.code == 64


def test_generate_to_stdout_round_trips():
    from graphcurv import io

    code, out = call(["generate", "suspension", "--n", "4", "--variant", "braided", "--word", "1,-2"])
    assert code == 0
    g = io.loads(out)
    assert len(g.edges) == 4
