import json
import subprocess
import sys

import pytest

from excmut import cli
from excmut.errors import InvariantViolation, ParseError, UnsupportedFormat
from excmut.homext import HomExtQuiver
from excmut.quiver import linear_a, triangle_quiver


@pytest.fixture
def qfile(tmp_path):
    def make(obj, name="q.json"):
        p = tmp_path / name
        p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
        return str(p)
    return make


A2 = {"vertices": 2, "arrows": [[2, 1]]}
A3 = {"vertices": 3, "arrows": [[2, 1], [3, 2]]}
TRI = {"vertices": 3, "arrows": [[2, 1], [3, 1], [3, 2]]}


def run_json(argv):
    status, text, _ = cli.run(argv)
    assert status == 0, text
    return json.loads(text)


def test_parse_quiver_file(qfile):
    assert cli.parse_quiver_file(qfile(A2)) == linear_a(2)
    assert cli.parse_quiver_file(qfile(TRI)) == triangle_quiver()
    with pytest.raises(ParseError):
        cli.parse_quiver_file(qfile({"vertices": 2}))
    with pytest.raises(ParseError, match="line 2"):
        cli.parse_quiver_file(qfile('{"vertices": 2,\n "arrows": [[2 1]]}'))
    with pytest.raises(ParseError):
        cli.parse_quiver_file("/nonexistent/q.json")


def test_enumerate(qfile):
    out = run_json(["excseq", "--quiver", qfile(A2), "--enumerate"])
    assert out["count"] == 3


def test_mutate_triangle_quiver(qfile):
    path = qfile(TRI)
    out = run_json(["mutate", "--quiver", path, "--sequence", "P1,P2,P3", "--index", "1"])
    assert out["after"] == ["P2", "S2", "P3"]
    out = run_json(["mutate", "--quiver", path, "--sequence", "P1,P2,P3", "--index", "2"])
    assert out["dims"][2] == [1, 0, 1]
    back = run_json(["mutate", "--quiver", path, "--sequence", "P2,S2,P3", "--index", "1", "--inverse"])
    # P1 is simple here, so it may be printed as S1
    assert back["dims"] == [[1, 0, 0], [1, 1, 0], [2, 1, 1]]


def test_place_p1_trace(qfile):
    out = run_json(["place", "--quiver", qfile(A2), "--sequence", "P2"])
    assert out["rules"] == ["P1"]
    assert [(c["module"], c["degree"]) for c in out["C"]] == [("S1", 0), ("S2", 0)]
    assert all(out["verified"].values())


def test_homext_dot_and_json(qfile):
    path = qfile(A2)
    status, text, _ = cli.run(["homext", "--quiver", path, "--sequence", "S1,P2", "--format", "dot"])
    assert status == 0 and text.startswith("digraph {") and 'label="m"' in text
    out = run_json(["homext", "--quiver", path, "--sequence", "S2,S1"])
    assert out["arrows"] == [{"decoration": "x", "from": 2, "to": 1}]


def test_silting_and_cluster(qfile):
    path = qfile(A2)
    out = run_json(["silting", "--quiver", path, "--sequence", "S1[0],P2[1]"])
    assert out["silting"] and out["order"] == ["S1", "P2"]
    out = run_json(["silting", "--quiver", path, "--sequence", "S2,S1"])
    assert out["silting"] and [s["degree"] for s in out["summands"]] == [0, 1]
    out = run_json(["cluster", "--quiver", path, "--sequence", "S1[0],P2[0]", "--m", "1"])
    assert out["m_cluster_tilting"]


def test_complements_degree_sorted(qfile):
    path = qfile(A2)
    out = run_json(["complements", "--quiver", path, "--sequence", "P2[0]", "--m", "2"])
    degrees = [c["degree"] for c in out["complements"]]
    assert degrees == sorted(degrees) and len(degrees) == 3
    assert out["triangles"][-1]["in_D"] is False
    out = run_json(["complements", "--quiver", path, "--sequence", "P2[0]", "--window=-2..3"])
    assert len(out["complements"]) == 7


def test_module_names(qfile):
    q = linear_a(2)
    assert cli.resolve_module(q, "P_2").dim == (1, 1)
    assert cli.resolve_module(q, "1:1").label() == "P2"
    assert cli.resolve_stalk(q, "S1[-2]").shift == -2
    for bad in ("P3", "Q1", "2:2", "1:1:1"):
        status, _, _ = cli.run(["excseq", "--quiver", qfile(A2), "--sequence", bad])
        assert status == 1
    # a dimension vector shared by several indecomposables is refused
    kron = qfile({"vertices": 2, "arrows": [[1, 2], [1, 2]]}, "k.json")
    status, text, _ = cli.run(["excseq", "--quiver", kron, "--sequence", "1:1"])
    assert status == 1


def test_exit_codes(qfile, monkeypatch):
    path = qfile(A2)
    assert cli.run(["indec", "--quiver", qfile({"vertices": 2}, "bad.json")])[0] == 1
    assert cli.run(["indec", "--quiver", path, "--format", "xml"])[0] == 1
    assert cli.run(["indec", "--quiver", path, "--format", "dot"])[0] == 1
    assert cli.run(["nonsense", "--quiver", path])[0] == 1
    assert cli.run(["mutate", "--quiver", path, "--sequence", "S1,P2", "--index", "2"])[0] == 1
    assert cli.run(["complements", "--quiver", path, "--sequence", "P2[0]"])[0] == 1

    def broken(q, args):
        raise InvariantViolation("W", "made up")

    monkeypatch.setitem(cli.HANDLERS, "indec", broken)
    status, text, _ = cli.run(["indec", "--quiver", path])
    assert status == 2 and "made up" in text


def test_emit_report():
    assert cli.emit_report({"b": 1, "a": [2]}) == cli.emit_report({"a": [2], "b": 1})
    assert cli.emit_report(HomExtQuiver((), ()), "dot") == "digraph {\n}\n"
    with pytest.raises(UnsupportedFormat):
        cli.emit_report({"a": 1}, "dot")
    with pytest.raises(UnsupportedFormat):
        cli.emit_report({"a": 1}, "yaml")


def test_reports_are_byte_stable(qfile, tmp_path):
    path = qfile(A3)
    args = ["complements", "--quiver", path, "--sequence", "P3[0],S1[0]", "--m", "2"]
    assert cli.run(args)[1] == cli.run(args)[1]
    out = tmp_path / "r.json"
    assert cli.main(args + ["--out", str(out)]) == 0
    assert out.read_text() == cli.run(args)[1]


def test_verify_all(qfile):
    out = run_json(["verify-all", "--quiver", qfile(A3), "--max-m", "2"])
    assert out["all_passed"] and len(out["suites"]) == 12


def test_module_entry_point(qfile):
    proc = subprocess.run([sys.executable, "-m", "excmut", "indec", "--quiver", qfile(A2)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert sorted(r["module"] for r in json.loads(proc.stdout)) == ["P2", "S1", "S2"]


DYNKIN_FILES = {
    "A1": {"vertices": 1, "arrows": []},
    "A2": A2,
    "A3": {"vertices": 3, "arrows": [[1, 2], [3, 2]]},
    "A4": {"vertices": 4, "arrows": [[2, 1], [3, 2], [4, 3]]},
    "D4": {"vertices": 4, "arrows": [[2, 1], [3, 1], [4, 1]]},
}


@pytest.mark.parametrize("name", list(DYNKIN_FILES))
def test_no_invariant_failures_up_to_rank_four(name, qfile):
    path = qfile(DYNKIN_FILES[name], f"{name}.json")
    assert cli.run(["verify-all", "--quiver", path, "--max-m", "1"])[0] == 0
    assert cli.run(["indec", "--quiver", path])[0] == 0
    seqs = run_json(["excseq", "--quiver", path, "--enumerate"])["sequences"]
    for labels in seqs[:10]:
        assert cli.run(["place", "--quiver", path, "--sequence", ",".join(labels[:-1])])[0] in (0, 1)
        assert cli.run(["homext", "--quiver", path, "--sequence", ",".join(labels)])[0] == 0


def test_report_labels_round_trip(qfile):
    path = qfile(DYNKIN_FILES["A4"], "a4.json")
    assert cli._split("S4,M(0,1,1,0),P2[1]") == ["S4", "M(0,1,1,0)", "P2[1]"]
    for labels in run_json(["excseq", "--quiver", path, "--enumerate"])["sequences"]:
        out = run_json(["excseq", "--quiver", path, "--sequence", ",".join(labels)])
        assert out["sequence"] == labels and out["complete"]
