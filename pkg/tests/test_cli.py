import io
import json
import subprocess
import sys

import pytest

from quiverkit.cli import main
from quiverkit.classify import ClassificationReport

C3 = "vertex v0\nvertex v1\nvertex v2\nedge f0 v0 v1\nedge f1 v1 v2\nedge f2 v2 v0\n"
LINE = "vertex v1\nvertex v2\nvertex v3\nedge f1 v1 v2\nedge f2 v2 v3\n"
C2X = "vertex v0\nvertex v1\nvertex w\nedge f0 v0 v1\nedge f1 v1 v0\nedge e v0 w\n"


@pytest.fixture
def write(tmp_path):
    def _write(text, name="g.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_classify_c3_json(write):
    code, out, _ = run(["classify", write(C3), "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    rep = doc["report"]
    assert rep["prime"] and not rep["primitive"]
    assert rep["noetherian_left"] and rep["noetherian_right"]
    assert doc["decomposition_mod_radical"] == [{"kind": "Cycle(3)",
                                                 "vertices": ["v0", "v1", "v2"]}]
    assert ClassificationReport.from_dict(rep).to_dict() == rep


def test_classify_line_text(write):
    code, out, _ = run(["classify", write(LINE)])
    assert code == 0
    assert "artinian: yes" in out and "semiprime: no" in out


def test_classify_malformed_reports_position(write):
    code, _, err = run(["classify", write("vertex a\nedge e a zz\n")])
    assert code == 2
    assert "line 2, column 10" in err


def test_missing_file_is_input_error(tmp_path):
    code, _, err = run(["classify", str(tmp_path / "nope.txt")])
    assert code == 2 and "cannot read" in err


def test_cycle_cap_exit_code(write):
    rose = "vertex u\n" + "".join(f"edge l{i} u u\n" for i in range(4))
    code, _, err = run(["classify", write(rose), "--cycle-cap", "3"])
    assert code == 3 and "cycle cap" in err


def test_eval_operations(write):
    c3, line = write(C3, "c3.txt"), write(LINE, "line.txt")
    assert run(["eval", c3, "mul", "f0.f1.f2", "f0"])[1] == "f0.f1.f2.f0\n"
    assert run(["eval", line, "radical-test", "f1"])[1] == "true\n"
    assert run(["eval", line, "radical-test", "v1"])[1] == "false\n"
    assert run(["eval", c3, "add", "v0 - v0"])[1] == "0\n"
    assert run(["eval", c3, "add", "f0", "2*f0"])[1] == "3*f0\n"
    assert run(["eval", c3, "peirce", "v0 + f0 + f1", "v0", "v1"])[1] == "f0\n"
    code, out, _ = run(["eval", c3, "mul", "f0", "f1", "--format", "json"])
    assert json.loads(out) == {"op": "mul", "result": "f0.f1"}


def test_eval_over_prime_field(write):
    c3 = write(C3)
    assert run(["eval", c3, "add", "1/2*f0", "--field", "fp:7"])[1] == "4*f0\n"


def test_eval_non_composable_is_parse_error(write):
    code, _, err = run(["eval", write(C3), "mul", "f1.f0", "f0"])
    assert code == 2 and "column 4" in err


def test_eval_precondition_errors(write):
    code, _, _ = run(["eval", write(C3), "peirce", "v0", "v0"])
    assert code == 4
    code, _, _ = run(["eval", write(C3), "mul", "v0"])
    assert code == 4


def test_cycle_embed():
    assert run(["cycle", "3", "embed", "v1"])[1] == "0, 0, 0\n0, 1, 0\n0, 0, 0\n"
    assert run(["cycle", "1", "embed", "f0"])[1] == "x\n"
    assert run(["cycle", "3", "embed", "f2"])[1] == "0, 0, 0\n0, 0, 0\nx, 0, 0\n"
    code, _, _ = run(["cycle", "3", "embed", "g0"])
    assert code == 2
    code, _, _ = run(["cycle", "0", "embed", "v0"])
    assert code == 4


def test_cycle_closure(write):
    m = write("1/x, 1/x\n1/x, 1/x\n", "m.txt")
    code, out, _ = run(["cycle", "2", "closure", m])
    assert code == 0
    assert "pair: (1, x^2)" in out and "round trip: verified" in out
    code, out, _ = run(["cycle", "2", "closure", m, "--format", "json"])
    doc = json.loads(out)
    assert doc["q"] == "x^2" and doc["round_trip"] is True


def test_cycle_closure_bad_matrix(write):
    code, _, err = run(["cycle", "2", "closure", write("1, 1\n1, 1/(x-x)\n", "m.txt")])
    assert code == 2 and "line 2" in err
    code, _, err = run(["cycle", "2", "closure", write("1, y\n1, 1\n", "m.txt")])
    assert code == 2 and "line 1, column 4" in err
    code, _, _ = run(["cycle", "3", "closure", write("1, 0\n0, 1\n", "m.txt")])
    assert code == 4


def test_export_dot(write):
    code, out, _ = run(["export-dot", write(C2X)])
    assert code == 0
    assert out.count("subgraph cluster_") == 1
    assert '"v0" -> "w" [label="e", style=dashed];' in out
    assert '"v0" -> "v1" [label="f0"];' in out
    _, out, _ = run(["export-dot", write("vertex u\n")])
    assert out == 'digraph E {\n  "u";\n}\n'
    _, out, _ = run(["export-dot", write("")])
    assert out == "digraph E {\n}\n"


def test_audit_command(write):
    code, out, _ = run(["audit", write(LINE)])
    assert code == 0 and out.rstrip().endswith("audit passed")
    code, out, _ = run(["audit", write(C2X), "--format", "json"])
    assert code == 0 and json.loads(out)["ok"]


def test_output_is_deterministic(write):
    path = write(C2X)
    first = run(["classify", path, "--format", "json"])[1]
    assert all(run(["classify", path, "--format", "json"])[1] == first for _ in range(3))


def test_module_entry_point(write):
    res = subprocess.run([sys.executable, "-m", "quiverkit", "cycle", "1", "embed", "f0.f0"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "x^2\n"


def test_bad_field_option(write):
    with pytest.raises(SystemExit):
        main(["classify", write(C3), "--field", "fp:4"], io.StringIO(), io.StringIO())
