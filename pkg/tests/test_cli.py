import io
import json
import subprocess
import sys

import pytest

from reflexsimplex.cli import CHECK_FAILED, OK, USAGE, run
from reflexsimplex.families import make_Qn, make_Rn
from reflexsimplex.polytope import LatticePolytope, dumps


def call(*argv):
    buf = io.StringIO()
    try:
        code = run(list(argv), buf)
    except SystemExit as exc:
        code = exc.code
    return code, buf.getvalue()


def js(*argv):
    code, text = call(*argv)
    return code, json.loads(text) if text.strip() else None


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)
    return _write


@pytest.fixture
def q4(write):
    return write("q4.json", dumps(make_Qn(4)))


class TestVerbs:
    def test_family_qn3(self):
        code, out = js("family", "qn", "--n", "3")
        assert code == OK
        assert out["vertices"] == [[-1, 0], [1, -2], [1, 1]]
        assert {(tuple(h["a"]), h["b"]) for h in out["inequalities"]} == {((1, 0), 1), ((-1, 2), 1), ((-1, -1), 1)}

    def test_delta_q4(self, q4):
        code, text = call("delta", "--in", q4)
        assert code == OK and json.loads(text) == {"delta": [1, 11, 11, 1]}

    def test_delta_reciprocity(self, q4):
        assert js("delta", "--in", q4, "--reciprocity") == (OK, {"delta": [1, 11, 11, 1]})

    def test_delta_validate(self, q4):
        code, out = js("delta", "--in", q4, "--validate")
        assert code == OK and all(c["ok"] for c in out["checks"].values())

    def test_ehrhart(self, q4):
        code, out = js("ehrhart", "--in", q4, "--max-k", "3")
        assert code == OK and out["counts"] == {"0": 1, "1": 15, "2": 65, "3": 175}

    def test_eulerian(self):
        assert js("eulerian", "--n", "4")[1]["eulerian"] == [1, 11, 11, 1]
        assert js("eulerian", "--n", "4", "--method", "descents")[1]["eulerian"] == [1, 11, 11, 1]

    def test_verify_volume(self):
        code, out = js("verify", "--theorem", "volume", "--n", "6")
        assert code == OK and out["pass"] and "720" in json.dumps(out["witness"])

    @pytest.mark.parametrize("theorem", ["selfdual", "delta-eulerian", "rntilde", "pyramid", "volume"])
    def test_verify_all(self, theorem):
        assert call("verify", "--theorem", theorem, "--n", "3")[0] == OK

    def test_reflexive_and_dual(self, q4, write):
        assert js("is-reflexive", "--in", q4)[1]["reflexive"]
        code, out = js("dual", "--in", q4)
        assert code == OK and LatticePolytope.from_json(out) == LatticePolytope([[-x for x in v] for v in make_Qn(4).vertices])
        assert call("self-dual", "--in", q4)[0] == OK

    def test_not_reflexive_exit_1(self, write):
        assert call("is-reflexive", "--in", write("r3.json", dumps(make_Rn(3))))[0] == CHECK_FAILED

    def test_equiv(self, write):
        a = write("a.json", dumps(make_Qn(3)))
        b = write("b.json", dumps(LatticePolytope([(0, 0), (1, 0), (0, 1)])))
        assert call("equiv", "--in1", a, "--in2", a)[0] == OK
        assert js("equiv", "--in1", a, "--in2", b) == (CHECK_FAILED, {"equivalent": False, "map": None})

    def test_pretty(self, q4):
        code, text = call("delta", "--in", q4, "--pretty")
        assert code == OK and text.strip() == "1 + 11z + 11z^2 + z^3"
        assert call("--pretty", "family", "qn", "--n", "2")[1].startswith("qn n=2")


class TestTriangulationVerbs:
    def test_check_tri_explicit(self, write):
        poly = write("p.json", {"vertices": [[0, 0], [2, 0], [2, 1]]})
        tri = write("t.json", {"points": [[0, 0], [1, 0], [2, 0], [2, 1]], "cells": [[0, 1, 3], [1, 2, 3]],
                               "heights": [0, -1, 0, 0]})
        code, out = js("check-tri", "--poly", poly, "--tri", tri)
        assert code == OK and out["checks"] == {"covering": True, "uses_all_points": True, "unimodular": True,
                                                "flag": True, "regular": True}

    def test_check_tri_failing(self, write):
        poly = write("p.json", {"vertices": [[0, 0], [2, 0], [2, 1]]})
        tri = write("t.json", {"points": [[0, 0], [1, 0], [2, 0], [2, 1]], "cells": [[0, 2, 3]]})
        assert call("check-tri", "--poly", poly, "--tri", tri)[0] == CHECK_FAILED
        code, out = js("check-tri", "--poly", poly, "--tri", tri, "--allow-sub-configuration")
        assert out["checks"]["covering"] and not out["checks"]["unimodular"] and code == CHECK_FAILED

    def test_search_round_trip(self, write):
        poly = write("r2.json", dumps(make_Rn(2)))
        code, out = js("search-rfu", "--poly", poly)
        assert code == OK and out["result"] == "found" and out["seed"] == 0
        tri = write("cert.json", out)
        code, chk = js("check-tri", "--poly", poly, "--tri", tri)
        assert code == OK and chk["pass"] and chk["checks"]["regular"]

    def test_search_absent(self, write):
        poly = write("r2.json", dumps(make_Rn(2)))
        code, out = js("search-rfu", "--poly", poly, "--trials", "0")
        assert code == CHECK_FAILED and out["result"] == "absent"


class TestRoundTrip:
    @pytest.mark.parametrize("kind,n", [("qn", 2), ("qn", 5), ("rn", 3), ("rntilde", 4)])
    def test_family_output_is_input(self, kind, n, write):
        _, out = js("family", kind, "--n", str(n))
        path = write("fam.json", out)
        assert call("delta", "--in", path)[0] == OK
        assert call("ehrhart", "--in", path)[0] == OK

    def test_dual_output_is_input(self, q4, write):
        _, out = js("dual", "--in", q4)
        path = write("dual.json", out)
        _, back = js("dual", "--in", path)
        assert LatticePolytope.from_json(back) == make_Qn(4)


class TestFaults:
    def test_missing_file(self, tmp_path):
        assert call("delta", "--in", str(tmp_path / "nope.json"))[0] == USAGE

    def test_bad_json(self, write):
        assert call("delta", "--in", write("bad.json", "{vertices: "))[0] == USAGE

    def test_not_an_object(self, write):
        assert call("delta", "--in", write("list.json", [[1, 2]]))[0] == USAGE

    def test_missing_vertices(self, write, capsys):
        assert call("delta", "--in", write("x.json", {"dim": 2}))[0] == USAGE
        assert "vertices" in capsys.readouterr().err

    def test_wrong_dims(self, write, capsys):
        path = write("x.json", {"dim": 3, "vertices": [[1, 1], [1, -2], [-1, 0]]})
        assert call("delta", "--in", path)[0] == USAGE
        assert "dim" in capsys.readouterr().err

    def test_ragged_vertices(self, write):
        assert call("delta", "--in", write("x.json", {"vertices": [[1, 1], [1], [-1, 0]]}))[0] == USAGE

    def test_tri_dimension_mismatch(self, write, capsys):
        poly = write("p.json", dumps(make_Qn(4)))
        tri = write("t.json", {"points": [[0, 0], [1, 0], [0, 1]], "cells": [[0, 1, 2]]})
        assert call("check-tri", "--poly", poly, "--tri", tri)[0] == USAGE
        assert "points" in capsys.readouterr().err

    def test_dual_non_reflexive(self, write):
        assert call("dual", "--in", write("r.json", dumps(make_Rn(2))))[0] == USAGE

    def test_unknown_verb(self):
        assert call("frobnicate")[0] == USAGE

    def test_bad_n(self):
        assert call("family", "qn", "--n", "1")[0] == USAGE


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "reflexsimplex", "family", "qn", "--n", "3"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0 and json.loads(proc.stdout)["vertices"][0] == [-1, 0]
    proc = subprocess.run([sys.executable, "-m", "reflexsimplex", "delta", "--in", str(tmp_path / "none")],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 2 and "not found" in proc.stderr
