import io
import json
import shutil
import subprocess

import pytest

from lgcompact.catalog import CATALOG, is_model_spec, parse_wci, resolve
from lgcompact.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    return doc


# periods


def test_periods_polynomial():
    assert run("periods", "(x+y+1)^3/(x*y)", "--terms", "4")[1].split() == ["1", "6", "90", "1680"]


def test_periods_model():
    assert run("periods", "dp2", "--terms", "3")[1].split() == ["1", "12", "420"]


def test_periods_constant():
    assert run("periods", "5", "--terms", "3")[1].split() == ["1", "5", "25"]


def test_periods_json():
    doc = run_json("periods", "covering:2,3", "--terms", "2")
    assert doc["periods"] == [1, 120]


def test_periods_errors():
    code, out, err = run("periods", "x + * y")
    assert code == 2 and out == "" and "position 4" in err
    assert run("periods", "1/(x+y)")[0] == 2
    assert run("periods", "x", "--terms", "21")[0] == 3
    assert run("periods", "x", "--terms", "21", "--max-terms", "30")[0] == 0


@pytest.mark.parametrize("name", list(CATALOG))
def test_engines_byte_identical(name):
    a = run("periods", name, "--terms", "7", "--engine", "naive")[1]
    b = run("periods", name, "--terms", "7", "--engine", "pruned")[1]
    assert a == b


# polytope


def test_polytope_dual():
    out = run("polytope", "dp2", "--op", "dual")[1]
    assert set(out.split()) == {"(1,0)", "(0,1)", "(-1/2,-1/2)"}


def test_polytope_reflexive():
    assert run("polytope", "dp3", "--op", "reflexive")[1].strip() == "true"
    assert run("polytope", "dp1", "--op", "reflexive")[1].strip() == "false"


def test_polytope_boundary_points():
    doc = run_json("polytope", "covering:2,3", "--op", "boundary-points")
    assert doc["count"] == 3


def test_polytope_vertex_list_and_origin():
    doc = run_json("polytope", "1,0; 0,1; -1,-1", "--op", "dual")
    assert len(doc["polytope"]["vertices"]) == 3
    assert run("polytope", "0,0; 1,0; 0,1", "--op", "dual")[0] == 4
    assert run("polytope", "0,0; 1,1", "--op", "newton")[0] == 2


def test_polytope_dimension_cap():
    assert run("polytope", "covering:3,2", "--max-dim", "3")[0] == 3


# nef and givental


def test_nef_examples():
    out = run("nef", "1,1,1,1,3;6")[1]
    assert "I_0={1} I_1={3,1,1,1}  nice+strong" in out
    out = run("nef", "1,1,2,3;6")[1]
    assert "I_1={3,2,1}" in out and "nice+strong" in out
    code, out, _ = run("nef", "2,2;2")
    assert code == 0 and "no nice partition" in out


def test_nef_cap():
    assert run("nef", ",".join(["1"] * 22) + ";2,2")[0] == 3


def test_givental():
    doc = run_json("givental", "covering:2,3")
    assert len(doc["dual_matrix"]) == 4
    assert doc["dual_matrix"][-1]["entries"] == ["-1/3"] * 3
    code, out, _ = run("givental", "dp2")
    assert "dual matrix" in out


# verify


def test_verify_hodge_example():
    doc = run_json("verify", "covering:2,3", "--conjecture", "2")
    assert doc["conjecture2"]["kappa"] == 52 and doc["conjecture2"]["holds"]


def test_verify_components_examples():
    assert run_json("verify", "dp1", "--conjecture", "1")["conjecture1"]["routes"] == [1, 1, 1]
    assert run_json("verify", "covering:3,2", "--conjecture", "1")["conjecture1"]["routes"] == [4, 4, 4]


def test_verify_all_exits_zero():
    code, out, _ = run("verify", "all")
    assert code == 0
    assert out.count("holds") >= 13


def test_verify_disagreement_exit():
    # a wrong Hodge number makes the routes disagree
    assert run("verify", "dp3", "--conjecture", "2", "--hodge", "9")[0] == 5


def test_verify_unsupported():
    assert run("verify", "covering:3,2", "--conjecture", "2")[0] == 6
    assert run("verify", "wci:1,1,1,1,1;3")[0] == 6


# dynkin and catalog


def test_dynkin_text():
    assert run("dynkin", "dp3")[1].strip() == "label E6~, arms {2,2,2}, 7 nodes"
    assert "E7~" in run("dynkin", "dp2")[1] and "8 nodes" in run("dynkin", "dp2")[1]


def test_dynkin_dot():
    out = run("dynkin", "dp1", "--format", "dot")[1]
    assert out.startswith("graph dp1 {")
    assert out.count("[label=") == 9 and out.count(" -- ") == 8


def test_dynkin_unknown():
    assert run("dynkin", "dp4")[0] == 2


def test_catalog():
    out = run("catalog")[1]
    for name in ["dp1", "dp2", "dp3", "covering:2,3", "covering:4,1", "covering:3,2", "covering:2,2"]:
        assert name in out
    assert "(equivalent to dp2)" in out
    doc = json.loads(run("catalog", "--json")[1])
    provs = {v["provenance"] for e in doc["entries"] for v in e["expected"].values()}
    assert provs <= {"published:worked-example", "derived:closed-form",
                     "derived:ledger", "standard:hodge"}


def test_meta_goes_to_stderr():
    code, out, err = run("periods", "x", "--terms", "2", "--meta")
    assert out == "1\n0\n"
    assert json.loads(err)["command"] == "periods"


def test_deterministic_output():
    for argv in [("verify", "all", "--format", "json"), ("catalog", "--json"),
                 ("givental", "dp1", "--format", "json")]:
        assert run(*argv)[1] == run(*argv)[1]


def test_model_spec_parsing():
    assert is_model_spec("covering:7,2") and is_model_spec("wci:1,1;")
    assert not is_model_spec("x+y")
    assert resolve("sextic-double-solid")[2].name == "covering:2,3"
    assert parse_wci("1,1,1,2;4").degrees == (4,)
    with pytest.raises(ValueError):
        parse_wci("1,1,a;4")


@pytest.mark.skipif(shutil.which("lgcompact") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["lgcompact", "periods", "dp3", "--terms", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.split() == ["1", "6", "90"]
