import json
import re

import jsonschema
import pytest
from click.testing import CliRunner

from fopkit.cli import main
from fopkit.library import builtin
from fopkit.printer import print_formula
from fopkit.report import SCHEMA
from fopkit.textformat import parse_structure

TRI = "struct T : graph { size = 3; E = {(0,1), (0,2), (1,0), (1,2), (2,0), (2,1)}; k = 1; }\n"
EMPTY3 = "struct A : graph { size = 3; E = {}; k = 1; }\n"
G = "struct G : graph { size = 3; E = {(0,1), (1,0)}; k = 2; }\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {"tri.fms": TRI, "empty3.fms": EMPTY3, "g.fms": G,
                       "bad.fml": "all x. E(x)\n",
                       "f.fml": "all x. ex y. E(x, y) | x = k\n",
                       "bit.fml": "ex x. ex y. BIT(x, y) & T(x)\n",
                       "comp.q": "query comp : graph -> graph arity 1 "
                                 "{ universe: true; E(x1,y1): !E(x1,y1); k: x1 = k; }\n"}.items():
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(*args):
    return CliRunner().invoke(main, list(args))


def mask(text):
    return re.sub(r"\d+\.\d+s\)", "Ts)", text)


def run_json(*args):
    result = run(*args, "--json")
    data = json.loads(result.output)
    jsonschema.validate(data, SCHEMA)
    assert {"ok": 0, "counterexample": 1, "error": 2}[data["verdict"]] == result.exit_code
    return result.exit_code, data


# -- eval --

def test_eval_triangle_false(files):
    result = run("eval", "--struct", files["tri.fms"], "--builtin", "IS")
    assert result.exit_code == 1 and result.output == "false\n"


def test_eval_empty_true_with_witness(files):
    result = run("eval", "--struct", files["empty3.fms"], "--builtin", "IS", "--witness")
    assert result.exit_code == 0
    assert result.output == "true\nf = (0, 1, 2)\n"


def test_eval_arity_error_position(files):
    result = run("eval", "--struct", files["empty3.fms"], "--formula", files["bad.fml"])
    assert result.exit_code == 2
    assert "line 1, column 8" in result.output


def test_eval_formula_file(files):
    code, data = run_json("eval", "--struct", files["g.fms"], "--formula", files["f.fml"])
    assert code == 0 and data["result"]["value"] is True


def test_eval_string(files):
    assert run("eval", "--string", "1011", "--builtin", "PARITY").exit_code == 0
    assert run("eval", "--string", "1001", "--builtin", "PARITY").exit_code == 1


def test_eval_vocab_mismatch(files):
    assert run("eval", "--struct", files["g.fms"], "--builtin", "PARITY").exit_code == 2


def test_eval_usage_error(files):
    assert run("eval", "--builtin", "IS").exit_code == 2


# -- apply / image --

def test_apply_padding_string():
    result = run("apply", "--builtin", "fop_padding", "--string", "10")
    assert result.exit_code == 0 and result.output == "101\n"


def test_apply_complement(files, tmp_path):
    out = tmp_path / "out.fms"
    result = run("apply", "--builtin", "fop_complement", "--struct", files["g.fms"],
                 "--output", str(out))
    assert result.exit_code == 0
    assert result.output == ("struct A : graph { size = 3; E = {(0,0), (0,2), (1,1), (1,2), "
                             "(2,0), (2,1), (2,2)}; k = 2; }\n")
    B = parse_structure(out.read_text())
    assert len(B.relation("E")) == 7


def test_apply_identity_byte_identical(files):
    result = run("apply", "--builtin", "id_query", "--struct", files["tri.fms"])
    assert result.output.split("{", 1)[1] == TRI.split("{", 1)[1]


def test_apply_query_file(files):
    result = run("apply", "--query", files["comp.q"], "--struct", files["empty3.fms"])
    assert result.exit_code == 0 and "(2,2)" in result.output


def test_apply_empty_universe(tmp_path, files):
    q = tmp_path / "none.q"
    q.write_text("query none : graph -> graph arity 1 "
                 "{ universe: false; E(x1,y1): E(x1,y1); k: x1 = k; }")
    result = run("apply", "--query", str(q), "--struct", files["g.fms"])
    assert result.exit_code == 2
    assert result.output.startswith("error:") and "universe" in result.output


def test_image():
    assert run("image", "--fop", "fop_padding", "--string", "101").output == "10\n"
    result = run("image", "--fop", "fop_padding", "--string", "100")
    assert result.exit_code == 1 and result.output == "none\n"


# -- verify --

def test_verify_reduction_ok():
    result = run("verify", "reduction", "--fop", "fop_complement", "--source", "IS",
                 "--target", "CLIQUE", "--max-size", "3")
    assert result.exit_code == 0
    assert mask(result.output) == "verify reduction: verified (sizes 1..3, 1570 checked, Ts)\n"


def test_verify_reduction_counterexample():
    result = run("verify", "reduction", "--fop", "fop_complement", "--source", "IS",
                 "--target", "IS", "--max-size", "3")
    assert result.exit_code == 1
    assert mask(result.output) == (
        "verify reduction: counterexample found (sizes 1..3, 4 checked, Ts)\n"
        "struct A : graph { size = 2; E = {}; k = 1; }\n"
        "  source member: true\n"
        "  image member: false\n"
        "image:\n"
        "struct B : graph { size = 2; E = {(0,0), (0,1), (1,0), (1,1)}; k = 1; }\n")
    assert parse_structure(result.output.splitlines()[1]).size == 2


def test_counterexample_feeds_back_into_eval(tmp_path):
    code, data = run_json("verify", "reduction", "--fop", "fop_complement", "--source", "IS",
                          "--target", "IS", "--max-size", "3")
    assert code == 1
    path = tmp_path / "ce.fms"
    path.write_text(data["counterexample"]["structure"])
    assert run("eval", "--struct", str(path), "--builtin", "IS").exit_code == 0
    path.write_text(data["counterexample"]["related"]["image"])
    assert run("eval", "--struct", str(path), "--builtin", "IS").exit_code == 1


def test_verify_reduction_jobs_independent():
    a = run_json("verify", "reduction", "--fop", "fop_complement", "--source", "IS",
                 "--target", "IS", "--max-size", "3", "--jobs", "2")[1]
    b = run_json("verify", "reduction", "--fop", "fop_complement", "--source", "IS",
                 "--target", "IS", "--max-size", "3")[1]
    assert a["counterexample"] == b["counterexample"]


def test_verify_budget_suggests_bound():
    result = run("verify", "reduction", "--fop", "fop_complement", "--source", "IS",
                 "--target", "CLIQUE", "--max-size", "6")
    assert result.exit_code == 2
    assert "try --max-size 4" in result.output
    code, data = run_json("verify", "reduction", "--fop", "fop_complement", "--source", "IS",
                          "--target", "CLIQUE", "--max-size", "6")
    assert data["error"]["suggested_max_size"] == 4


def test_verify_decomposition_subgraphiso_small():
    code, data = run_json("verify", "decomposition", "--case", "subgraphiso", "--max-size", "2")
    assert code == 0 and data["sizes"] == [1, 2]


def test_verify_decomposition_residue_false():
    code, data = run_json("verify", "decomposition", "--case", "subgraphiso", "--lam", "false",
                          "--max-size", "2")
    assert code == 1
    assert data["counterexample"]["memberships"] == {"target member": True, "sentence": False}


def test_verify_decomposition_clique_show():
    result = run("verify", "decomposition", "--case", "clique", "--simplify", "--show",
                 "--max-size", "2")
    assert result.exit_code == 0
    first = result.output.splitlines()[0]
    assert first == "true & (" + print_formula(builtin("PSI_CL")) + ") | !true & false"


def test_verify_condition_c():
    assert run("verify", "condition-c", "--query", "query_sgi_back", "--fop",
               "fop_clique_to_sgi", "--problem", "CLIQUE", "--max-size", "3").exit_code == 0
    assert run("--convention", "strict", "verify", "condition-c", "--query", "fop_complement",
               "--fop", "fop_complement", "--problem", "IS").exit_code == 0


def test_verify_characteristic():
    assert run("verify", "characteristic", "--fop", "fop_complement", "--text", "true",
               "--max-size", "3").exit_code == 0
    code, data = run_json("verify", "characteristic", "--fop", "fop_complement",
                          "--text", "false", "--max-size", "3")
    assert code == 1 and data["counterexample"]["structure"].startswith(
        "struct A : graph { size = 1;")
    code, data = run_json("verify-characteristic", "--fop", "fop_clique_to_sgi",
                          "--builtin", "BETA_SGI", "--max-size", "2", "--exhaustive")
    assert code == 1 and data["result"]["false_positives"] > 0


def test_verify_injective():
    assert run("verify", "injective", "--fop", "fop_padding", "--min-size", "2",
               "--max-size", "6").exit_code == 0
    assert run("verify", "injective", "--fop", "fop_complement", "--max-size", "2").exit_code == 0


def test_verify_unknown_name():
    result = run("verify", "reduction", "--fop", "nope", "--source", "IS", "--target", "IS")
    assert result.exit_code == 2 and "nope" in result.output


# -- dual --

def test_dual_complement_is_clique_text():
    result = run("dual", "--query", "fop_complement", "--builtin", "IS", "--simplify")
    assert result.exit_code == 0
    assert result.output == print_formula(builtin("PSI_CL")) + "\n"


def test_dual_identity_formula(files, tmp_path):
    out = tmp_path / "d.fml"
    result = run("dual", "--query", "id", "--formula", files["f.fml"], "--output", str(out))
    assert result.exit_code == 0
    assert result.output == "all x. true -> (ex y. true & (E(x, y) | x = k))\n"
    assert out.read_text() == result.output


def test_dual_bit_arity_two(files):
    result = run("dual", "--query", "fop_padding", "--formula", files["bit.fml"])
    assert result.exit_code == 2 and "BIT" in result.output


def test_dual_semantic_check():
    code, data = run_json("dual", "--query", "fop_padding", "--text",
                          "ex x. T(x) & x = max", "--semantic-check", "4")
    assert code == 0 and data["checked"] == 30 and data["notes"]


def test_json_schema_on_error():
    code, data = run_json("dual", "--query", "fop_padding", "--text", "ex x. BIT(x, x)")
    assert code == 2 and data["error"]["type"] == "UnsupportedNumericAtomError"


def test_builtins_listing():
    result = run("builtins")
    assert "fop_padding" in result.output.split()
