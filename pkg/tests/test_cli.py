"""Command line: goldens, exit codes and the cache flag."""

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from equichar.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv,golden", [
    (["relations", "--n", "2"], "relations_n2.txt"),
    (["presentation", "--family", "u", "--rank", "2"], "presentation_u2.txt"),
    (["presentation", "--family", "u", "--rank", "2", "--json"], "presentation_u2.json"),
    (["map", "--kind", "tensor-line", "--rank", "1"], "map_tensor_line.txt"),
    (["map", "--kind", "tensor-line", "--rank", "1", "--json"], "map_tensor_line.json"),
])
def test_goldens(argv, golden):
    code, text = run(*argv)
    assert code == 0
    assert text == (GOLDEN / golden).read_text(encoding="utf-8")


def test_relations_rank_one():
    assert run("relations", "--n", "1") == (0, "u^2 = u\n")


def test_tensor_line_u_image():
    code, text = run("map", "--kind", "tensor-line", "--rank", "1")
    assert "u |-> y - u(x)1 - 1(x)u + 2 u(x)u" in text


def test_dims_columns_agree():
    code, text = run("dims", "--family", "u", "--rank", "2", "--max-degree", "2")
    assert code == 0
    rows = [line.split() for line in text.splitlines()[1:]]
    assert [r[2] == r[3] for r in rows] == [True] * 3
    assert rows[1][2] == "5"


def test_decompose_expr_and_json():
    assert run("decompose", "--n", "2", "--expr", "w1^2 + w2^2") == (0, "-2 e2 + e1^2\n")
    code, text = run("decompose", "--n", "2", "--expr", "w1*u2 + w2*u1", "--json")
    assert json.loads(text)["text"] == "g_{1,1}"


def test_decompose_file(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("u1 + u2\n", encoding="utf-8")
    assert run("decompose", "--n", "2", "--input", str(f)) == (0, "u\n")


def test_basis_and_stems():
    code, text = run("basis", "--n", "1", "--degree", "2")
    assert text == "e1^2  (and x times it)\ne1^2*u\n"
    assert run("stems", "--mul", "u_2s", "x/u_2s^2") == (0, "x/u_2s\n")
    assert run("stems", "--mul", "a_s", "y/a_s") == (0, "1 - 1/2 x\n")


def test_usage_errors(capsys):
    assert run("presentation", "--family", "su", "--rank", "1")[0] == 2
    assert run("decompose", "--n", "2")[0] == 2
    assert run("bogus")[0] == 2
    assert run("decompose", "--n", "2", "--expr", "w1")[0] == 2
    assert "error" in capsys.readouterr().err


def test_verify_exit_code_reflects_failures():
    code, text = run("verify", "--suite", "stems")
    assert code == 0 and text.startswith("[PASS] 9.")


def test_cache_flag(tmp_path):
    code, _ = run("--cache", str(tmp_path), "relations", "--n", "2")
    assert code == 0
    assert any(tmp_path.rglob("*.json"))


def test_env_cache(tmp_path):
    env = {"EQUICHAR_CACHE": str(tmp_path), "PATH": ""}
    proc = subprocess.run([sys.executable, "-m", "equichar.cli", "relations", "--n", "1"], capture_output=True,
                          text=True, env=env)
    assert proc.returncode == 0 and proc.stdout == "u^2 = u\n"
    assert any(tmp_path.rglob("*.json"))
