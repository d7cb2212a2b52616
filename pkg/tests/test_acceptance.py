"""Acceptance criteria 1-10, each at its stated tolerance (all exact).

One PASS/FAIL line per criterion is printed at the end of the run.  Failing
criteria list the failing sub-checks; see the decisions ledger for analysis.
"""

import subprocess
import sys
import time
from pathlib import Path

from equichar import verify

GOLDEN = Path(__file__).parent / "golden"
LINES: dict = {}


def _record(result):
    LINES[result.number] = result.line()
    detail = "\n".join(f"  {label}: {info}" for label, info in result.failures())
    print(result.line())
    return detail


def _check(result):
    detail = _record(result)
    assert result.ok, "\n" + detail


def test_criterion_1_round_trip():
    res = verify.criterion_1(samples=500)
    assert res.seconds < 60
    _check(res)


def test_criterion_2_relations():
    _check(verify.criterion_2(max_n=4))


def test_criterion_3_dimensions():
    _check(verify.criterion_3(max_n=4, max_d=6))


def test_criterion_4_minimality():
    _check(verify.criterion_4(max_n=3))


def test_criterion_5_maps():
    _check(verify.criterion_5())


def test_criterion_6_stable_classes():
    _check(verify.criterion_6())


def test_criterion_7_transport():
    _check(verify.criterion_7(max_n=3))


def test_criterion_8_su():
    _check(verify.criterion_8())


def test_criterion_9_stems():
    _check(verify.criterion_9())


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "equichar.cli", *argv], capture_output=True)


def test_criterion_10_cli():
    res = verify.CriterionResult(10, "CLI goldens and verify --suite all")
    start = time.perf_counter()
    cases = [(["relations", "--n", "2"], "relations_n2.txt"),
             (["presentation", "--family", "u", "--rank", "2"], "presentation_u2.txt"),
             (["map", "--kind", "tensor-line", "--rank", "1"], "map_tensor_line.txt")]
    for argv, golden in cases:
        proc = _cli(*argv)
        res.add(" ".join(argv) + " matches golden", proc.stdout == (GOLDEN / golden).read_bytes())
    t0 = time.perf_counter()
    proc = _cli("verify", "--suite", "all")
    elapsed = time.perf_counter() - t0
    res.add("verify --suite all exits 0", proc.returncode == 0, f"exit {proc.returncode}")
    res.add("verify --suite all under 5 minutes", elapsed < 300, f"{elapsed:.1f}s")
    res.seconds = time.perf_counter() - start
    _check(res)
