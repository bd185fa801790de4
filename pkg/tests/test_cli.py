import io
import json
from pathlib import Path

import pytest

from g2contact.cli import main

CASE1 = str(Path(__file__).resolve().parents[1] / "manifests" / "case1.json")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def reports(text):
    return [json.loads(line) for line in text.splitlines()]


def test_eval():
    assert run("eval", "--expr", "(+ 1 2)") == (0, "3\n")


def test_eval_parse_error_exits_2():
    assert run("eval", "--expr", "(+ 1 2")[0] == 2


def test_verify_noth():
    code, text = run("verify", "noth")
    reps = reports(text)
    assert code == 0 and len(reps) >= 3
    assert {r["status"] for r in reps} == {"pass"}
    assert {"noth.explicit.3t2", "noth.parametric.noth1", "noth.parametric.noth2"} <= \
        {r["check_id"] for r in reps}


def test_verify_tensors_standard():
    code, text = run("verify", "tensors", "--case", "standard")
    reps = {r["check_id"]: r for r in reports(text)}
    assert code == 0
    for key in ("locus.upsilon", "relation.upsilon", "relation.mu"):
        assert reps[f"tensors.standard.{key}"]["status"] == "pass"


def test_report_schema():
    _, text = run("verify", "noth")
    for rep in reports(text):
        assert set(rep) >= {"check_id", "status", "residual_summary", "elapsed_ms"}
        assert (rep["status"] == "pass") == (rep["residual_summary"] == "0")


def test_failing_residuals_are_reproducible_via_eval():
    code, text = run("verify", "tensors", "--case", "noth1")
    assert code == 1
    failing = [r for r in reports(text) if r["status"] == "fail"]
    assert failing
    for rep in failing:
        assert rep["residual_summary"] != "0"
        assert run("eval", "--expr", rep["residual_summary"]) == (0, rep["residual_summary"] + "\n")


def test_ordering_and_parallel_determinism(monkeypatch):
    _, one = run("verify", "tensors", "--case", "noth2")
    monkeypatch.setenv("GSEED_THREADS", "4")
    _, four = run("verify", "tensors", "--case", "noth2")
    strip = lambda text: [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in reports(text)]
    assert strip(one) == strip(four)
    ids = [r["check_id"] for r in reports(one)]
    assert ids == sorted(ids)


def test_verify_needs_case():
    assert run("verify", "diffeo")[0] == 2
    assert run("verify", "tensors", "--case", "noth9")[0] == 2


def test_verify_manifest():
    code, text = run("verify", "manifest", CASE1)
    assert code == 0 and len(reports(text)) == 5


def test_bad_manifest_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"charts": {"T": {"coords": ["a"]}}, "charts": {}}')
    assert run("verify", "manifest", str(bad))[0] == 2
    assert run("correspond", "--map", str(bad))[0] == 2
    assert run("verify", "manifest", str(tmp_path / "missing.json"))[0] == 2


@pytest.mark.parametrize("shift, t", [
    (None, "(/ (* (* 1/2 (^ cbrt12 2)) r) (+ (^ r 3) 2))"),
    ("0", "(/ (* (* 1/2 (^ cbrt12 2)) r) (+ (^ r 3) -3))"),
])
def test_correspond(shift, t):
    argv = ["correspond", "--map", CASE1] + (["--shift", shift] if shift else [])
    code, text = run(*argv)
    (rep,) = reports(text)
    assert code == 0 and rep["status"] == "pass" and rep["t"] == t
    assert rep["p11"] == ("(/ -2 (+ (^ r 3) -1))" if shift is None else "(/ -4 (+ (* 2 (^ r 3)) 3))")


def test_correspond_inverted_fiber_changes_recovery():
    code, text = run("correspond", "--map", CASE1, "--invert-fiber")
    (rep,) = reports(text)
    assert rep["t"] != "(/ (* (* 1/2 (^ cbrt12 2)) r) (+ (^ r 3) 2))"


def test_emit_structure_constants():
    code, text = run("emit", "structure-constants", "--theorem", "1", "--format", "json")
    rows = reports(text)
    assert code == 0 and rows
    assert {"i": "S1", "j": "S3", "k": "L2", "c": "-3"} in rows
    assert all(set(r) == {"i", "j", "k", "c"} for r in rows)


def test_emit_structure_constants_of_printed_theorem_fails():
    code, text = run("emit", "structure-constants", "--theorem", "2")
    assert code == 1 and reports(text)[0]["status"] == "error"


def test_emit_roots():
    code, text = run("emit", "roots", "--format", "json")
    roots = reports(text)
    assert code == 0 and len(roots) == 12
    assert sum(r["length"] == "short" for r in roots) == 6
    code, clock = run("emit", "roots", "--format", "txt")
    assert code == 0 and "L12" in clock and "S9" in clock


def test_dft_components():
    code, text = run("dft", "forward")
    comps = {r["coordinate"]: r["expr"] for r in reports(text)}
    assert code == 0 and comps["X"] == "(* -2 t)"
