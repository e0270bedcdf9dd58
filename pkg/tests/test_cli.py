import json
from pathlib import Path

import pytest

from multitwist import cli, report

DOCS = Path(__file__).resolve().parents[1] / "docs" / "examples"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_intersect_and_twist(capsys):
    code, out, _ = run(capsys, "intersect", "a1", "b1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["geometric"] == 1 and doc["schema"] == report.SCHEMA
    code, out, _ = run(capsys, "twist", "h", "--schema", "torus", "--twist", "v:1", "--format", "json")
    assert code == 0 and json.loads(out)["length"] >= 2


def test_x_function_example23(capsys):
    code, out, _ = run(capsys, "x-function", "a", "--schema", "example23", "--twist", "tC", "--measure", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["X"] == 2 and doc["formula"] == doc["measured"] == 8


def test_decompose_figure1(capsys):
    code, out, _ = run(capsys, "decompose", str(DOCS / "figure1_request.json"))
    assert code == 0
    assert out.count("<->") == 4 and "agrees" in out


def test_check_braid_exit_codes(capsys):
    assert run(capsys, "check-braid", "--ta", "a1:1", "--tb", "b1:1")[0] == 0
    code, out, _ = run(capsys, "check-braid", "--ta", "y12:1", "--tb", "g1:1")
    assert code == 1 and out.startswith("not-braided")
    assert run(capsys, "check-braid", str(DOCS / "abstract_request.json"))[0] == 0


def test_not_braided_prints_witness(capsys):
    code, out, _ = run(capsys, "decompose", "--ta", "a1:1", "--tb", "b1:2", "--no-oracle")
    assert code == 1 and "residue A: d_a1^1" in out


def test_factor_hom(capsys):
    code, out, _ = run(capsys, "factor-hom", str(DOCS / "b3_chain.json"), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["chains"] == [{"curves": ["a1", "b1"], "sign": 1}]


def test_factor_hom_rejection(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"n": 3, "images": [[["a", 1]], [["b", 1]]], "intersections": [["a", "b", 2]]}
                            ).replace('[[["a", 1]], [["b", 1]]]', '[{"components": [["a", 1]]}, {"components": [["b", 1]]}]'))
    code, out, _ = run(capsys, "factor-hom", str(p))
    assert code == 1 and "RelationFails" in out


def test_table(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 0 and [l.split()[0] for l in out.splitlines()[1:]] == ["T1", "T2", "T3", "T4", "T5"]


def test_verify_formulas_deterministic(capsys):
    args = ("verify-formulas", "--samples", "4", "--seed", "5", "--format", "json")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
    assert run(capsys, "verify-formulas", "--samples", "4", "--seed", "3")[0] == 0


def test_verify_reports_failure_with_token(capsys):
    code, out, _ = run(capsys, "verify-formulas", "--replay", "0:367", "--checks", "hidden")
    assert code == 1 and "FAIL 0:367" in out


def test_canonicalize(capsys):
    _, a, _ = run(capsys, "canonicalize", "x1-@0,x2-@0", "--unoriented")
    _, b, _ = run(capsys, "canonicalize", "g1", "--unoriented")
    assert a == b


@pytest.mark.parametrize("argv", [
    ("intersect", "zz", "a1"),
    ("twist", "a1", "--twist", "nope:1"),
    ("decompose",),
    ("decompose", "/nonexistent.json"),
    ("intersect", "a1", "b1", "--schema", "no-such-corpus"),
    ("verify-formulas", "--samples", "0"),
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("multitwist: error")


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError):
        report.render(report.document("table", rows=[]), "xml")
