import json

import pytest

from curvesing.cli import main
from curvesing.commands import Options
from curvesing.corpus import CorpusCase, load_corpus, run_corpus
from curvesing.documents import parse_document
from curvesing.errors import ParseError

CASES = load_corpus()


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def germ(f, p=5, point="origin", vars=("S", "T"), t=None):
    return {"field": {"char": p, "ext_degree": 1, "transcendental": t, "root_depth": 0},
            "vars": list(vars), "f": f, "point": point}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_corpus_passes():
    results = run_corpus(CASES, Options(), workers=4)
    bad = [(r.name, r.error, r.mismatches) for r in results if r.status != "pass"]
    assert not bad
    assert len(results) == len(CASES) >= 40


def test_corpus_results_sorted_and_tagged():
    results = run_corpus(CASES, workers=3)
    assert [r.name for r in results] == sorted(c.name for c in CASES)
    for c in CASES:
        assert set(c.expect) <= set(c.provenance)
        if "DERIVED" in c.provenance.values():
            assert c.oracle


def test_corpus_case_validation():
    doc = {"name": "x", "kind": "germ", "input": germ("S*T"), "expect": {"jac": 1}, "provenance": {}}
    with pytest.raises(ParseError):
        CorpusCase.from_json(doc)
    doc["provenance"] = {"jac": "DERIVED"}
    with pytest.raises(ParseError):
        CorpusCase.from_json(doc)


@pytest.mark.parametrize("case", CASES, ids=lambda c: c.name)
def test_document_round_trip(case):
    d = parse_document(case.input, case.kind)
    again = parse_document(d.to_json(), case.kind)
    assert again == d
    assert again.to_json() == d.to_json()


def test_exit_code_success_and_json(tmp_path, capsys):
    f = write(tmp_path, "node.json", germ("S*T"))
    code, out, _ = run(capsys, "jac", f, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["rows"][0]["jac"] == 1 and doc["status"] == 0
    assert doc["environment"]["backend"] in ("compiled", "python")


def test_text_output(tmp_path, capsys):
    f = write(tmp_path, "cusp.json", germ("S^2+T^3", 3))
    code, out, _ = run(capsys, "delta", f)
    assert code == 0 and "status: 0" in out


def test_infinite_is_a_string(tmp_path, capsys):
    f = write(tmp_path, "double.json", germ("(S+T)^2*S", 3))
    code, out, _ = run(capsys, "jac", f, "--format", "json")
    assert code == 0
    assert json.loads(out)["rows"][0]["jac"] == "inf"


def test_exit_code_parse_error(tmp_path, capsys):
    f = write(tmp_path, "bad.json", germ("S+*T"))
    assert run(capsys, "jac", f)[0] == 2
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    assert run(capsys, "jac", str(p))[0] == 2
    assert run(capsys, "jac", str(tmp_path / "missing.json"))[0] == 2


def test_exit_code_extension_required(tmp_path, capsys):
    doc = germ("Y^2-X^3-t", 3, {"ideal": ["Y", "X^3+t"]}, ("X", "Y"), "t")
    f = write(tmp_path, "opt.json", doc)
    assert run(capsys, "delta", f)[0] == 3
    assert run(capsys, "gdelta", f, "--max-depth", "0")[0] == 3
    code, out, _ = run(capsys, "gdelta", f, "--format", "json")
    assert code == 0 and json.loads(out)["rows"][0]["delta"] == 1


def test_exit_code_not_stabilized(tmp_path, capsys):
    f = write(tmp_path, "deep.json", germ("S^30+T^31", 7))
    code, _, err = run(capsys, "jac", f, "--jet-max", "16")
    assert code == 4 and "Nmax=16" in err


def test_exit_code_mismatch(tmp_path, capsys):
    case = {"name": "wrong", "kind": "germ", "input": germ("S*T"),
            "expect": {"jac": 2}, "provenance": {"jac": "TRIVIAL"}}
    d = tmp_path / "cases"
    d.mkdir()
    write(d, "wrong.json", case)
    code, out, _ = run(capsys, "corpus", "run", "--dir", str(d))
    assert code == 1 and "FAIL  wrong" in out
    spec = {"field": {"char": 3, "ext_degree": 1, "transcendental": None, "root_depth": 0},
            "f": "T^2-S^3-u*S^2", "special": "0", "samples": "all", "param": "u", "bound": 0}
    code, out, _ = run(capsys, "family", write(tmp_path, "fam.json", spec), "--format", "json")
    assert code == 1 and json.loads(out)["extra"]["verdict"] is False


def test_empty_germ_list(tmp_path, capsys):
    f = write(tmp_path, "empty.json", {"p": 7, "germs": []})
    code, out, _ = run(capsys, "rigidity", f, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and all(v["satisfied"] for v in doc["verdicts"]) and doc["rows"] == []


def test_pencil_command(capsys):
    code, out, _ = run(capsys, "pencil", "--p", "5", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and (doc["rows"][0]["jac"], doc["rows"][0]["delta"]) == (15, 6)
    code, _, err = run(capsys, "pencil", "--p", "3", "--field",
                       '{"char": 3, "ext_degree": 2, "transcendental": null, "root_depth": 0}', "--c", "a")
    assert code == 2 and "DegeneratePencilParameter" in err


def test_output_is_byte_identical(tmp_path, capsys):
    f = write(tmp_path, "spec.json", {"p": 5, "germs": [germ("S*T"), germ("S^2+T^3")]})
    a = run(capsys, "rigidity", f, "--format", "json", "--workers", "1")[1]
    b = run(capsys, "rigidity", f, "--format", "json", "--workers", "4")[1]
    assert a == b


def test_corpus_list(capsys):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0 and out.split() == sorted(c.name for c in CASES)


def test_corpus_run_only(capsys):
    code, out, _ = run(capsys, "corpus", "run", "--only", "node-p", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] == doc["total"] >= 4
