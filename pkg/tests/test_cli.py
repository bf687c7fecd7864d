import io
import json
import re
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

import cohoforge
from cohoforge.cli import EXIT_BUDGET, EXIT_CHECK, EXIT_OK, EXIT_PARSE, EXIT_REALIZE, main

SCHEMA_DOC = json.loads((Path(cohoforge.__file__).parent / "schema" / "report.schema.json").read_text())


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json", "--no-cache")
    doc = json.loads(text)
    for d in doc if isinstance(doc, list) else [doc]:
        jsonschema.validate(d, SCHEMA_DOC)
    return code, doc


def test_dims_text_and_json_agree():
    code, text = run("dims", "Q8", "--max-degree", "8", "--no-cache")
    assert code == EXIT_OK
    m = re.search(r"dims: \(([\d,]+)\)", text)
    assert m and m.group(1) == "1,2,2,1,1,2,2,1,1"
    code, doc = run_json("dims", "Q8", "--max-degree", "8")
    assert doc["result"]["dims"] == [int(x) for x in m.group(1).split(",")]


def test_fingerprint():
    code, doc = run_json("fingerprint", "Q8")
    assert code == EXIT_OK
    assert doc["result"]["dec_dims"] == [1, 2, 2, 1, 0]
    code, text = run("fingerprint", "Q8", "--no-cache")
    assert "dec_dims: (1,2,2,1,0)" in text


def test_inflate():
    code, doc = run_json("inflate", "H32", "Q8", "--degree", "4")
    assert code == EXIT_OK and doc["result"]["classes"][0]["vanishes"]
    code, doc = run_json("inflate", "H32xC2", "Q8", "--map", "g->g,h->h,c->g^2", "--degree", "4")
    row = doc["result"]["classes"][0]
    assert not row["vanishes"] and row["decomposable"] and not row["decomposable_in_target"]
    code, doc = run_json("inflate", "H32xC2", "Q8", "--map", "c->1", "--degree", "4")
    assert doc["result"]["classes"][0]["vanishes"]


def test_classify():
    code, doc = run_json("classify", "S3")
    assert doc["result"]["generated_in_degree_one"] and doc["result"]["complement_order"] == 3
    code, doc = run_json("classify", "C5", "--p", "2")
    assert doc["result"]["status"] == "p-does-not-divide-order"


def test_repro_and_threads():
    code, doc = run_json("repro", "cyclic_tower", "--threads", "3")
    assert code == EXIT_OK and len(doc) == 3
    code, doc = run_json("repro", "metacyclic", "--p", "2", "--n", "2", "--d", "2")
    assert code == EXIT_OK and doc["params"]["d"] == 2
    code, text = run("repro", "quaternion", "--no-cache")
    assert code == EXIT_OK and "7/7 checks pass" in text


@pytest.mark.parametrize(
    "argv,code",
    [
        (["dims", "Q7"], EXIT_PARSE),
        (["dims", "C4", "--p", "4"], EXIT_PARSE),
        (["dims", "C4", "--max-degree", "0"], EXIT_PARSE),
        (["dims", "S3", "--strategy", "minimal"], EXIT_PARSE),
        (["frobnicate"], EXIT_PARSE),
        (["inflate", "H32xC2", "Q8"], EXIT_PARSE),
        (["inflate", "C4", "C8"], EXIT_PARSE),
        (["dims", "C4000"], EXIT_BUDGET),
        (["dims", "C2xC2xC2xC2xC2xC2xC2xC2xC2xC2xC2"], EXIT_BUDGET),
        (["repro", "metacyclic", "--p", "3", "--n", "2"], EXIT_BUDGET),
        (["dims", "pres{a,b | a^2000, b^2000}"], EXIT_REALIZE),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(*argv, "--no-cache")[0] == code
    if code != EXIT_OK:
        assert capsys.readouterr().err


def test_failed_check_exit_code(monkeypatch):
    from cohoforge import cli
    from cohoforge.scenarios import ScenarioReport

    def broken(*a, **k):
        rep = ScenarioReport("quaternion", {})
        rep.check("forced", 1, 0)
        return rep

    monkeypatch.setattr(cli, "scenario_quaternion", broken)
    code, text = run("repro", "quaternion", "--no-cache")
    assert code == EXIT_CHECK and "FAIL forced" in text


def test_cache_dir_is_used(tmp_path):
    code, _ = run("dims", "D8", "--cache-dir", str(tmp_path))
    assert code == EXIT_OK and list(tmp_path.glob("*.cores"))


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "cohoforge", "dims", "C4", "--no-cache"], capture_output=True, text=True)
    assert out.returncode == 0 and "dims: (1,1,1,1,1)" in out.stdout
