import json
from pathlib import Path

import jsonschema
import pytest

import cohoforge
from cohoforge.groups.spec import name_matching_hom, realize
from cohoforge.groups.core import identity_hom
from cohoforge.scenarios import (
    SCHEMA,
    ExtendedTierRequired,
    ScenarioReport,
    scenario_census,
    scenario_cyclic_tower,
    scenario_metacyclic,
    scenario_quaternion,
    scenario_splitting_without_vanishing,
)

SCHEMA_DOC = json.loads((Path(cohoforge.__file__).parent / "schema" / "report.schema.json").read_text())


def _stable(rep):
    d = rep.as_dict()
    d.pop("wall_ms")
    return d


def _validate(rep):
    doc = json.loads(json.dumps(rep.as_dict()))
    jsonschema.validate(doc, SCHEMA_DOC)
    assert doc["schema"] == SCHEMA


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (5, 2)])
def test_cyclic_tower(p, n):
    rep = scenario_cyclic_tower(p, n)
    assert rep.passed, rep.as_dict()
    assert len(rep.checks) == 3
    _validate(rep)


def test_cyclic_tower_negative_control():
    # the identity map keeps the degree-two generator alive
    Q = realize("C4")
    rep = scenario_cyclic_tower(2, 3, phi=identity_hom(Q))
    assert [c.passed for c in rep.checks] == [True, True, False]


def test_cyclic_tower_rejects_bad_params():
    with pytest.raises(ValueError):
        scenario_cyclic_tower(7, 2)
    with pytest.raises(ValueError):
        scenario_cyclic_tower(2, 1)


@pytest.mark.parametrize("p,n,d", [(2, 2, 1), (2, 2, 2), (2, 3, 1)])
def test_metacyclic(p, n, d):
    rep = scenario_metacyclic(p, n, d)
    assert rep.passed, rep.as_dict()
    assert len(rep.checks) == 5
    _validate(rep)


def test_metacyclic_extended_gate():
    with pytest.raises(ExtendedTierRequired):
        scenario_metacyclic(3, 2, 1, 1)


def test_quaternion_and_determinism():
    a, b = scenario_quaternion(), scenario_quaternion()
    assert a.passed and len(a.checks) == 7
    assert _stable(a) == _stable(b)
    _validate(a)


def test_quaternion_negative_control():
    HC, Q = realize("H32xC2"), realize("Q8")
    phi = name_matching_hom(HC, Q, "c->1")
    rep = scenario_quaternion(phi_product=phi)
    failed = [c.desc for c in rep.checks if not c.passed]
    assert len(failed) == 1 and "H x C2" in failed[0]
    assert rep.params["phi"] == "substituted"


def test_splitting_without_vanishing():
    rep = scenario_splitting_without_vanishing()
    assert rep.passed and len(rep.checks) == 6
    assert rep.notes
    _validate(rep)


def test_census_subset_and_result_shape():
    from cohoforge.groups.catalog import small_groups

    groups = [G for G in small_groups() if G.label in ("C2", "V4", "S3", "C4", "A4", "D12")]
    rep = scenario_census(2, 4, groups=groups)
    assert rep.passed
    rows = rep.result["groups"]
    assert rows["V4"]["classifier"] and rows["V4"]["witness_degree"] is None
    assert rows["C4"]["witness_degree"] == 2
    assert rows["S3"]["classifier"] and rows["D12"]["classifier"]
    _validate(rep)
    with pytest.raises(ValueError):
        scenario_census(5)


def test_cache_gives_identical_reports(tmp_path):
    from cohoforge.cache import ResolutionCache

    cache = ResolutionCache(tmp_path)
    cold = scenario_cyclic_tower(2, 3, cache=cache)
    assert any(tmp_path.iterdir())
    warm = scenario_cyclic_tower(2, 3, cache=cache)
    assert _stable(cold) == _stable(warm)


def test_report_rendering_roundtrip():
    rep = ScenarioReport("x", {"a": 1})
    rep.check("t", (1, 2), [1, 2])
    assert rep.passed and rep.summary() == "x: 1/1 checks pass"
    rep.check("f", 1, 2)
    assert not rep.passed
    _validate(rep)
