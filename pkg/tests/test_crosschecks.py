from spinflux.verify.crosschecks import (
    CROSSCHECKS,
    af03_crosscheck,
    crosschecks_for,
    killing_identity_check,
    su3_obstruction_check,
    su3_reflection_check,
    translated_relations,
)


def test_translated_relation_matches_engine_relation():
    rel = translated_relations()
    assert rel["corrected"] * 2 == rel["target"]
    assert rel["literal"] * 2 != rel["target"]


def test_af03():
    result = af03_crosscheck(points=4, seed=3)
    assert result.passed, result.to_dict()
    assert result.details["dictionary_matches"] is True
    assert result.details["literal_matches"] is False
    assert result.details["engine_sufficient"] is True


def test_killing_identity():
    result = killing_identity_check()
    assert result.passed
    assert result.details["septet_dim"] == 7


def test_su3_obstruction():
    result = su3_obstruction_check()
    assert result.passed, result.to_dict()
    assert result.to_dict()["obstruction"]
    assert result.details["emptiness"] == "certified"


def test_crosschecks_registered_per_class():
    assert set(CROSSCHECKS) == {"G2_NearlyParallel", "AH_SU3"}
    assert crosschecks_for(["Sasakian5", "AH_SU2"]) == []


def test_su3_reflection():
    result = su3_reflection_check()
    assert result.passed, result.to_dict()
    assert result.details == {"defects": [], "swaps_eigenlines": True}
    assert [c.name for c in crosschecks_for(["AH_SU3"])] == [
        "su3_obstruction",
        "su3_reflection",
    ]
