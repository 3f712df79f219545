import pytest

from spinflux.algebra import symring
from spinflux.errors import UnknownClassError
from spinflux.geometry.catalog import CLASS_IDS
from spinflux.verify.theorems import (
    Claim,
    all_theorems,
    get_theorem,
    theorems_for,
)


def test_ids_are_unique():
    ids = [t.id for t in all_theorems()]
    assert len(ids) == len(set(ids))


def test_every_class_has_records():
    for cid in CLASS_IDS:
        records = theorems_for(cid)
        assert records
        assert {t.class_id for t in records} == {cid}


@pytest.mark.parametrize("spec", all_theorems(), ids=lambda t: t.id)
def test_record_texts_parse(spec):
    for text, name in spec.relations:
        if spec.expect == "pass":
            assert symring.degree_in(symring.parse(text), name) >= 1
    for value in spec.assumptions.values():
        symring.parse(value)
    for text in spec.side_conditions:
        symring.parse(text)
    if spec.expected_difference:
        symring.parse(spec.expected_difference[1])


def test_sign_variants_come_in_pairs():
    ids = {t.id for t in all_theorems()}
    for tid in ids:
        if tid.endswith(".plus"):
            assert tid.removesuffix(".plus") + ".minus" in ids
        elif tid.endswith("+") and not tid.startswith("suc2rel."):
            assert tid[:-1] + "-" in ids


def test_necessary_records_are_not_equivalences():
    for t in all_theorems():
        if t.claim == Claim.NECESSARY:
            assert not t.iff


def test_get_theorem():
    spec = get_theorem("su3.nabla1.plus")
    assert spec.class_id == "AH_SU3"
    assert spec.iff
    assert spec.to_dict()["relations"] == [
        {"relation": "2*(q-1)*A - a*(B-1)", "isolates": "A"}
    ]


def test_note_only_serialized_when_present():
    assert "note" not in get_theorem("su3.nabla1.plus").to_dict()
    assert get_theorem("su3.nabla2+").to_dict()["note"]


def test_unknown_records():
    with pytest.raises(UnknownClassError):
        get_theorem("nope.nabla1")
    with pytest.raises(UnknownClassError, match="Unknown geometry class"):
        theorems_for("Sasakian9")


@pytest.mark.parametrize("kind", ["I", "II", "III"])
def test_psi_i_records_are_constructions(kind):
    for i in (1, 2):
        spec = get_theorem(f"su2_{kind}.psi{i}")
        assert spec.construction
        assert spec.expect == "pass"
        assert not spec.note


def test_psi_i_relations_keep_the_printed_four():
    spec = get_theorem("su2_I.psi1")
    assert [name for _, name in spec.relations] == ["A1", "A2", "A3", "p"]
    assert spec.relations[3][0] == "2*p*A2 + q*A3 - (b)*(B-1)/4"
    # Type III only has the s = 0 branch.
    assert get_theorem("su2_III.psi2").relations[0] == ("B - 1", "B")
