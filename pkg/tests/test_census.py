import pytest

from spinflux.verify.census import (
    NO_SOLUTIONS,
    OUT_OF_SCOPE,
    TABLE,
    CensusRow,
    PrintedRow,
    parallel_spinor_census,
    render_table,
)


@pytest.fixture
def rows():
    return [
        CensusRow(
            "n=6 SU(3)",
            "AH_SU3",
            PrintedRow(2, 1, None, True, 2),
            n=2,
            n_c=2,
            mark=True,
            kappa_ok=True,
        ),
        CensusRow(
            "n=6 U(2)_1",
            "AH_U2_1",
            PrintedRow(None, None, None, None, None),
            n=0,
            n_c=0,
            mark=None,
            kappa_ok=None,
        ),
    ]


def test_agreement(rows):
    assert rows[0].agreement == {"N": True, "N^c": True, "eigenspinor": True}
    disagree = CensusRow(
        "n=6 SU(2)",
        "AH_SU2",
        PrintedRow(2, None, None, False, 4),
        n=2,
        n_c=2,
        mark=False,
        kappa_ok=None,
    )
    assert disagree.agreement["N^c"] is False


def test_render_table(rows):
    table = render_table(rows)
    lines = table.splitlines()
    assert lines[0].split()[0] == "structure"
    assert "2 [2]" in lines[1]
    assert OUT_OF_SCOPE in lines[1]
    assert "yes [yes]" in lines[1]
    assert NO_SOLUTIONS in lines[2]
    assert lines[2].endswith("0 [-]")
    assert table.endswith("\n")


def test_row_serialization(rows):
    data = rows[0].to_dict()
    assert data["computed"]["N"] == 2
    assert data["computed"]["N(Ric^T=0)"] == OUT_OF_SCOPE
    assert data["printed"]["N^c"] == 2


def test_class_without_solutions():
    (row,) = parallel_spinor_census(["AH_U2_1"], seed=5)
    assert row.class_id == "AH_U2_1"
    assert row.no_solutions
    assert NO_SOLUTIONS in render_table([row])


def test_table_labels_are_unique():
    labels = [label for label, _, _ in TABLE]
    assert len(labels) == len(set(labels))


@pytest.mark.parametrize(
    "label, cid, printed", TABLE, ids=[label for label, _, _ in TABLE]
)
def test_census_matches_printed_row(label, cid, printed):
    (row,) = parallel_spinor_census([cid], seed=0)
    assert row.label == label
    assert row.printed == printed
    assert row.agreement["N^c"], (row.n_c, printed.n_c)
    assert row.agreement["eigenspinor"], (row.mark, printed.mark)
    assert all(r["passed"] for r in row.records)
    if printed.n_c is None:
        assert row.no_solutions
