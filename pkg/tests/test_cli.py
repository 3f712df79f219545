import pytest

from spinflux import cli
from spinflux.algebra.matrices import Endo
from spinflux.utils.metadata import load_json
from spinflux.verify import report
from spinflux.verify.census import NO_SOLUTIONS
from spinflux.verify.theorems import all_theorems


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["verify", "--class", "Nope"],
        ["dump", "--class", ""],
        ["census", "--seed", "0"],
        ["verify", "--derivative", "nabla9"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv, tmp_path):
    assert cli.main([*argv, "--out", str(tmp_path)]) == cli.EXIT_USAGE


def test_help():
    assert cli.main(["--help"]) == cli.EXIT_OK


def test_catalog_is_deterministic(tmp_path):
    first, second = tmp_path / "first", tmp_path / "second"
    assert cli.main(["catalog", "--out", str(first)]) == cli.EXIT_OK
    assert cli.main(["catalog", "--out", str(second)]) == cli.EXIT_OK
    data = (first / "catalog.json").read_bytes()
    assert data == (second / "catalog.json").read_bytes()
    assert data.endswith(b"}\n")
    assert "G2_suc2rel" in load_json(first / "catalog.json")


def test_verify_report_matches_schema(tmp_path):
    cli.main(
        [
            "verify",
            "--class",
            "AH_SU3",
            "--derivative",
            "nabla1",
            "--samples",
            "3",
            "--seed",
            "4",
            "--out",
            str(tmp_path),
        ]
    )
    document = load_json(tmp_path / "verify.json")
    report.validate(document)
    assert document["config"]["classes"] == ["AH_SU3"]
    ids = {t["theorem"]["id"] for t in document["theorems"]}
    assert ids == {"su3.nabla1.plus", "su3.nabla1.minus"}
    names = [c["name"] for c in document["crosschecks"]]
    assert names == ["su3_obstruction", "su3_reflection"]


def test_census_text(tmp_path):
    argv = ["census", "--class", "AH_U2_1", "--format", "text"]
    assert cli.main([*argv, "--out", str(tmp_path)]) == cli.EXIT_OK
    assert NO_SOLUTIONS in (tmp_path / "census.txt").read_text()


def test_table1_prints(tmp_path, capsys):
    argv = ["table1", "--class", "AH_U2_1", "--out", str(tmp_path)]
    assert cli.main(argv) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("structure")
    assert out == (tmp_path / "table1.txt").read_text()


def test_calibrate(tmp_path):
    argv = ["calibrate", "--class", "Sasakian5", "--out", str(tmp_path)]
    assert cli.main(argv) == cli.EXIT_OK
    assert set(load_json(tmp_path / "calibration.json")) == {"5"}


def test_dump_matches_golden(tmp_path, fixtures_dir):
    argv = ["dump", "--class", "G2_NearlyParallel", "--out", str(tmp_path)]
    assert cli.main(argv) == cli.EXIT_OK
    target = tmp_path / "dump" / "G2_NearlyParallel" / "nabla1"
    golden = Endo.from_text((fixtures_dir / "omega3.txt").read_text())
    assert Endo.from_text((target / "form_omega3.txt").read_text()) == golden
    assert (target / "form_star_omega3.txt").exists()
    assert len(list(target.glob("K_e*.txt"))) == 7


def test_verify_g2_su2_type_one(tmp_path):
    argv = ["verify", "--class", "G2_su2_I", "--seed", "42"]
    assert cli.main([*argv, "--out", str(tmp_path)]) == cli.EXIT_OK
    document = load_json(tmp_path / "verify.json")
    report.validate(document)
    assert document["summary"]["ok"]
    ids = {t["theorem"]["id"] for t in document["theorems"]}
    assert {"su2_I.psi1", "su2_I.psi2"} <= ids


def test_verify_all_classes(tmp_path):
    argv = ["verify", "--seed", "42", "--out", str(tmp_path)]
    assert cli.main(argv) == cli.EXIT_OK
    summary = load_json(tmp_path / "verify.json")["summary"]
    assert summary["unexpected"] == []
    assert summary["crosschecks_failed"] == []
    assert summary["total"] == summary["as_expected"] == len(all_theorems())
