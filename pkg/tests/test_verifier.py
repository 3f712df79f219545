from dataclasses import replace
from fractions import Fraction

import pytest

from spinflux.algebra import symring
from spinflux.errors import RelationError
from spinflux.geometry import catalog
from spinflux.geometry.catalog import ConnectionParams
from spinflux.geometry.curvature import CurvatureContext
from spinflux.spin.calibration import build_rep
from spinflux.spin.spinrep import SpinorSpace
from spinflux.utils.sampling import RationalSampler
from spinflux.verify.theorems import all_theorems, get_theorem
from spinflux.verify.verifier import (
    prepare,
    killing_conditions,
    reduce_all,
    solve_point,
    triangularize,
    verify_all,
    verify_necessity,
    verify_theorem,
)

A, B, q = symring.gen("A"), symring.gen("B"), symring.gen("q")


def test_triangularize_reduces_by_earlier_relations():
    system = triangularize([(A - B * 2, "A"), (A + B - 3, "B")])
    assert system[0] == (A - B * 2, "A")
    relation, name = system[1]
    assert name == "B"
    assert symring.symbols_of(relation) == {"B"}
    c1, c0 = symring.linear_parts(relation, "B")
    assert symring.constant_value(c0) == -symring.constant_value(c1)


def test_triangularize_rejects_nonlinear_relation():
    with pytest.raises(RelationError, match="does not isolate A"):
        triangularize([(A * A - B, "A")])


def test_triangularize_rejects_relation_reduced_away():
    with pytest.raises(RelationError):
        triangularize([(A - B, "A"), (A - B, "B")])


def test_triangularize_divides_out_earlier_leading_coefficients():
    p = symring.gen("p")
    system = triangularize(
        [
            ((p + q) * A - 1, "A"),
            ((p + q) * B - 1, "B"),
            (p * A + q * B - 2, "p"),
        ]
    )
    # Reduction gives -(p + q)^2; one factor is the lead of the A relation.
    assert system[2] == (-(p + q), "p")


def test_reduce_all_keeps_ratios():
    assert reduce_all([A, A * B], [(A - B, "A")]) == [B, B * B]
    assert reduce_all([A, symring.ONE], [(q * A - 1, "A")]) == [
        symring.ONE,
        q,
    ]


def test_solve_point():
    system = triangularize([(A - B * 2, "A"), (B - 1, "B")])
    point = solve_point(system, {})
    assert point["B"] == symring.gaussian(1)
    assert point["A"] == symring.gaussian(2)


def test_solve_point_degenerate_lead():
    assert solve_point([(q * A - 1, "A")], {"q": Fraction(0)}) is None
    point = solve_point([(q * A - 1, "A")], {"q": Fraction(1, 2)})
    assert point["A"] == symring.gaussian(2)


@pytest.mark.parametrize(
    "theorem_id",
    [
        "sas5.nabla1.line+",
        "sas5.nabla1.line-",
        "su3.nabla1.plus",
        "su3.nabla1.minus",
        "so3.generic+",
        "so3.generic-",
        "np.branch1",
        "su2_I.psi1",
        "su2_II.psi2",
        "su2_III.psi1",
        "su2_III.psi2",
    ],
)
def test_printed_constructions_hold(theorem_id):
    report = verify_theorem(
        get_theorem(theorem_id), samples=4, sampler=RationalSampler(7)
    )
    assert report.status == "pass", report.to_dict()
    assert report.as_expected
    assert report.subbundle_dim > 0
    assert report.sufficiency.passed


def test_report_serialization():
    spec = get_theorem("su3.nabla1.plus")
    (report,) = verify_all([spec], samples=3, seed=11)
    data = report.to_dict()
    assert data["theorem"]["id"] == "su3.nabla1.plus"
    assert data["status"] == "pass"
    assert data["as_expected"] is True
    assert data["subbundle_dim"] == report.subbundle_dim


def test_killing_conditions_without_torsion_or_flux():
    cls = catalog.get_class("AH_SO3")
    params = ConnectionParams(symring.ONE, p=q, q=q, flux_coeffs={"A": 0})
    ctx = CurvatureContext(cls, params, build_rep(6))
    assert killing_conditions(ctx, SpinorSpace.full(8)) == []


def test_killing_conditions_with_torsion():
    cls = catalog.get_class("AH_SO3")
    params = ConnectionParams(B, symring.ZERO, symring.ZERO, {"A": 0})
    ctx = CurvatureContext(cls, params, build_rep(6))
    conditions = killing_conditions(ctx, SpinorSpace.full(8))
    assert conditions
    assert all(symring.degree_in(c.value, "B") == 1 for c in conditions)


@pytest.mark.parametrize("theorem_id", ["sas5.nabla1.phi0", "np.case3.flat"])
def test_necessary_records_are_consistent(theorem_id):
    report = verify_theorem(get_theorem(theorem_id), sampler=RationalSampler(7))
    assert report.status == "pass", report.to_dict()
    assert report.kernel_dim > 0 or report.singular


def test_phi0_component_needs_flux():
    # Without flux the Phi = 0 conditions only hold at alpha = 0.
    spec = get_theorem("sas5.nabla1.phi0")
    spec = replace(spec, relations=(*spec.relations, ("A", "A")))
    report = verify_theorem(spec, sampler=RationalSampler(7))
    assert report.status == "fail"
    assert report.kernel_dim == 0
    assert report.singular is False
    assert report.to_dict()["singular"] is False


def test_necessity_partial_for_a_superfluous_relation():
    spec = get_theorem("np.branch1")
    spec = replace(spec, relations=(*spec.relations, ("A - lam", "A")))
    results = verify_necessity(prepare(spec), 4, RationalSampler(3))
    assert results[1].outcome == "partial"
    assert results[1].nonzero < results[1].samples
    assert results[1].witness is not None
    report = verify_theorem(spec, samples=4, sampler=RationalSampler(3))
    assert report.sufficiency.passed
    assert report.status == "fail"


def test_necessity_vacuous_when_implied():
    spec = replace(
        get_theorem("np.branch1"), relations=(("A", "A"), ("A*q", "q"))
    )
    results = verify_necessity(prepare(spec), 4, RationalSampler(3))
    assert results[1].outcome == "vacuous"
    assert results[1].samples == 0


def test_necessity_certified_for_printed_relation():
    results = verify_necessity(
        prepare(get_theorem("su3.nabla1.plus")), 4, RationalSampler(3)
    )
    assert [r.outcome for r in results] == ["certified"]
    assert results[0].nonzero == results[0].samples == 4


@pytest.mark.parametrize("spec", all_theorems(), ids=lambda s: s.id)
def test_every_record_as_expected(spec):
    report = verify_theorem(spec, samples=4, sampler=RationalSampler(42))
    assert report.as_expected, report.to_dict()
