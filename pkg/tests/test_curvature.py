from fractions import Fraction

import pytest

from spinflux.algebra import exterior, symring
from spinflux.algebra.exterior import Form
from spinflux.algebra.matrices import Endo
from spinflux.config.mode import Derivative
from spinflux.errors import DimensionError
from spinflux.geometry import catalog
from spinflux.geometry.catalog import ConnectionParams
from spinflux.geometry.curvature import (
    PRINTED_SU3,
    CurvatureContext,
    correction,
    k_contractions,
    k_first,
    m_contractions,
    m_first,
    r_term,
    reflection_defects,
    su3_coefficients,
    su3_layout,
    volume_element,
)
from spinflux.spin.calibration import build_rep
from spinflux.spin.spinrep import eigenspace

ZERO, ONE = symring.ZERO, symring.ONE
HALF = symring.const(Fraction(1, 2))


def context(cid: str, params: ConnectionParams) -> CurvatureContext:
    cls = catalog.get_class(cid)
    return CurvatureContext(cls, params, build_rep(cls.n))


def family(cid: str, derivative: Derivative) -> CurvatureContext:
    n = catalog.get_class(cid).n
    return context(cid, ConnectionParams.for_derivative(derivative, n))


@pytest.fixture(scope="module")
def su3_nabla1():
    return k_contractions(family("AH_SU3", Derivative.NABLA1))


@pytest.mark.parametrize(
    "cid, derivative",
    [
        ("Sasakian5", Derivative.NABLA1),
        ("Sasakian5", Derivative.NABLA2),
        ("AH_SU3", Derivative.NABLA1),
        ("G2_NearlyParallel", Derivative.NABLA0),
    ],
)
def test_second_contraction_is_clifford_trace_of_first(cid, derivative):
    ctx = family(cid, derivative)
    assert k_contractions(ctx).consistency_defect(ctx.rep).is_zero()


def test_characteristic_connection_degeneration():
    cls = catalog.get_class("AH_SU3")
    zero_flux = {name: ZERO for name in cls.flux().coefficients}
    ctx = context("AH_SU3", ConnectionParams(ONE, ZERO, ZERO, zero_flux))
    sigma = exterior.sigma_T(cls.torsion)
    for i in range(1, 7):
        assert correction(ctx, i).is_zero()
        assert m_first(ctx, i).is_zero()
        ricci = Form.vector(6, cls.ricci_c.rows[i - 1])
        expected = ctx.rep.act(ricci - exterior.interior(i, sigma)) * HALF
        assert k_first(ctx, i) == expected


def test_diagonal_commutator_terms_vanish():
    ctx = family("AH_SU3", Derivative.GENERIC)
    for j in (4, 9, 12):
        for i in range(1, 7):
            assert r_term(ctx, j, i, i).is_zero()


@pytest.mark.parametrize(
    "bindings, vanishing",
    [
        ({"B": ONE}, (1, 4, 5, 6, 7, 8)),
        ({"q": ZERO}, (3, 7, 8, 10, 11, 12)),
        ({"p": ZERO}, (2, 5, 6, 9, 10, 11)),
    ],
)
def test_terms_vanish_with_their_parameter(bindings, vanishing):
    params = ConnectionParams.for_derivative(Derivative.GENERIC, 6)
    params = params.compose(bindings)
    ctx = context("AH_SU3", params)
    for j in vanishing:
        for i, k in ((1, 2), (3, 6), (2, 5)):
            assert r_term(ctx, j, i, k).is_zero()


def test_twelve_terms_add_up_to_the_contraction():
    ctx = family("AH_SU3", Derivative.NABLA1)
    totals = m_contractions(ctx)
    for i in range(1, 7):
        assert totals.total_first(i) == m_first(ctx, i)


def test_unknown_curvature_term():
    ctx = family("AH_SU3", Derivative.NABLA1)
    with pytest.raises(ValueError, match="Unknown curvature term"):
        r_term(ctx, 13, 1, 2)


@pytest.mark.parametrize("name", ["m1", "m2", "n1", "n2", "c1"])
def test_su3_coefficients_match_printed(su3_nabla1, name):
    assert su3_coefficients(su3_nabla1)[name] == PRINTED_SU3[name]


def test_su3_c2_differs_from_printed(su3_nabla1):
    derived = su3_coefficients(su3_nabla1)["c2"]
    assert derived != PRINTED_SU3["c2"]
    assert symring.degree_in(derived, "B") <= 2


def test_su3_displays_match_computed(su3_nabla1):
    computed = {
        "K": su3_nabla1.k_second,
        "K(e2)": su3_nabla1.k_first[1],
        "K(e4)": su3_nabla1.k_first[3],
        "K(e6)": su3_nabla1.k_first[5],
    }
    derived = su3_coefficients(su3_nabla1)
    assert su3_layout(derived) == computed
    assert su3_layout(PRINTED_SU3 | {"c2": derived["c2"]}) == computed
    printed = su3_layout(PRINTED_SU3)
    assert printed["K"] == computed["K"]
    for name in ("K(e2)", "K(e4)", "K(e6)"):
        # Only the four c2 entries of each display differ.
        differing = list((printed[name] - computed[name]).nonzero_entries())
        assert len(differing) == 4


def test_dimension_mismatch_rejected():
    cls = catalog.get_class("AH_SU3")
    params = ConnectionParams.for_derivative(Derivative.NABLA1, 6)
    with pytest.raises(ValueError):
        CurvatureContext(cls, params, build_rep(7))


def _sasakian_forms():
    cls = catalog.get_class("Sasakian5")
    return cls, cls.fundamental_forms


@pytest.mark.parametrize(
    "derivative, flux_part",
    [(Derivative.NABLA1, True), (Derivative.NABLA2, False)],
)
def test_sasakian_contact_contraction(derivative, flux_part):
    _, f = _sasakian_forms()
    ctx = family("Sasakian5", derivative)
    alpha, A, B = (symring.gen(x) for x in ("alpha", "A", "B"))
    expected = f["eta"] * (alpha**2 * (B**2 - 1) * -HALF)
    if flux_part:
        expected = expected + f["deta"] * (A * (B + 1) * symring.const(Fraction(-1, 4)))
    assert k_first(ctx, 5) == ctx.rep.act(expected)


@pytest.mark.parametrize("derivative", [Derivative.NABLA1, Derivative.NABLA2])
def test_sasakian_second_contraction(derivative):
    cls, f = _sasakian_forms()
    ctx = family("Sasakian5", derivative)
    alpha, A, B, q = (symring.gen(x) for x in ("alpha", "A", "B", "q"))
    scal = cls.scal_c - alpha**2 * (B**2 - 1) * 3
    if derivative == Derivative.NABLA1:
        scal = scal + A**2 * 3
        flux_term = A * (B - 3 + q * 4) * HALF
    else:
        flux_term = A * 2
    expected = (
        Form.scalar(5, scal * -HALF)
        + f["deta^deta"] * (B * (B - 3) * HALF)
        + f["eta^deta"] * flux_term
    )
    assert cls.scal_c == symring.gen("rho") * 4
    assert k_contractions(ctx).k_second == ctx.rep.act(expected)


@pytest.mark.parametrize(
    "derivative", [Derivative.NABLA1, Derivative.NABLA2, Derivative.GENERIC]
)
def test_su3_reflection_of_contractions(derivative):
    assert reflection_defects(family("AH_SU3", derivative)) == []


def test_reflection_needs_the_torsion_parameter():
    # Flipping a symbol the torsion does not carry breaks the K(e_i) relation.
    defects = reflection_defects(family("AH_SU3", Derivative.NABLA1), "q")
    assert defects


def test_volume_element_swaps_torsion_eigenlines():
    ctx = family("AH_SU3", Derivative.NABLA1)
    vol = volume_element(ctx.rep)
    assert (vol @ vol) == Endo.scalar(8, -1)
    plus = eigenspace(ctx.rep.act(ctx.torsion), symring.gen("a") * 4)
    (v,) = plus.basis
    image = vol.apply(v)
    assert ctx.rep.act(ctx.torsion).apply(image) == tuple(
        x * symring.gen("a") * -4 for x in image
    )


def test_volume_element_needs_even_dimension():
    with pytest.raises(DimensionError):
        volume_element(build_rep(7))
