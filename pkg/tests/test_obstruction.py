from fractions import Fraction

from spinflux.algebra import symring
from spinflux.algebra.matrices import Endo
from spinflux.geometry import catalog
from spinflux.geometry.catalog import ConnectionParams
from spinflux.geometry.curvature import (
    ContractionSet,
    CurvatureContext,
    k_first,
)
from spinflux.spin.calibration import build_rep
from spinflux.verify import obstruction

a, B, q = symring.gen("a"), symring.gen("B"), symring.gen("q")


def test_blocks_and_conditions():
    m = Endo.from_entries([[a, B, 0], [1, 0, 0], [0, 0, q]])
    assert obstruction.blocks(m) == [([0, 1], [0, 1]), ([2], [2])]
    assert obstruction.block_conditions(m) == [-B, q]


def test_determinant():
    rows = [
        [symring.const(2), symring.ZERO, symring.ONE],
        [symring.ONE, symring.const(3), symring.ZERO],
        [symring.ZERO, symring.ONE, symring.const(4)],
    ]
    assert obstruction.determinant(rows) == symring.const(25)


def test_normalize_strips_monomial_content():
    x = a * a * (B * B - 1) * symring.const(Fraction(-3, 2))
    assert obstruction.normalize(x) == B * B - 1


def test_sasakian_contact_direction():
    cls = catalog.get_class("Sasakian5")
    params = ConnectionParams(B, symring.ZERO, symring.ONE, {"A": symring.ZERO})
    ctx = CurvatureContext(cls, params, build_rep(5))
    contractions = ContractionSet(
        [k_first(ctx, i) for i in range(1, 6)], Endo.zero(4)
    )
    found = obstruction.kernel_obstruction(contractions, (5,))
    assert found == [obstruction.normalize(B * B - 1)]


def test_certificate_for_positive_polynomial():
    polys = [B * B + 1, (B * B + 1) * q]
    result = obstruction.common_zero_certificate(polys, ("q",), "B")
    assert result == "certified"


def test_certificate_with_real_root():
    result = obstruction.common_zero_certificate([B * B - 1], (), "B")
    assert result == "refuted"


def test_certificate_keeps_polynomials_without_the_eliminated_symbol():
    # q appears once, but B = 0 still contradicts B*q = 1.
    polys = [B * q - 1, B]
    assert obstruction.common_zero_certificate(polys, ("q",), "B") == "certified"


def test_certificate_follows_rational_roots():
    polys = [q * q + 1, B * (B - 2)]
    assert obstruction.common_zero_certificate(polys, ("q",), "B") == "certified"


def test_certificate_splits_gaussian_coefficients():
    assert (
        obstruction.common_zero_certificate([symring.parse("B^2 + I")], (), "B")
        == "certified"
    )
    polys = [symring.parse("B + I*q")]
    assert obstruction.common_zero_certificate(polys, ("q",), "B") == "refuted"


def test_certificate_over_irrational_roots():
    polys = [B * B - 2, q - B]
    assert obstruction.common_zero_certificate(polys, ("q",), "B") == "refuted"
    polys = [B * B - 2, q * q - B]
    result = obstruction.common_zero_certificate(polys, ("q",), "B")
    assert result == "inconclusive"


def test_certificate_scales_symbols():
    polys = [a * a - B * B, B * B - 4]
    result = obstruction.common_zero_certificate(polys, (), "B", {"a": 1})
    assert result == "certified"


def test_singular_point():
    zero = symring.ZERO
    rows = [[a, zero], [zero, B]]
    assert obstruction.has_singular_point(rows, 2)
    assert not obstruction.has_singular_point(rows, 2, (a, B))
    assert obstruction.has_singular_point([[a - 1]], 1, (a,))
    assert not obstruction.has_singular_point([[symring.ONE]], 1)
