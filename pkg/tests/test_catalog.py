import json
from fractions import Fraction

import pytest

from spinflux.algebra import symring
from spinflux.algebra.exterior import Form
from spinflux.algebra.matrices import Endo
from spinflux.config.mode import Derivative
from spinflux.errors import UnknownClassError
from spinflux.geometry import catalog, forms
from spinflux.geometry.catalog import ConnectionParams
from spinflux.verify.census import TABLE

alpha, a, B = (symring.gen(n) for n in ("alpha", "a", "B"))


def test_catalog_covers_the_existence_table():
    assert len(catalog.CLASS_IDS) == 19
    assert {cid for _, cid, _ in TABLE} == set(catalog.CLASS_IDS)


def test_unknown_class():
    with pytest.raises(UnknownClassError, match="Unknown geometry class"):
        catalog.get_class("NoSuchClass")


@pytest.mark.parametrize("n, k", [(5, 2), (7, 3)])
def test_sasakian_torsion_square(n, k):
    t = forms.sasakian_torsion(n)
    half = alpha * alpha * symring.const(Fraction(1, 2))
    expected = Endo.diagonal([half] * (n - 1) + [half * k])
    assert catalog.torsion_square(t) * Fraction(1, 4) == expected


@pytest.mark.parametrize("cid", ["Sasakian5", "Sasakian7"])
def test_sasakian_ricci_tensors_are_consistent(cid):
    cls = catalog.get_class(cid)
    assert catalog.ric_T(cls.torsion, cls.ricci_g) == cls.ricci_c


def test_su3_torsion_square_is_scalar():
    cls = catalog.get_class("AH_SU3")
    assert catalog.torsion_square(cls.torsion) == Endo.scalar(6, a * a * 4)


def test_derivative_families():
    nabla0 = ConnectionParams.for_derivative(Derivative.NABLA0, 7)
    assert nabla0.p == symring.const(Fraction(3, 4))
    assert nabla0.q == symring.ONE
    assert nabla0.s == (B - 1) * symring.const(Fraction(1, 4))
    nabla2 = ConnectionParams.for_derivative(Derivative.NABLA2, 6)
    assert nabla2.p == symring.ZERO
    nabla1 = ConnectionParams.for_derivative(Derivative.NABLA1, 6)
    assert nabla1.q == symring.gen("q")
    assert nabla1.compose({"q": symring.ONE}).q == symring.ONE


def test_specialized_class_substitutes_parameters():
    cls = catalog.get_class("AH_SU3").specialized({"a": symring.ONE})
    assert cls.torsion == forms.SU3_TORSION_SHAPE
    assert cls.ricci_c == Endo.scalar(6, 4)


def test_flux_ansatz_lookup():
    cls = catalog.get_class("AH_U2_-1")
    assert "star_omega12" in cls.fluxes
    with pytest.raises(ValueError, match="Unknown flux ansatz"):
        cls.flux("nope")


def test_every_class_dumps_to_json():
    dump = catalog.catalog_dump()
    assert list(dump) == list(catalog.CLASS_IDS)
    json.dumps(dump, sort_keys=True)
    assert dump["AH_SU3"]["n"] == 6


def test_flux_form():
    cls = catalog.get_class("Sasakian5")
    A = symring.gen("A")
    assert catalog.flux_form(cls) == Form.blade(5, (1, 2, 3, 4), A)
    assert catalog.flux_form(cls, {"A": 0}) == Form.zero(5)
    with pytest.raises(ValueError, match="Unknown flux coefficient"):
        catalog.flux_form(cls, {"A7": 1})
