from fractions import Fraction

import pytest
from hypothesis import given, settings

from spinflux.algebra import symring
from spinflux.errors import DegreeCapError, RelationError, SymbolTableError
from strategies import polys

a, A, B, q = (symring.gen(n) for n in ("a", "A", "B", "q"))


@settings(max_examples=200)
@given(polys(), polys(), polys())
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == symring.ZERO
    assert x * symring.ONE == x
    assert symring.add(x, symring.neg(x)) == symring.ZERO
    assert symring.mul(x, y) == x * y
    assert symring.is_constant(x - x)
    assert symring.is_zero(x - x)


@settings(max_examples=100)
@given(polys())
def test_text_grammar_reads_back(x):
    assert symring.parse(symring.to_text(x)) == x


def test_parse_fractions_and_imaginary_unit():
    half = symring.const(Fraction(1, 2))
    assert symring.parse("a^2/2*(B-1)") == a**2 * (B - 1) * half
    assert symring.parse("2*I*A") == A * symring.const(0, 2)
    assert symring.parse("(B-1)/4") == (B - 1) * symring.const(Fraction(1, 4))


def test_parse_rejects_unknown_symbols():
    with pytest.raises(SymbolTableError):
        symring.parse("zeta + a")


def test_unknown_generator():
    with pytest.raises(SymbolTableError):
        symring.gen("zeta")


def test_degree_cap():
    with pytest.raises(DegreeCapError):
        symring.mul(a**9, B**9)
    assert symring.total_degree(symring.mul(a**8, B**8)) == 16


def test_substitute_and_evaluate():
    x = a * B + 1
    assert symring.evaluate(x, {"a": 2, "B": Fraction(1, 2)}) == (
        symring.gaussian(2)
    )
    assert symring.substitute(x, {"a": 0}) == symring.ONE
    assert symring.symbols_of(x + q) == {"a", "B", "q"}


def test_compose_is_simultaneous():
    swapped = symring.compose(a - B, {"a": B, "B": a})
    assert swapped == B - a


def test_eliminate_with_constant_leading_coefficient():
    relation = A * 2 - (B - 1)
    assert symring.eliminate(relation, relation, "A") == symring.ZERO
    assert symring.eliminate(A, relation, "A") == (B - 1) * symring.const(
        Fraction(1, 2)
    )


def test_eliminate_with_polynomial_leading_coefficient():
    relation = q * A - B
    assert symring.eliminate(A, relation, "A") == B
    # A^2 - 1 becomes B^2 - q^2 after clearing q^2.
    assert symring.eliminate(A**2 - 1, relation, "A") == B**2 - q**2


def test_eliminate_with_common_degree_scales_uniformly():
    relation = q * A - B
    assert symring.eliminate(symring.ONE, relation, "A", degree=2) == q**2


def test_linear_parts_requires_linear_relation():
    assert symring.linear_parts(q * A - B, "A") == (q, -B)
    with pytest.raises(RelationError):
        symring.linear_parts(A**2 - B, "A")


def test_eliminate_through_homogeneous_relation():
    b, p = symring.gen("b"), symring.gen("p")
    # b*p = 0 has no constant part, so only the p-free term survives.
    assert symring.eliminate(p + q, b * p, "p") == q * b
    assert symring.eliminate(p**2 + q, b * p, "p") == q * b**2


def test_power_of_zero_polynomial():
    assert symring.power(symring.ZERO, 0) == symring.ONE
    assert symring.power(symring.ZERO, 2) == symring.ZERO
    assert symring.power(a - 1, 2) == a**2 - a * 2 + 1
