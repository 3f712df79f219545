from fractions import Fraction

import pytest

from spinflux.algebra import matrices, symring
from spinflux.algebra.matrices import Endo
from spinflux.errors import DimensionError

a, B, q = (symring.gen(n) for n in ("a", "B", "q"))
ONE, ZERO = symring.ONE, symring.ZERO


def test_numeric_kernel_is_normalized():
    assert matrices.kernel([[ONE, ONE], [ONE, ONE]], 2) == [(ONE, -ONE)]


def test_symbolic_kernel_is_annihilated():
    m = Endo.from_entries([[a, B, ZERO], [a * q, B * q, ZERO], [0, 0, 1]])
    basis = matrices.kernel(m.rows, 3)
    assert len(basis) == 1
    assert not any(m.apply(basis[0]))
    assert basis[0][2] == ZERO


def test_stacked_kernel_intersects():
    x = Endo.diagonal([0, 0, 1, 1])
    y = Endo.diagonal([0, 1, 0, 1])
    assert matrices.stacked_kernel([x, y]) == [(ONE, ZERO, ZERO, ZERO)]
    with pytest.raises(DimensionError):
        matrices.stacked_kernel([x, Endo.identity(2)])


def test_rank_over_fraction_field():
    rows = [[a, B], [a * q, B * q]]
    assert matrices.rank(rows, 2) == 1
    assert matrices.rank([[a, B], [B, a]], 2) == 2


def test_span_contains():
    basis = [(ONE, a, ZERO)]
    assert matrices.span_contains(basis, (B, a * B, ZERO))
    assert not matrices.span_contains(basis, (ONE, ZERO, ZERO))
    assert matrices.span_contains([], (ZERO, ZERO, ZERO))


def test_normalize_vector_strips_monomial_content():
    v = (a * 2, a * B * 2)
    assert matrices.normalize_vector(v) == (ONE, B)


def test_endo_algebra():
    x = Endo.from_entries([[0, 1], [-1, 0]])
    assert x @ x == Endo.scalar(2, -1)
    assert (x @ x).is_diagonal()
    assert not x.is_diagonal()
    assert matrices.commutator(x, x).is_zero()
    assert Endo.identity(2) * Fraction(1, 2) == Endo.scalar(
        2, symring.const(Fraction(1, 2))
    )
    assert x.trace() == ZERO
    assert x.apply((ONE, a)) == (a, -ONE)


def test_text_dump_reads_back():
    half = symring.const(Fraction(1, 2))
    m = Endo.from_entries([[a**2 * half, symring.I_UNIT * B], [0, -7]])
    assert Endo.from_text(m.to_text()) == m


def test_non_square_rows_rejected():
    with pytest.raises(DimensionError):
        Endo.from_entries([[1, 2], [3]])
