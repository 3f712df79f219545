"""Exact polynomial arithmetic in the free parameters.

Every scalar in spinflux is an element of one global polynomial ring over
the Gaussian rationals. The ring is built once with sympy's sparse
``PolyElement`` machinery; this module adds the parameter table, the text
grammar used by reports and fixtures, a total-degree guard and
elimination of a symbol through a relation that is linear in it.
"""

import logging
from collections.abc import Iterable, Mapping
from fractions import Fraction

from sympy import I, Symbol, sstr
from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.rings import PolyElement, ring

from spinflux.errors import DegreeCapError, RelationError, SymbolTableError

logger = logging.getLogger(__name__)

# Torsion coefficients, Sasakian and nearly parallel constants, flux
# coefficients, derivative parameters, free Ricci entries.
SYMBOL_NAMES: tuple[str, ...] = (
    "a",
    "b",
    "c",
    "alpha",
    "lam",
    "A",
    "A1",
    "A2",
    "A3",
    "B",
    "p",
    "q",
    "U1",
    "U2",
    "V1",
    "V2",
    "Scal",
    "rho",
)

# Twice the degree of a single curvature entry: 2x2 block determinants
# and m1^2 - m2^2 style contractions multiply two entries.
DEGREE_CAP = 16

RING, *_GENERATORS = ring(",".join(SYMBOL_NAMES), QQ_I)
_BY_NAME: dict[str, PolyElement] = dict(
    zip(SYMBOL_NAMES, _GENERATORS, strict=True)
)
_PARSE_LOCALS = {name: Symbol(name) for name in SYMBOL_NAMES} | {"I": I}

Poly = PolyElement
GaussianRational = QQ_I.dtype
Scalar = int | Fraction | GaussianRational

ZERO: Poly = RING.zero
ONE: Poly = RING.one


def gaussian(re: int | Fraction, im: int | Fraction = 0) -> GaussianRational:
    re, im = Fraction(re), Fraction(im)
    return QQ_I(
        QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator)
    )


def to_gaussian(value: Scalar) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    return gaussian(value)


IMAG_UNIT: GaussianRational = gaussian(0, 1)


def gen(name: str) -> Poly:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise SymbolTableError(f"Unknown symbol: {name}") from None


def const(re: Scalar, im: int | Fraction = 0) -> Poly:
    if isinstance(re, GaussianRational):
        return RING.ground_new(re)
    return RING.ground_new(gaussian(re, im))


I_UNIT: Poly = const(0, 1)


def _same_ring(*polys: Poly) -> None:
    for x in polys:
        if not isinstance(x, PolyElement) or x.ring != RING:
            raise SymbolTableError(
                f"Polynomial {x!r} is not in the spinflux parameter ring"
            )


def add(x: Poly, y: Poly) -> Poly:
    _same_ring(x, y)
    return x + y


def neg(x: Poly) -> Poly:
    _same_ring(x)
    return -x


def mul(x: Poly, y: Poly) -> Poly:
    _same_ring(x, y)
    return check_degree(x * y)


def power(x: Poly, e: int) -> Poly:
    """Return ``x**e`` with ``0**0 = 1``."""
    if e == 0:
        return ONE
    return x**e


def total_degree(x: Poly) -> int:
    return max((sum(m) for m in x.itermonoms()), default=0)


def check_degree(x: Poly) -> Poly:
    if total_degree(x) > DEGREE_CAP:
        raise DegreeCapError(
            f"Total degree {total_degree(x)} exceeds cap {DEGREE_CAP}"
        )
    return x


def is_zero(x: Poly) -> bool:
    return not x


def is_constant(x: Poly) -> bool:
    return x.is_ground


def constant_value(x: Poly) -> GaussianRational:
    if not x.is_ground:
        raise ValueError(f"Polynomial is not constant: {to_text(x)}")
    return x.get(RING.zero_monom, QQ_I.zero)


def substitute(x: Poly, bindings: Mapping[str, Scalar]) -> Poly:
    """Replace symbols by Gaussian-rational constants.

    Symbols not mentioned in ``bindings`` are left untouched, so a full
    binding yields a constant polynomial.
    """
    if not bindings:
        return x
    return x.subs([(gen(k), to_gaussian(v)) for k, v in bindings.items()])


def compose(x: Poly, bindings: Mapping[str, Poly]) -> Poly:
    """Simultaneously replace symbols by polynomials."""
    if not bindings:
        return x
    return check_degree(x.compose([(gen(k), v) for k, v in bindings.items()]))


def evaluate(x: Poly, point: Mapping[str, Scalar]) -> GaussianRational:
    return constant_value(substitute(x, point))


def symbols_of(x: Poly) -> set[str]:
    used: set[str] = set()
    for monom in x.itermonoms():
        used.update(
            name for name, e in zip(SYMBOL_NAMES, monom, strict=True) if e
        )
    return used


def degree_in(x: Poly, name: str) -> int:
    if not x:
        return 0
    return max(x.degree(gen(name)), 0)


def coeff_in(x: Poly, name: str, k: int) -> Poly:
    return x.coeff_wrt(gen(name), k)


def linear_parts(relation: Poly, name: str) -> tuple[Poly, Poly]:
    """Split ``relation`` as ``c1*name + c0`` and return ``(c1, c0)``."""
    if degree_in(relation, name) != 1:
        raise RelationError(
            f"Relation {to_text(relation)} is not linear in {name}"
        )
    return coeff_in(relation, name, 1), coeff_in(relation, name, 0)


def eliminate(
    x: Poly, relation: Poly, name: str, degree: int | None = None
) -> Poly:
    """Remove ``name`` from ``x`` using ``relation = 0``.

    With ``relation = c1*name + c0`` the result is ``x`` at
    ``name = -c0/c1`` when ``c1`` is a constant, and otherwise
    ``c1^d * x(-c0/c1)`` with ``d`` the degree of ``x`` in ``name``.
    Either way it vanishes exactly when ``x`` vanishes on the generic
    points of the relation. Passing a common ``degree`` for every entry
    of a vector scales all entries by the same factor.
    """
    c1, c0 = linear_parts(relation, name)
    if c1.is_ground:
        inverse = QQ_I.quo(QQ_I.one, constant_value(c1))
        return compose(x, {name: (-c0).mul_ground(inverse)})
    d = degree_in(x, name) if degree is None else degree
    result = ZERO
    for k in range(d + 1):
        part = coeff_in(x, name, k)
        if part:
            result += part * power(-c0, k) * power(c1, d - k)
    return check_degree(result)


def eliminate_all(
    x: Poly, relations: Iterable[tuple[Poly, str]]
) -> Poly:
    for relation, name in relations:
        x = eliminate(x, relation, name)
    return x


def to_text(x: Poly) -> str:
    if not x:
        return "0"
    return sstr(x.as_expr()).replace("**", "^")


def gaussian_text(value: GaussianRational) -> str:
    return to_text(RING.ground_new(value))


def parse(text: str) -> Poly:
    """Parse the report grammar, e.g. ``a^2/2*(B-1)*(B-5) + 2*I*A``."""
    try:
        expr = parse_expr(text.replace("^", "**"), local_dict=_PARSE_LOCALS)
    except (SyntaxError, TypeError) as e:
        raise SymbolTableError(f"Cannot parse polynomial {text!r}: {e}") from e
    unknown = {str(s) for s in expr.free_symbols} - set(SYMBOL_NAMES)
    if unknown:
        raise SymbolTableError(f"Unknown symbols {sorted(unknown)} in {text!r}")
    try:
        return check_degree(RING.from_expr(expr))
    except ValueError as e:
        raise SymbolTableError(f"Not a polynomial: {text!r}") from e
