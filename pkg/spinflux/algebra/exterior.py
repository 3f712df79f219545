"""Exterior algebra on R^n with polynomial coefficients.

A basis blade e_{i1...ik} (i1 < ... < ik) is stored as the bitmask with bit
``i - 1`` set for every index. Forms are sparse maps from bitmask to
``Poly``; zero coefficients are never stored.
"""

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from spinflux.algebra import symring
from spinflux.algebra.symring import Poly, Scalar
from spinflux.errors import DimensionError

logger = logging.getLogger(__name__)

SUPPORTED_DIMENSIONS = (5, 6, 7)


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def indices_of(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def grade(mask: int) -> int:
    return mask.bit_count()


def reorder_sign(left: int, right: int) -> int:
    """Sign of sorting the concatenation e_left e_right, assuming the
    index sets are disjoint."""
    swaps = 0
    for j in indices_of(right):
        swaps += grade(left >> j)
    return -1 if swaps % 2 else 1


def _sorted_sign(indices: Iterable[int]) -> tuple[int, int]:
    seq = list(indices)
    if len(set(seq)) != len(seq):
        return 0, 0
    inversions = sum(
        1 for x in range(len(seq)) for y in range(x + 1, len(seq))
        if seq[x] > seq[y]
    )
    return (-1 if inversions % 2 else 1), mask_of(seq)


def _as_poly(value: Poly | Scalar) -> Poly:
    if isinstance(value, Poly):
        return value
    return symring.const(value)


@dataclass(frozen=True)
class Form:
    n: int
    terms: Mapping[int, Poly] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n not in SUPPORTED_DIMENSIONS:
            raise DimensionError(f"Unsupported dimension: {self.n}")
        top = (1 << self.n) - 1
        for mask in self.terms:
            if mask & ~top:
                raise DimensionError(
                    f"Blade {indices_of(mask)} does not live in dimension "
                    f"{self.n}"
                )
        clean = {m: c for m, c in self.terms.items() if c}
        object.__setattr__(self, "terms", clean)

    @staticmethod
    def zero(n: int) -> "Form":
        return Form(n, {})

    @staticmethod
    def scalar(n: int, value: Poly | Scalar) -> "Form":
        return Form(n, {0: _as_poly(value)})

    @staticmethod
    def blade(
        n: int, indices: Iterable[int], coeff: Poly | Scalar = 1
    ) -> "Form":
        sign, mask = _sorted_sign(indices)
        if sign == 0:
            return Form.zero(n)
        return Form(n, {mask: _as_poly(coeff) * sign})

    @staticmethod
    def vector(n: int, coeffs: Iterable[Poly | Scalar]) -> "Form":
        return Form(
            n,
            {
                1 << i: _as_poly(c)
                for i, c in enumerate(coeffs)
            },
        )

    def _check(self, other: "Form") -> None:
        if self.n != other.n:
            raise DimensionError(
                f"Dimension mismatch: {self.n} vs {other.n}"
            )

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        terms = dict(self.terms)
        for mask, coeff in other.terms.items():
            terms[mask] = terms.get(mask, symring.ZERO) + coeff
        return Form(self.n, terms)

    def __neg__(self) -> "Form":
        return Form(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, scalar: Poly | Scalar) -> "Form":
        factor = _as_poly(scalar)
        return Form(self.n, {m: c * factor for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, indices: Iterable[int]) -> Poly:
        sign, mask = _sorted_sign(indices)
        if sign == 0:
            return symring.ZERO
        return self.terms.get(mask, symring.ZERO) * sign

    def degrees(self) -> set[int]:
        return {grade(m) for m in self.terms}

    def degree(self) -> int | None:
        """Common degree of a homogeneous form, None for the zero form."""
        found = self.degrees()
        if not found:
            return None
        if len(found) > 1:
            raise DimensionError(f"Form is not homogeneous: {sorted(found)}")
        return found.pop()

    def map_coefficients(self, fn) -> "Form":
        return Form(self.n, {m: fn(c) for m, c in self.terms.items()})

    def substitute(self, bindings: Mapping[str, Scalar]) -> "Form":
        return self.map_coefficients(lambda c: symring.substitute(c, bindings))


def _require_degree(x: Form, k: int, op: str) -> None:
    d = x.degree()
    if d is not None and d != k:
        raise DimensionError(f"{op} expects a {k}-form, got degree {d}")


def wedge(x: Form, y: Form) -> Form:
    x._check(y)
    terms: dict[int, Poly] = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            if m1 & m2:
                continue
            mask = m1 | m2
            value = c1 * c2 * reorder_sign(m1, m2)
            terms[mask] = terms.get(mask, symring.ZERO) + value
    return Form(x.n, terms)


def interior(v: int, x: Form) -> Form:
    """Contract the basis vector e_v into x.

    Dropping index v at position p of a blade gives the sign (-1)^(p-1).
    """
    if not 1 <= v <= x.n:
        raise DimensionError(f"Index {v} out of range for dimension {x.n}")
    bit = 1 << (v - 1)
    terms: dict[int, Poly] = {}
    for mask, coeff in x.terms.items():
        if not mask & bit:
            continue
        below = grade(mask & (bit - 1))
        terms[mask & ~bit] = -coeff if below % 2 else coeff
    return Form(x.n, terms)


def interior_vector(x_coeffs: Iterable[Poly], form: Form) -> Form:
    result = Form.zero(form.n)
    for i, c in enumerate(x_coeffs, start=1):
        if c:
            result = result + interior(i, form) * c
    return result


def contract2(t: Form, i: int, j: int) -> Form:
    """The 1-form T(e_i, e_j, .) of a 3-form."""
    _require_degree(t, 3, "contract2")
    return interior(j, interior(i, t))


def hodge(x: Form) -> Form:
    """Hodge star for the orientation e_1 ^ ... ^ e_n."""
    x.degree()
    top = (1 << x.n) - 1
    terms: dict[int, Poly] = {}
    for mask, coeff in x.terms.items():
        rest = top & ~mask
        terms[rest] = coeff * reorder_sign(mask, rest)
    return Form(x.n, terms)


def sigma_T(t: Form) -> Form:
    """The 4-form 1/2 * sum_i (e_i _| t) ^ (e_i _| t)."""
    _require_degree(t, 3, "sigma_T")
    total = Form.zero(t.n)
    for i in range(1, t.n + 1):
        part = interior(i, t)
        total = total + wedge(part, part)
    return total * symring.const(Fraction(1, 2))


def parse_form(n: int, spec: Mapping[str, Poly | Scalar]) -> Form:
    """Build a form from digit strings, e.g. ``{"125": a, "345": a}``."""
    total = Form.zero(n)
    for digits, coeff in spec.items():
        if digits == "":
            total = total + Form.scalar(n, coeff)
        else:
            total = total + Form.blade(n, (int(d) for d in digits), coeff)
    return total


def to_text(x: Form) -> str:
    if not x.terms:
        return "0"
    parts = []
    for mask in sorted(x.terms, key=lambda m: (grade(m), indices_of(m))):
        coeff = symring.to_text(x.terms[mask])
        if " " in coeff:
            coeff = f"({coeff})"
        name = "e" + "".join(str(i) for i in indices_of(mask)) if mask else "1"
        if coeff.startswith("-"):
            parts.append(f"-{coeff[1:]}*{name}")
        else:
            parts.append(f"+{coeff}*{name}")
    return " ".join(parts)
