"""Contractions of the spinorial curvature of nabla against nabla^c.

With T = B * T^c and C(X) = s (X _| T^c) + p (X _| F) + q (X ^ F) acting on
spinors, the curvature of nabla differs from that of nabla^c by twelve
algebraic terms R_1 ... R_12. Terms 4 to 12 add up to the commutator
[C(X), C(Y)]; terms 1 to 3 act by the vector T^c(X, Y). Only Ric^c and
sigma^{T^c} enter the remaining part, so everything here is exact matrix
algebra over the parameter ring.
"""

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from spinflux.algebra import exterior, symring
from spinflux.algebra.exterior import Form
from spinflux.algebra.matrices import Endo, commutator
from spinflux.algebra.symring import Poly
from spinflux.errors import DimensionError
from spinflux.geometry.catalog import (
    ConnectionParams,
    GeometryClass,
    flux_form,
)
from spinflux.spin.spinrep import SpinRep

logger = logging.getLogger(__name__)

R_TERMS = tuple(range(1, 13))
HALF = symring.const(Fraction(1, 2))
IU = symring.I_UNIT


@dataclass
class CurvatureContext:
    """A class, a parameter set and a spin representation, with the Clifford
    actions that every contraction reuses."""

    cls: GeometryClass
    params: ConnectionParams
    rep: SpinRep
    ansatz: str | None = None
    flux: Form = field(init=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        if self.rep.n != self.cls.n:
            raise DimensionError(
                f"Class {self.cls.id} has dimension {self.cls.n}, "
                f"representation has {self.rep.n}"
            )
        self.flux = flux_form(self.cls, self.params.flux_coeffs, self.ansatz)

    @property
    def n(self) -> int:
        return self.cls.n

    @property
    def torsion(self) -> Form:
        return self.cls.torsion

    def _cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def e(self, i: int) -> Endo:
        return self.rep.act_vector(i)

    def t_in(self, i: int) -> Endo:
        """act(e_i _| T^c)."""
        return self._cached(
            ("T", i),
            lambda: self.rep.act(exterior.interior(i, self.torsion)),
        )

    def f_in(self, i: int) -> Endo:
        """act(e_i _| F)."""
        return self._cached(
            ("F", i), lambda: self.rep.act(exterior.interior(i, self.flux))
        )

    def f_wedge(self, i: int) -> Endo:
        """act(e_i ^ F)."""
        return self._cached(
            ("W", i),
            lambda: self.rep.act(
                exterior.wedge(Form.blade(self.n, (i,)), self.flux)
            ),
        )

    def torsion_vector(self, i: int, k: int) -> list[Poly]:
        """Components of the vector T^c(e_i, e_k, .)."""
        one_form = exterior.contract2(self.torsion, i, k)
        return [one_form.coefficient((m,)) for m in range(1, self.n + 1)]


def correction(ctx: CurvatureContext, i: int) -> Endo:
    """nabla_{e_i} - nabla^c_{e_i} on spinors."""

    def build() -> Endo:
        p = ctx.params
        total = ctx.t_in(i) * p.s
        if ctx.flux:
            total = total + ctx.f_in(i) * p.p + ctx.f_wedge(i) * p.q
        return total

    return ctx._cached(("C", i), build)


def _vector_term(ctx: CurvatureContext, j: int, i: int, k: int) -> Endo:
    x = ctx.torsion_vector(i, k)
    if not any(x):
        return Endo.zero(ctx.rep.dim)
    p = ctx.params
    if j == 1:
        form = exterior.interior_vector(x, ctx.torsion)
        factor = p.s
    elif j == 2:
        form = exterior.interior_vector(x, ctx.flux)
        factor = p.p
    else:
        form = exterior.wedge(Form.vector(ctx.n, x), ctx.flux)
        factor = p.q
    return ctx.rep.act(form) * factor


def r_term(ctx: CurvatureContext, j: int, i: int, k: int) -> Endo:
    """The algebraic curvature term R_j(e_i, e_k), exactly as listed."""
    if j not in R_TERMS:
        raise ValueError(f"Unknown curvature term R_{j}; expected 1..12")
    if j <= 3:
        return _vector_term(ctx, j, i, k)
    p = ctx.params
    pairs = {
        4: (ctx.t_in, ctx.t_in, p.s * p.s),
        5: (ctx.t_in, ctx.f_in, p.s * p.p),
        6: (ctx.f_in, ctx.t_in, p.s * p.p),
        7: (ctx.t_in, ctx.f_wedge, p.s * p.q),
        8: (ctx.f_wedge, ctx.t_in, p.s * p.q),
        9: (ctx.f_in, ctx.f_in, p.p * p.p),
        10: (ctx.f_in, ctx.f_wedge, p.p * p.q),
        11: (ctx.f_wedge, ctx.f_in, p.p * p.q),
        12: (ctx.f_wedge, ctx.f_wedge, p.q * p.q),
    }
    left, right, factor = pairs[j]
    if not factor:
        return Endo.zero(ctx.rep.dim)
    return commutator(left(i), right(k)) * factor


def r_total(ctx: CurvatureContext, i: int, k: int) -> Endo:
    """Sum of R_1 ... R_12 at (e_i, e_k) through the commutator identity."""
    total = commutator(correction(ctx, i), correction(ctx, k))
    for j in (1, 2, 3):
        total = total + _vector_term(ctx, j, i, k)
    return total


def m_first(ctx: CurvatureContext, i: int, j: int | None = None) -> Endo:
    """M_j(e_i) = sum_k e_k R_j(e_k, e_i); all twelve terms when j is None."""
    total = Endo.zero(ctx.rep.dim)
    for k in range(1, ctx.n + 1):
        if k == i and j in (4, 9, 12):
            continue
        term = r_total(ctx, k, i) if j is None else r_term(ctx, j, k, i)
        if not term.is_zero():
            total = total + ctx.e(k) @ term
    return total


def m_second(ctx: CurvatureContext, j: int | None = None) -> Endo:
    """M_j = sum_i e_i M_j(e_i)."""
    total = Endo.zero(ctx.rep.dim)
    for i in range(1, ctx.n + 1):
        total = total + ctx.e(i) @ m_first(ctx, i, j)
    return total


@dataclass
class MContractions:
    first: dict[int, list[Endo]]
    second: dict[int, Endo]

    def total_first(self, i: int) -> Endo:
        """Sum over j of M_j(e_i), 1-based direction."""
        values = [family[i - 1] for family in self.first.values()]
        return functools.reduce(Endo.__add__, values)


def m_contractions(ctx: CurvatureContext) -> MContractions:
    first = {
        j: [m_first(ctx, i, j) for i in range(1, ctx.n + 1)] for j in R_TERMS
    }
    second = {
        j: functools.reduce(
            Endo.__add__,
            (ctx.e(i) @ m for i, m in enumerate(first[j], start=1)),
        )
        for j in R_TERMS
    }
    return MContractions(first, second)


@dataclass
class ContractionSet:
    k_first: list[Endo]
    k_second: Endo

    def consistency_defect(self, rep: SpinRep) -> Endo:
        """k_second - sum_i e_i k_first[i]; zero for a correct engine."""
        total = self.k_second
        for i, k in enumerate(self.k_first, start=1):
            total = total - rep.act_vector(i) @ k
        return total

    def to_dict(self) -> dict:
        return {
            "k_first": [k.to_text() for k in self.k_first],
            "k_second": self.k_second.to_text(),
        }


def _ricci_vector(cls: GeometryClass, i: int) -> Form:
    return Form.vector(cls.n, cls.ricci_c.rows[i - 1])


def k_first(ctx: CurvatureContext, i: int) -> Endo:
    """K(e_i) = 1/2 Ric^c(e_i) - 1/2 (e_i _| sigma) + sum_j M_j(e_i)."""

    def build() -> Endo:
        sigma = exterior.sigma_T(ctx.torsion)
        algebraic = _ricci_vector(ctx.cls, i) - exterior.interior(i, sigma)
        return ctx.rep.act(algebraic) * HALF + m_first(ctx, i)

    return ctx._cached(("K", i), build)


def k_second(ctx: CurvatureContext) -> Endo:
    """K = -1/2 Scal^c - 2 sigma + sum_j M_j."""

    def build() -> Endo:
        sigma = exterior.sigma_T(ctx.torsion)
        scal = Endo.scalar(ctx.rep.dim, -ctx.cls.scal_c * HALF)
        return scal - ctx.rep.act(sigma) * 2 + m_second(ctx)

    return ctx._cached(("K",), build)


def k_contractions(ctx: CurvatureContext) -> ContractionSet:
    logger.debug(
        f"Contracting curvature for {ctx.cls.id} with {ctx.params.to_dict()}"
    )
    first = [k_first(ctx, i) for i in range(1, ctx.n + 1)]
    return ContractionSet(first, k_second(ctx))


def volume_element(rep: SpinRep) -> Endo:
    """act(e_1 ... e_n) for even n.

    Raises:
        DimensionError: If n is odd, where the volume element is central.
    """
    if rep.n % 2:
        raise DimensionError(
            f"Volume element of dimension {rep.n} commutes with every form"
        )
    return rep.act(Form.blade(rep.n, range(1, rep.n + 1)))


def reflection_defects(ctx: CurvatureContext, name: str = "a") -> list[str]:
    """Contractions breaking the reflection ``name -> -name``.

    Conjugating by the volume element P flips the sign of odd forms. The
    torsion is odd in ``name`` and everything else is even, so
    P^-1 K(e_i) P is -K(e_i) and P^-1 K P is K, both read at -``name``.
    """
    p = volume_element(ctx.rep)
    p_inv = p @ p @ p
    flip = {name: -symring.gen(name)}
    contractions = k_contractions(ctx)
    pairs = [
        (f"K(e{i})", k, -k.compose(flip))
        for i, k in enumerate(contractions.k_first, start=1)
    ]
    second = contractions.k_second
    pairs.append(("K", second, second.compose(flip)))
    return [
        label
        for label, k, expected in pairs
        if k.conjugate_by(p, p_inv) != expected
    ]


# Printed coefficients of the nabla^1 contractions for C[SU(3)].
_a, _A = symring.gen("a"), symring.gen("A")
_B, _q = symring.gen("B"), symring.gen("q")

PRINTED_SU3: dict[str, Poly] = {
    "m1": _a**2 * HALF * (_B - 1) * (_B - 5)
    + _A**2 * 2 * (_q - 1) * (_q * 3 - 1),
    "m2": _a * _A * 2 * (_B - 3 - _q * 2 * (_B - 2)),
    "n1": _a**2 * HALF * (5 - _B * 3 * (_B - 2)) + _A**2 * 2 * (3 - _q**2 * 5),
    "n2": _q * _a * _A * -4 * (_B - 2),
    "c1": _a**2 * (_B * (_B * 5 - 6) - 15)
    + _A**2 * 4 * (_q * (_q * 7 - 4) - 5),
    "c2": _a**2 * HALF * (_B**5 - 5) + _A**2 * 2 * (_q * (_q - 2) - 1),
}


def su3_coefficients(contractions: ContractionSet) -> dict[str, Poly]:
    """Read m1, m2, n1, n2, c1, c2 off K and K(e_6) in the printed layout."""
    k, k6 = contractions.k_second, contractions.k_first[5]
    sixth = symring.const(Fraction(-1, 6))
    return {
        "m1": k.entry(0, 0) * sixth,
        "m2": k.entry(0, 1) * sixth * IU,
        "n1": -IU * k6.entry(0, 4),
        "n2": k6.entry(0, 7),
        "c1": k.entry(2, 2),
        "c2": IU * k6.entry(2, 6),
    }


def su3_layout(coeffs: dict[str, Poly]) -> dict[str, Endo]:
    """The printed K, K(e_2), K(e_4), K(e_6) built from the coefficients."""
    m1, m2, n1, n2 = coeffs["m1"], coeffs["m2"], coeffs["n1"], coeffs["n2"]
    c1, c2 = coeffs["c1"], coeffs["c2"]
    z = symring.ZERO

    def sparse(entries: dict[tuple[int, int], Poly]) -> Endo:
        rows = [[z] * 8 for _ in range(8)]
        for (r, col), value in entries.items():
            rows[r][col] = value
        return Endo.from_entries(rows)

    k = {
        (0, 0): m1 * -6, (0, 1): IU * m2 * 6,
        (1, 0): -IU * m2 * 6, (1, 1): m1 * -6,
    } | {(r, r): c1 for r in range(2, 8)}
    k6 = {
        (0, 4): IU * n1, (0, 7): n2, (1, 4): n2, (1, 7): -IU * n1,
        (2, 6): -IU * c2, (3, 5): IU * c2, (4, 0): IU * m1, (4, 1): m2,
        (5, 3): IU * c2, (6, 2): -IU * c2, (7, 0): m2, (7, 1): -IU * m1,
    }
    k4 = {
        (0, 3): n1, (0, 6): IU * n2, (1, 3): -IU * n2, (1, 6): n1,
        (2, 7): c2, (3, 0): -m1, (3, 1): IU * m2, (4, 5): -c2,
        (5, 4): c2, (6, 0): -IU * m2, (6, 1): -m1, (7, 2): -c2,
    }
    k2 = {
        (0, 2): -n1, (0, 4): -IU * n2, (1, 2): IU * n2, (1, 4): -n1,
        (2, 0): m1, (2, 1): -IU * m2, (3, 7): c2, (4, 6): -c2,
        (5, 0): IU * m2, (5, 1): m1, (6, 4): c2, (7, 3): -c2,
    }
    return {
        "K": sparse(k),
        "K(e2)": sparse(k2),
        "K(e4)": sparse(k4),
        "K(e6)": sparse(k6),
    }
