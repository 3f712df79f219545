"""Clifford action of forms on spinors and eigenbundle extraction."""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from sympy.polys.polyerrors import ExactQuotientFailed

from spinflux.algebra import exterior, matrices, symring
from spinflux.algebra.exterior import Form
from spinflux.algebra.matrices import Endo, Vector
from spinflux.algebra.symring import Poly, Scalar
from spinflux.errors import DimensionError
from spinflux.utils.sampling import RationalSampler

logger = logging.getLogger(__name__)

GENERIC_CHECK_POINTS = 5


def spinor_dimension(n: int) -> int:
    return 2 ** (n // 2)


@dataclass(frozen=True)
class SpinRep:
    n: int
    gammas: tuple[Endo, ...]
    frame: str = ""
    _blades: dict[int, Endo] = field(
        default_factory=dict, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        if len(self.gammas) != self.n:
            raise DimensionError(
                f"Expected {self.n} gamma matrices, got {len(self.gammas)}"
            )
        for g in self.gammas:
            if g.dim != self.dim:
                raise DimensionError(
                    f"Gamma of size {g.dim} in a rep of dimension {self.dim}"
                )

    @property
    def dim(self) -> int:
        return spinor_dimension(self.n)

    def identity(self) -> Endo:
        return Endo.identity(self.dim)

    def blade(self, mask: int) -> Endo:
        """Ordered gamma product for the blade with the given bitmask."""
        cached = self._blades.get(mask)
        if cached is not None:
            return cached
        result = self.identity()
        for i in exterior.indices_of(mask):
            result = result @ self.gammas[i - 1]
        self._blades[mask] = result
        return result

    def act(self, x: Form) -> Endo:
        if x.n != self.n:
            raise DimensionError(
                f"Form of dimension {x.n} acting on a rep of dimension {self.n}"
            )
        rows = [[symring.ZERO] * self.dim for _ in range(self.dim)]
        for mask, coeff in x.terms.items():
            for i, j, value in self.blade(mask).nonzero_entries():
                rows[i][j] += coeff * value
        return Endo.from_entries(rows)

    def act_vector(self, i: int) -> Endo:
        return self.blade(1 << (i - 1))

    def clifford_defects(self) -> list[tuple[int, int]]:
        """Pairs (i, j) violating e_i e_j + e_j e_i = -2 delta_ij."""
        bad = []
        for i in range(self.n):
            for j in range(i, self.n):
                gi, gj = self.gammas[i], self.gammas[j]
                anti = gi @ gj + gj @ gi
                expected = Endo.scalar(self.dim, -2 if i == j else 0)
                if anti != expected:
                    bad.append((i + 1, j + 1))
        return bad

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "frame": self.frame,
            "gammas": [g.to_text() for g in self.gammas],
        }


@dataclass(frozen=True)
class SpinorSpace:
    """Subspace of spinors given by a basis with polynomial entries."""

    dim_ambient: int
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_empty(self) -> bool:
        return not self.basis

    def contains(self, v: Sequence[Poly]) -> bool:
        return matrices.span_contains(self.basis, v)

    def direct_sum(self, other: "SpinorSpace") -> "SpinorSpace":
        return SpinorSpace(self.dim_ambient, self.basis + other.basis)

    def compose(self, bindings: Mapping[str, Poly]) -> "SpinorSpace":
        return SpinorSpace(
            self.dim_ambient,
            tuple(
                tuple(symring.compose(x, bindings) for x in v)
                for v in self.basis
            ),
        )

    @staticmethod
    def full(dim: int) -> "SpinorSpace":
        return SpinorSpace.coordinates(dim, range(dim))

    @staticmethod
    def coordinates(dim: int, indices: Sequence[int]) -> "SpinorSpace":
        basis = []
        for k in indices:
            if not 0 <= k < dim:
                raise DimensionError(f"Spinor index {k} out of range {dim}")
            basis.append(
                tuple(
                    symring.ONE if r == k else symring.ZERO
                    for r in range(dim)
                )
            )
        return SpinorSpace(dim, tuple(basis))

    def to_text(self) -> list[str]:
        return [
            "[" + ", ".join(symring.to_text(x) for x in v) + "]"
            for v in self.basis
        ]


def _shifted(m: Endo, ev: Poly | Scalar) -> Endo:
    value = ev if isinstance(ev, Poly) else symring.const(ev)
    return m - Endo.scalar(m.dim, value)


def _numeric_nullity(
    shifted: Sequence[Endo], sampler: RationalSampler
) -> int | None:
    used: set[str] = set()
    for m in shifted:
        for _, _, x in m.nonzero_entries():
            used |= symring.symbols_of(x)
    if not used:
        return None
    point = {name: sampler.draw() for name in sorted(used)}
    rows = [
        tuple(symring.substitute(x, point) for x in row)
        for m in shifted
        for row in m.rows
    ]
    return len(matrices.kernel(rows, shifted[0].dim))


def common_eigenspace(
    conditions: Sequence[tuple[Endo, Poly | Scalar]],
    sampler: RationalSampler | None = None,
) -> SpinorSpace:
    """Joint eigenspace of several endomorphisms, by stacked kernels.

    The symbolic dimension is compared with the kernel dimension at a few
    random rational parameter points; a mismatch means a pivot vanished on
    the generic point and raises ``DimensionError``.
    """
    if not conditions:
        raise DimensionError("common_eigenspace needs at least one condition")
    shifted = [_shifted(m, ev) for m, ev in conditions]
    basis = matrices.stacked_kernel(shifted)
    sampler = sampler or RationalSampler(0)
    for _ in range(GENERIC_CHECK_POINTS):
        nullity = _numeric_nullity(shifted, sampler)
        if nullity is None:
            break
        if nullity != len(basis):
            raise DimensionError(
                f"Eigenspace has symbolic dimension {len(basis)} but "
                f"dimension {nullity} at a random point"
            )
    return SpinorSpace(shifted[0].dim, tuple(basis))


def eigenspace(
    m: Endo, ev: Poly | Scalar, sampler: RationalSampler | None = None
) -> SpinorSpace:
    return common_eigenspace([(m, ev)], sampler)


def eigenvalue_of(m: Endo, v: Sequence[Poly]) -> Poly | None:
    """The scalar lambda with m v = lambda v, or None if v is not an
    eigenvector with polynomial eigenvalue."""
    image = m.apply(v)
    pivot = next((k for k, x in enumerate(v) if x), None)
    if pivot is None:
        raise DimensionError("Eigenvalue of the zero spinor")
    try:
        value = image[pivot].exquo(v[pivot])
    except ExactQuotientFailed:
        return None
    residual = tuple(
        w - value * x for w, x in zip(image, v, strict=True)
    )
    if matrices.vector_is_zero(residual):
        return value
    return None


def eigenspinor_check(
    rep: SpinRep, x: Form, spinor: Sequence[Poly]
) -> Poly | None:
    """Eigenvalue of x acting on the spinor, or None if it is not an
    eigenspinor of x."""
    return eigenvalue_of(rep.act(x), spinor)


def commutator_action_check(rep: SpinRep, x: Form, y: Form) -> Endo:
    return matrices.commutator(rep.act(x), rep.act(y))


def connection_difference(
    rep: SpinRep,
    torsion: Form,
    flux: Form,
    s: Poly,
    p: Poly,
    q: Poly,
    i: int,
) -> Endo:
    """s (e_i _| T) + p (e_i _| F) + q (e_i ^ F) acting on spinors."""
    x = Form.blade(rep.n, (i,))
    total = rep.act(exterior.interior(i, torsion)) * s
    if flux:
        total = total + rep.act(exterior.interior(i, flux)) * p
        total = total + rep.act(exterior.wedge(x, flux)) * q
    return total
