"""Square matrices with polynomial entries and their kernels.

Kernels are computed by fraction-free Gauss-Jordan elimination: every
update is ``(pivot * row - factor * pivot_row) / previous_pivot`` and the
division is exact, so no rational functions ever appear. All pivots end
up equal to the last one, which lets the kernel basis be read off with
polynomial entries only.
"""

import logging
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass

from spinflux.algebra import symring
from spinflux.algebra.symring import Poly, Scalar
from spinflux.errors import DimensionError

logger = logging.getLogger(__name__)

Vector = tuple[Poly, ...]


def _as_poly(value: Poly | Scalar) -> Poly:
    if isinstance(value, Poly):
        return value
    return symring.const(value)


@dataclass(frozen=True)
class Endo:
    rows: tuple[Vector, ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise DimensionError(
                    f"Endo must be square, got a row of length {len(row)} "
                    f"in a {n}-row matrix"
                )

    @staticmethod
    def from_entries(entries: Iterable[Iterable[Poly | Scalar]]) -> "Endo":
        return Endo(
            tuple(tuple(_as_poly(x) for x in row) for row in entries)
        )

    @staticmethod
    def zero(dim: int) -> "Endo":
        return Endo(tuple((symring.ZERO,) * dim for _ in range(dim)))

    @staticmethod
    def scalar(dim: int, value: Poly | Scalar) -> "Endo":
        v = _as_poly(value)
        return Endo(
            tuple(
                tuple(v if i == j else symring.ZERO for j in range(dim))
                for i in range(dim)
            )
        )

    @staticmethod
    def identity(dim: int) -> "Endo":
        return Endo.scalar(dim, 1)

    @staticmethod
    def diagonal(values: Sequence[Poly | Scalar]) -> "Endo":
        dim = len(values)
        return Endo(
            tuple(
                tuple(
                    _as_poly(values[i]) if i == j else symring.ZERO
                    for j in range(dim)
                )
                for i in range(dim)
            )
        )

    @property
    def dim(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Poly:
        return self.rows[i][j]

    def _check(self, other: "Endo") -> None:
        if self.dim != other.dim:
            raise DimensionError(
                f"Endo dimension mismatch: {self.dim} vs {other.dim}"
            )

    def __add__(self, other: "Endo") -> "Endo":
        self._check(other)
        return Endo(
            tuple(
                tuple(x + y for x, y in zip(r1, r2, strict=True))
                for r1, r2 in zip(self.rows, other.rows, strict=True)
            )
        )

    def __neg__(self) -> "Endo":
        return Endo(tuple(tuple(-x for x in row) for row in self.rows))

    def __sub__(self, other: "Endo") -> "Endo":
        return self + (-other)

    def __mul__(self, scalar: Poly | Scalar) -> "Endo":
        factor = _as_poly(scalar)
        return Endo(tuple(tuple(x * factor for x in row) for row in self.rows))

    __rmul__ = __mul__

    def __matmul__(self, other: "Endo") -> "Endo":
        self._check(other)
        n = self.dim
        cols = [[other.rows[k][j] for k in range(n)] for j in range(n)]
        result = []
        for row in self.rows:
            out = []
            for col in cols:
                acc = symring.ZERO
                for x, y in zip(row, col, strict=True):
                    if x and y:
                        acc += x * y
                out.append(acc)
            result.append(tuple(out))
        return Endo(tuple(result))

    def apply(self, v: Sequence[Poly]) -> Vector:
        if len(v) != self.dim:
            raise DimensionError(
                f"Vector of length {len(v)} for a {self.dim}x{self.dim} Endo"
            )
        out = []
        for row in self.rows:
            acc = symring.ZERO
            for x, y in zip(row, v, strict=True):
                if x and y:
                    acc += x * y
            out.append(acc)
        return tuple(out)

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def is_diagonal(self) -> bool:
        return all(
            not x
            for i, row in enumerate(self.rows)
            for j, x in enumerate(row)
            if i != j
        )

    def diagonal_entries(self) -> Vector:
        return tuple(self.rows[i][i] for i in range(self.dim))

    def trace(self) -> Poly:
        return sum(self.diagonal_entries(), symring.ZERO)

    def map_entries(self, fn: Callable[[Poly], Poly]) -> "Endo":
        return Endo(tuple(tuple(fn(x) for x in row) for row in self.rows))

    def substitute(self, bindings: Mapping[str, Scalar]) -> "Endo":
        return self.map_entries(lambda x: symring.substitute(x, bindings))

    def compose(self, bindings: Mapping[str, Poly]) -> "Endo":
        return self.map_entries(lambda x: symring.compose(x, bindings))

    def conjugate_by(self, p: "Endo", p_inv: "Endo") -> "Endo":
        """Return ``p_inv @ self @ p``."""
        return p_inv @ self @ p

    def nonzero_entries(self) -> list[tuple[int, int, Poly]]:
        return [
            (i, j, x)
            for i, row in enumerate(self.rows)
            for j, x in enumerate(row)
            if x
        ]

    def to_text(self) -> str:
        """Row-major dump, one row per line, entries separated by ``" | "``."""
        return "\n".join(
            " | ".join(symring.to_text(x) for x in row) for row in self.rows
        )

    @staticmethod
    def from_text(text: str) -> "Endo":
        rows = [line for line in text.strip().splitlines() if line.strip()]
        return Endo.from_entries(
            [symring.parse(cell.strip()) for cell in line.split("|")]
            for line in rows
        )


def commutator(x: Endo, y: Endo) -> Endo:
    return x @ y - y @ x


def vector_is_zero(v: Sequence[Poly]) -> bool:
    return not any(v)


def _monomial_content(entries: Iterable[Poly]) -> tuple[int, ...] | None:
    content: list[int] | None = None
    for x in entries:
        for monom in x.itermonoms():
            if content is None:
                content = list(monom)
            else:
                content = [
                    min(a, b) for a, b in zip(content, monom, strict=True)
                ]
    return tuple(content) if content is not None else None


def _strip_content(entries: Sequence[Poly]) -> list[Poly]:
    content = _monomial_content(entries)
    if content is None or not any(content):
        return list(entries)
    divisor = symring.RING.from_dict({content: symring.RING.domain.one})
    return [x.exquo(divisor) if x else x for x in entries]


def normalize_vector(v: Sequence[Poly]) -> Vector:
    """Divide out monomial content and make the first nonzero entry's
    leading coefficient one."""
    stripped = _strip_content(v)
    for x in stripped:
        if x:
            lc = x.LC
            inverse = symring.RING.domain.quo(symring.RING.domain.one, lc)
            return tuple(y.mul_ground(inverse) for y in stripped)
    return tuple(stripped)


def rref_den(
    rows: Sequence[Sequence[Poly]], ncols: int
) -> tuple[list[list[Poly]], list[int], Poly]:
    """Fraction-free reduced row echelon form.

    Returns the reduced rows, the pivot columns and the common pivot value.
    """
    a = [_strip_content(row) for row in rows if any(row)]
    nrows = len(a)
    pivots: list[int] = []
    divisor = symring.ONE
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        found = next((i for i in range(r, nrows) if a[i][c]), None)
        if found is None:
            continue
        a[r], a[found] = a[found], a[r]
        pivot = a[r][c]
        pivot_row = a[r]
        for i in range(nrows):
            if i == r:
                continue
            factor = a[i][c]
            row = a[i]
            a[i] = [
                (pivot * row[k] - factor * pivot_row[k]).exquo(divisor)
                for k in range(ncols)
            ]
        divisor = pivot
        pivots.append(c)
        r += 1
    return a[:r], pivots, divisor


def kernel(
    rows: Sequence[Sequence[Poly]], ncols: int
) -> list[Vector]:
    """Basis of the right kernel over the fraction field of the parameters,
    with polynomial entries, in column-echelon order of the free columns."""
    reduced, pivots, d = rref_den(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [symring.ZERO] * ncols
        v[f] = d
        for row, pc in zip(reduced, pivots, strict=True):
            v[pc] = -row[f]
        basis.append(normalize_vector(v))
    logger.debug(
        f"Kernel of {len(rows)}x{ncols} system: rank {len(pivots)}, "
        f"dimension {len(basis)}"
    )
    return basis


def stacked_kernel(endos: Sequence[Endo]) -> list[Vector]:
    """Common kernel of several endomorphisms of the same dimension."""
    if not endos:
        raise DimensionError("stacked_kernel needs at least one Endo")
    dim = endos[0].dim
    rows: list[Vector] = []
    for m in endos:
        if m.dim != dim:
            raise DimensionError(
                f"Endo dimension mismatch: {m.dim} vs {dim}"
            )
        rows.extend(m.rows)
    return kernel(rows, dim)


def rank(rows: Sequence[Sequence[Poly]], ncols: int) -> int:
    return len(rref_den(rows, ncols)[1])


def span_contains(
    basis: Sequence[Sequence[Poly]], v: Sequence[Poly]
) -> bool:
    """Whether ``v`` lies in the span of ``basis`` over the fraction field."""
    if vector_is_zero(v):
        return True
    if not basis:
        return False
    n = len(v)
    columns = [list(b) for b in basis]
    before = rank(columns, n)
    after = rank([*columns, list(v)], n)
    return before == after
