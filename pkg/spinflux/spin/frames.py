"""Candidate gamma-matrix frames for the spin representations.

Every candidate is a list of ``n`` constant ``Endo`` matrices acting on
column vectors. Dimension 5 is built from iterated 2x2 blocks, dimensions
6 and 7 from the octonionic module on (eta, f1, ..., f7) followed by a
change of spinor basis.
"""

import functools
import itertools
import logging
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

from spinflux.algebra import symring
from spinflux.algebra.matrices import Endo
from spinflux.algebra.symring import GaussianRational
from spinflux.errors import DimensionError
from spinflux.spin.spinrep import spinor_dimension

logger = logging.getLogger(__name__)


def _g(re, im=0) -> GaussianRational:
    return symring.gaussian(re, im)


ZERO = _g(0)
ONE = _g(1)
IU = _g(0, 1)

# Signed triples of the 3-form e127 + e135 - e146 - e236 - e245 + e347 + e567.
OCTONION_TRIPLES: tuple[tuple[int, int, int, int], ...] = (
    (1, 2, 7, 1),
    (1, 3, 5, 1),
    (1, 4, 6, -1),
    (2, 3, 6, -1),
    (2, 4, 5, -1),
    (3, 4, 7, 1),
    (5, 6, 7, 1),
)


def _structure_constants() -> dict[tuple[int, int], tuple[int, int]]:
    """Map (i, j) to (k, sign) with e_i e_j = sign * e_k on imaginary units."""
    table: dict[tuple[int, int], tuple[int, int]] = {}
    for a, b, c, sign in OCTONION_TRIPLES:
        for (x, y, z), parity in (
            ((a, b, c), 1),
            ((b, c, a), 1),
            ((c, a, b), 1),
            ((b, a, c), -1),
            ((a, c, b), -1),
            ((c, b, a), -1),
        ):
            table[(x, y)] = (z, sign * parity)
    return table


STRUCTURE = _structure_constants()


def _constant_endo(rows: Sequence[Sequence[GaussianRational]]) -> Endo:
    return Endo.from_entries([[symring.const(x) for x in row] for row in rows])


def octonion_gammas() -> list[Endo]:
    """gamma_i eta = f_i and gamma_i f_j = -delta_ij eta + w_ijk f_k."""
    gammas = []
    for i in range(1, 8):
        m = [[ZERO] * 8 for _ in range(8)]
        m[i][0] = ONE
        for j in range(1, 8):
            if j == i:
                m[0][j] = -ONE
                continue
            k, sign = STRUCTURE[(i, j)]
            m[k][j] = _g(sign)
        gammas.append(_constant_endo(m))
    return gammas


def _kron(x: Sequence[Sequence[GaussianRational]], y) -> list[list]:
    n, m = len(x), len(y)
    return [
        [x[i // m][j // m] * y[i % m][j % m] for j in range(n * m)]
        for i in range(n * m)
    ]


def _scale(x, c) -> list[list]:
    return [[c * v for v in row] for row in x]


SIGMA_X = [[ZERO, ONE], [ONE, ZERO]]
SIGMA_Y = [[ZERO, -IU], [IU, ZERO]]
SIGMA_Z = [[ONE, ZERO], [ZERO, -ONE]]
ID2 = [[ONE, ZERO], [ZERO, ONE]]


def tensor_gammas_5(volume: GaussianRational) -> list[Endo]:
    """Dimension 5 from 2x2 blocks; gamma_5 is fixed so that the volume
    element e12345 acts as ``volume`` (which must be +i or -i)."""
    if volume not in (IU, -IU):
        raise DimensionError(f"Volume scalar must be +i or -i, got {volume}")
    g1 = _constant_endo(_kron(_scale(SIGMA_X, IU), ID2))
    g2 = _constant_endo(_kron(_scale(SIGMA_Y, IU), ID2))
    g3 = _constant_endo(_kron(_scale(SIGMA_Z, IU), SIGMA_X))
    g4 = _constant_endo(_kron(_scale(SIGMA_Z, IU), SIGMA_Y))
    # (g1 g2 g3 g4)^2 = 1, so g5 = c * g1 g2 g3 g4 gives volume c.
    g5 = (g1 @ g2 @ g3 @ g4) * symring.const(volume)
    return [g1, g2, g3, g4, g5]


def conjugate(x: GaussianRational) -> GaussianRational:
    return symring.RING.domain(x.x, -x.y)


def change_basis(
    gammas: Sequence[Endo], columns: Sequence[Sequence[GaussianRational]]
) -> list[Endo]:
    """Rewrite the gammas in a unitary basis given by its column vectors."""
    dim = len(columns)
    p = _constant_endo(
        [[columns[c][r] for c in range(dim)] for r in range(dim)]
    )
    p_h = _constant_endo(
        [[conjugate(columns[r][c]) for c in range(dim)] for r in range(dim)]
    )
    if p_h @ p != Endo.identity(dim):
        raise DimensionError("Spinor basis change is not unitary")
    return [g.conjugate_by(p, p_h) for g in gammas]


def monomial_columns(
    order: Sequence[int], phases: Sequence[GaussianRational]
) -> list[list[GaussianRational]]:
    """Columns of the basis whose k-th vector is phases[k] times the
    order[k]-th old one."""
    dim = len(order)
    return [
        [phases[k] if r == o else ZERO for r in range(dim)]
        for k, o in enumerate(order)
    ]


def permutation_columns(order: Sequence[int]) -> list[list[GaussianRational]]:
    return monomial_columns(order, [ONE] * len(order))


def _h(re, im) -> GaussianRational:
    return _g(Fraction(re, 2), Fraction(im, 2))


def _unit(eta=(0, 0), **fs: tuple[int, int]) -> list[GaussianRational]:
    """Half-integer vector in (eta, f1..f7) coordinates."""
    v = [ZERO] * 8
    v[0] = _h(*eta)
    for name, value in fs.items():
        v[int(name[1:])] = _h(*value)
    return v


# Unitary spinor basis of the six-dimensional frame.
UNITARY_BASIS_6: tuple[list[GaussianRational], ...] = (
    _unit(eta=(-1, 1), f7=(1, 1)),
    _unit(eta=(1, -1), f7=(1, 1)),
    _unit(f1=(1, 1), f2=(-1, 1)),
    _unit(f3=(-1, -1), f4=(1, -1)),
    _unit(f5=(1, -1), f6=(1, 1)),
    _unit(f1=(1, 1), f2=(1, -1)),
    _unit(f3=(-1, -1), f4=(-1, 1)),
    _unit(f5=(-1, 1), f6=(1, 1)),
)

ADAPTED_ORDER_7 = (0, 7, 5, 6, 1, 2, 3, 4)
SWAPPED_ORDER_7 = (0, 7, 6, 5, 1, 2, 3, 4)


@dataclass(frozen=True)
class Frame:
    name: str
    n: int
    description: str
    build: Callable[[], list[Endo]]


def candidate_frames(n: int) -> list[Frame]:
    if n == 5:
        return [
            Frame(
                "tensor-volume-minus-i",
                5,
                "2x2 blocks, e12345 acts as -i",
                lambda: tensor_gammas_5(-IU),
            ),
            Frame(
                "tensor-volume-plus-i",
                5,
                "2x2 blocks, e12345 acts as +i",
                lambda: tensor_gammas_5(IU),
            ),
        ]
    if n == 6:
        return [
            Frame(
                "octonion-standard",
                6,
                "gamma_1..gamma_6 of the octonion module, basis eta, f1..f7",
                lambda: octonion_gammas()[:6],
            ),
            Frame(
                "octonion-unitary",
                6,
                "gamma_1..gamma_6 of the octonion module in an adapted "
                "unitary basis",
                lambda: change_basis(octonion_gammas()[:6], UNITARY_BASIS_6),
            ),
        ]
    if n == 7:
        return [
            Frame(
                "octonion-standard",
                7,
                "octonion module, basis eta, f1..f7",
                octonion_gammas,
            ),
            Frame(
                "octonion-adapted",
                7,
                "octonion module, basis eta, f7, f5, f6, f1, f2, f3, f4",
                lambda: change_basis(
                    octonion_gammas(), permutation_columns(ADAPTED_ORDER_7)
                ),
            ),
            Frame(
                "octonion-adapted-swapped",
                7,
                "octonion module, basis eta, f7, f6, f5, f1, f2, f3, f4",
                lambda: change_basis(
                    octonion_gammas(), permutation_columns(SWAPPED_ORDER_7)
                ),
            ),
        ]
    raise DimensionError(f"Unsupported dimension: {n}")


PHASES: tuple[tuple[GaussianRational, str], ...] = (
    (ONE, "1"),
    (IU, "i"),
    (-ONE, "-1"),
    (-IU, "-i"),
)


def monomial_orbit(frame: Frame, limit: int | None = None) -> Iterator[Frame]:
    """Frames obtained from ``frame`` by permuting its spinor basis and
    rescaling the basis vectors by fourth roots of unity.

    The first phase stays 1, as a common phase leaves every gamma matrix
    unchanged, and ``frame`` itself is skipped. Phases vary fastest.
    """
    dim = spinor_dimension(frame.n)
    identity = tuple(range(dim))
    yielded = 0
    for order in itertools.permutations(identity):
        for tail in itertools.product(PHASES, repeat=dim - 1):
            if order == identity and all(value == ONE for value, _ in tail):
                continue
            if limit is not None and yielded >= limit:
                return
            yielded += 1
            phases = (ONE, *(value for value, _ in tail))
            names = ", ".join(["1", *(name for _, name in tail)])
            yield Frame(
                f"{frame.name}~{yielded}",
                frame.n,
                f"{frame.name} with basis order {list(order)} and phases "
                f"[{names}]",
                functools.partial(_monomial_build, frame, order, phases),
            )


def _monomial_build(
    frame: Frame,
    order: Sequence[int],
    phases: Sequence[GaussianRational],
) -> list[Endo]:
    return change_basis(frame.build(), monomial_columns(order, phases))
