"""Rank obstructions of the curvature contractions.

A spinor killed by K(e_i) and K forces every connected block of those
matrices to be singular. Blocks are the connected components of the
bipartite graph of nonzero entries; a 1x1 block contributes its entry and
larger square blocks their determinant.

Whether such conditions can hold at all is decided with Groebner bases:
real zeros for the obstruction polynomials, complex parameter points for
the kernel of a stacked system.
"""

import logging
from collections.abc import Iterable, Sequence

import sympy

from spinflux.algebra import matrices, symring
from spinflux.algebra.matrices import Endo
from spinflux.algebra.symring import Poly
from spinflux.geometry.curvature import ContractionSet

logger = logging.getLogger(__name__)


def blocks(m: Endo) -> list[tuple[list[int], list[int]]]:
    """Row and column index sets of the connected blocks of ``m``."""
    edges: dict[tuple[str, int], set[tuple[str, int]]] = {}
    for r, c, _ in m.nonzero_entries():
        edges.setdefault(("r", r), set()).add(("c", c))
        edges.setdefault(("c", c), set()).add(("r", r))
    seen: set[tuple[str, int]] = set()
    out = []
    for start in sorted(edges):
        if start in seen:
            continue
        stack, component = [start], []
        seen.add(start)
        while stack:
            node = stack.pop()
            component.append(node)
            for other in edges[node]:
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
        rows = sorted(i for kind, i in component if kind == "r")
        cols = sorted(i for kind, i in component if kind == "c")
        out.append((rows, cols))
    return out


def determinant(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Laplace expansion along the first row."""
    size = len(rows)
    if size == 1:
        return rows[0][0]
    total = symring.ZERO
    for j, x in enumerate(rows[0]):
        if not x:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = x * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def normalize(x: Poly) -> Poly:
    return matrices.normalize_vector([x])[0]


def block_conditions(m: Endo) -> list[Poly]:
    out = []
    for rows, cols in blocks(m):
        if len(rows) != len(cols):
            logger.debug(f"Skipping non-square block {rows} x {cols}")
            continue
        sub = [[m.entry(r, c) for c in cols] for r in rows]
        out.append(determinant(sub))
    return out


def kernel_obstruction(
    contractions: ContractionSet, directions: Iterable[int] | None = None
) -> list[Poly]:
    """Normalized, deduplicated block conditions of K and K(e_i) for the
    given 1-based directions (all when None); constants are dropped."""
    n = len(contractions.k_first)
    chosen = range(1, n + 1) if directions is None else directions
    endos = [contractions.k_second] + [
        contractions.k_first[i - 1] for i in chosen
    ]
    found: list[Poly] = []
    for m in endos:
        for x in block_conditions(m):
            if not x or x.is_ground:
                continue
            y = normalize(x)
            if y not in found:
                found.append(y)
    return found


def _expr(x: Poly) -> sympy.Expr:
    return sympy.expand(x.as_expr())


def _real_and_imaginary(e: sympy.Expr) -> list[sympy.Expr]:
    real = e.subs(sympy.I, 0)
    return [x for x in (real, sympy.expand((e - real) / sympy.I)) if x != 0]


def _is_empty(basis: sympy.GroebnerBasis) -> bool:
    return list(basis.exprs) == [1]


def _triangular_over(basis, gens: Sequence[sympy.Symbol]) -> bool:
    """Whether every symbol but the last is a linear function, with a
    constant leading coefficient, of the symbols after it."""
    for k, x in enumerate(gens[:-1]):
        later = set(gens[k + 1 :])
        if not any(
            g.free_symbols - {x} <= later
            and sympy.Poly(g, x).degree() == 1
            and sympy.Poly(g, x).LC().is_number
            for g in basis.exprs
        ):
            return False
    return True


def _real_zero(exprs: list[sympy.Expr], gens: list[sympy.Symbol]) -> str:
    """``"none"``, ``"found"`` or ``"unknown"`` for real polynomials."""
    exprs = [e for e in exprs if e != 0]
    if not exprs:
        return "found"
    if not gens:
        return "none"
    basis = sympy.groebner(exprs, *gens, order="lex")
    if _is_empty(basis):
        return "none"
    last = gens[-1]
    univariate = [g for g in basis.exprs if g.free_symbols <= {last}]
    if not univariate:
        return "unknown"
    _, factors = sympy.factor_list(univariate[0], last)
    outcome = "none"
    for factor, _ in factors:
        if sympy.Poly(factor, last).count_roots() == 0:
            continue
        if sympy.Poly(factor, last).degree() == 1:
            (root,) = sympy.solve(factor, last)
            rest = [sympy.expand(g.subs(last, root)) for g in basis.exprs]
            found = _real_zero(rest, gens[:-1])
        else:
            fiber = sympy.groebner([*basis.exprs, factor], *gens, order="lex")
            if _is_empty(fiber):
                continue
            found = "found" if _triangular_over(fiber, gens) else "unknown"
        if found == "found":
            return "found"
        if found == "unknown":
            outcome = "unknown"
    return outcome


def common_zero_certificate(
    polys: Sequence[Poly],
    eliminate: Sequence[str],
    final: str,
    scale: dict[str, int] | None = None,
) -> str:
    """Decide whether ``polys`` have a common zero with real parameters.

    Each polynomial splits into its real and imaginary part. A lex Groebner
    basis with ``final`` last, the ``eliminate`` symbols before it and any
    other symbol first is searched one root of the univariate element at a
    time. Returns ``"certified"`` when no real zero exists, ``"refuted"``
    when one does and ``"inconclusive"`` when an irrational root leaves a
    fiber that is not triangular.
    """
    subs = {sympy.Symbol(k): v for k, v in (scale or {}).items()}
    exprs = []
    for x in polys:
        if x:
            exprs += _real_and_imaginary(_expr(x).subs(subs))
    ordered = [*eliminate, final]
    used = sorted(
        {str(s) for e in exprs for s in e.free_symbols} - set(ordered)
    )
    gens = [sympy.Symbol(name) for name in [*used, *ordered]]
    found = _real_zero([sympy.expand(e) for e in exprs], gens)
    logger.debug(f"Real zero search over {[str(g) for g in gens]}: {found}")
    return {"none": "certified", "found": "refuted"}.get(found, "inconclusive")


def has_singular_point(
    rows: Sequence[Sequence[Poly]],
    width: int,
    nonzero: Sequence[Poly] = (),
) -> bool:
    """Whether some complex parameter point off the zeros of ``nonzero``
    gives the ``width``-column matrix ``rows`` a nonzero kernel vector.

    A kernel vector can be scaled so one coordinate is 1; each coordinate
    is tried in turn and the ``nonzero`` conditions enter through one extra
    variable ``t`` with ``t * prod(nonzero) = 1``.
    """
    if any(not x for x in nonzero):
        return False
    xs = [sympy.Dummy(f"x{j}") for j in range(width)]
    t = sympy.Dummy("t")
    equations = []
    for row in rows:
        terms = zip(row, xs, strict=True)
        e = sympy.expand(sum(_expr(x) * v for x, v in terms if x))
        if e != 0 and e not in equations:
            equations.append(e)
    guard = 1 - t * sympy.Mul(*(_expr(x) for x in nonzero))
    params = sorted(
        {s for e in [*equations, guard] for s in e.free_symbols}
        - {t, *xs},
        key=str,
    )
    for j in range(width):
        system = [*equations, xs[j] - 1, sympy.expand(guard)]
        basis = sympy.groebner(system, t, *xs, *params, order="grevlex")
        if not _is_empty(basis):
            logger.debug(f"Kernel vector with coordinate {j} set to 1")
            return True
    return False
