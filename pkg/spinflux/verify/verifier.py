"""Sufficiency, necessity and eigenspinor checks for theorem records."""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from sympy.polys.domains import QQ_I
from sympy.polys.polyerrors import ExactQuotientFailed

from spinflux.algebra import matrices, symring
from spinflux.algebra.matrices import Endo
from spinflux.algebra.symring import Poly
from spinflux.errors import DimensionError, RelationError
from spinflux.geometry import catalog
from spinflux.geometry.catalog import ConnectionParams, GeometryClass
from spinflux.geometry.curvature import (
    CurvatureContext,
    correction,
    k_first,
    k_second,
)
from spinflux.spin.calibration import build_rep
from spinflux.spin.spinrep import SpinorSpace, SpinRep, common_eigenspace
from spinflux.utils.sampling import RationalSampler
from spinflux.verify import obstruction
from spinflux.verify.theorems import (
    Claim,
    Piece,
    TheoremSpec,
    VerificationMode,
)

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 20
ATTEMPTS_PER_SAMPLE = 10

Relations = list[tuple[Poly, str]]


@dataclass
class Condition:
    """One entry of an operator applied to a subbundle basis spinor."""

    operator: str
    spinor: int
    row: int
    value: Poly

    def to_dict(self, residual: Poly | None = None) -> dict:
        kwargs = {}
        if residual is not None:
            kwargs["residual"] = symring.to_text(residual)
        return {
            "operator": self.operator,
            "spinor": self.spinor,
            "row": self.row,
            "entry": symring.to_text(self.value),
            **kwargs,
        }


@dataclass
class Prepared:
    """A theorem record with its class, connection and subbundle built."""

    spec: TheoremSpec
    cls: GeometryClass
    ctx: CurvatureContext
    bindings: dict[str, Poly]
    relations: Relations
    side_conditions: list[Poly]
    pieces: list[SpinorSpace]

    @property
    def subbundle(self) -> SpinorSpace:
        total = SpinorSpace(self.ctx.rep.dim, ())
        for piece in self.pieces:
            total = total.direct_sum(piece)
        return total

    def sub(self, text: str) -> Poly:
        return symring.compose(symring.parse(text), self.bindings)


@dataclass
class SufficiencyResult:
    passed: bool
    checked: int
    offending: dict | None = None
    preserved: bool | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        kwargs = {}
        if self.offending is not None:
            kwargs["offending"] = self.offending
        if self.preserved is not None:
            kwargs["preserved"] = self.preserved
        if self.error is not None:
            kwargs["error"] = self.error
        return {"passed": self.passed, "checked": self.checked, **kwargs}


@dataclass
class NecessityResult:
    relation: str
    outcome: str
    samples: int
    nonzero: int
    witness: dict[str, str] | None = None

    def to_dict(self) -> dict:
        kwargs = {}
        if self.witness is not None:
            kwargs["witness"] = self.witness
        return {
            "relation": self.relation,
            "outcome": self.outcome,
            "samples": self.samples,
            "nonzero": self.nonzero,
            **kwargs,
        }


@dataclass
class EigenData:
    piece: int
    spinor: str
    lam: str | None
    kappa: str | None

    def to_dict(self) -> dict:
        return {
            "piece": self.piece,
            "spinor": self.spinor,
            "lambda": self.lam,
            "kappa": self.kappa,
        }


@dataclass
class VerificationReport:
    theorem: TheoremSpec
    status: str
    subbundle_dim: int
    sufficiency: SufficiencyResult | None = None
    necessity: list[NecessityResult] = field(default_factory=list)
    kernel_dim: int | None = None
    singular: bool | None = None
    eigen: list[EigenData] = field(default_factory=list)
    ric_T: str | None = None
    error: str | None = None

    @property
    def as_expected(self) -> bool:
        return self.status == self.theorem.expect

    def to_dict(self) -> dict:
        kwargs = {}
        if self.sufficiency is not None:
            kwargs["sufficiency"] = self.sufficiency.to_dict()
        if self.kernel_dim is not None:
            kwargs["kernel_dim"] = self.kernel_dim
        if self.singular is not None:
            kwargs["singular"] = self.singular
        if self.ric_T is not None:
            kwargs["ric_T"] = self.ric_T
        if self.error is not None:
            kwargs["error"] = self.error
        return {
            "theorem": self.theorem.to_dict(),
            "status": self.status,
            "as_expected": self.as_expected,
            "subbundle_dim": self.subbundle_dim,
            "necessity": [r.to_dict() for r in self.necessity],
            "eigen": [e.to_dict() for e in self.eigen],
            **kwargs,
        }


# Relations.
def triangularize(relations: Iterable[tuple[Poly, str]]) -> Relations:
    """Reduce each relation by the earlier ones so the list can be applied
    one symbol at a time.

    Leading coefficients of earlier relations are nonzero on the generic
    points of the system, so they are divided out of a reduced relation
    that would otherwise not be linear.

    Raises:
        RelationError: If a reduced relation is not linear in the symbol it
            isolates.
    """
    reduced: Relations = []
    for relation, name in relations:
        r = symring.eliminate_all(relation, reduced)
        if symring.degree_in(r, name) > 1:
            r = _strip_leading(r, name, reduced)
        if symring.degree_in(r, name) != 1:
            raise RelationError(
                f"Relation {symring.to_text(relation)} does not isolate "
                f"{name} after reduction: {symring.to_text(r)}"
            )
        reduced.append((r, name))
    return reduced


def _strip_leading(r: Poly, name: str, reduced: Relations) -> Poly:
    for relation, isolated in reduced:
        lead, _ = symring.linear_parts(relation, isolated)
        if lead.is_ground:
            continue
        while symring.degree_in(r, name) > 1:
            try:
                r = r.exquo(lead)
            except ExactQuotientFailed:
                break
    return r


def reduce_all(entries: Sequence[Poly], system: Relations) -> list[Poly]:
    """Eliminate every isolated symbol from a family of entries with one
    common scale factor, so ratios between entries survive."""
    out = list(entries)
    for relation, name in system:
        d = max((symring.degree_in(x, name) for x in out), default=0)
        if d == 0:
            continue
        out = [
            symring.eliminate(x, relation, name, d) if x else x for x in out
        ]
    return out


def _divide(x, y):
    return QQ_I.quo(x, y)


def solve_point(
    system: Relations, free: Mapping[str, Fraction]
) -> dict | None:
    """Extend a point of the free symbols along the triangular system, last
    relation first; None when a leading coefficient vanishes there."""
    point: dict = dict(free)
    for relation, name in reversed(system):
        c1, c0 = symring.linear_parts(relation, name)
        lead = symring.evaluate(c1, point)
        if not lead:
            return None
        point[name] = _divide(-symring.evaluate(c0, point), lead)
    return point


# Preparation.
def prepare(
    spec: TheoremSpec,
    rep: SpinRep | None = None,
    sampler: RationalSampler | None = None,
) -> Prepared:
    base = catalog.get_class(spec.class_id)
    rep = rep or build_rep(base.n)
    sampler = sampler or RationalSampler(0)
    assumptions = {
        k: symring.compose(symring.parse(v), base.constraints)
        for k, v in spec.assumptions.items()
    }
    bindings = {
        k: symring.compose(v, assumptions)
        for k, v in base.constraints.items()
    } | assumptions
    cls = base.specialized(assumptions)
    ansatz = cls.flux(spec.flux)
    params = ConnectionParams.for_derivative(spec.derivative, cls.n)
    params = ConnectionParams(
        params.B,
        params.p,
        params.q,
        {name: symring.gen(name) for name in ansatz.coefficients},
    ).compose(bindings)
    ctx = CurvatureContext(cls, params, rep, ansatz.name)

    def sub(text: str) -> Poly:
        return symring.compose(symring.parse(text), bindings)

    relations = [(sub(text), name) for text, name in spec.relations]
    side = list(cls.side_conditions) + [sub(t) for t in spec.side_conditions]
    pieces = [
        _build_piece(cls, rep, piece, sub, sampler.fork(f"{spec.id}:{k}"))
        for k, piece in enumerate(spec.pieces)
    ]
    return Prepared(spec, cls, ctx, bindings, relations, side, pieces)


def _build_piece(
    cls: GeometryClass,
    rep: SpinRep,
    piece: Piece,
    sub,
    sampler: RationalSampler,
) -> SpinorSpace:
    if piece.indices:
        return SpinorSpace.coordinates(rep.dim, piece.indices)
    if not piece.eigen:
        return SpinorSpace.full(rep.dim)
    conditions = [
        (rep.act(cls.piece(name)), sub(ev)) for name, ev in piece.eigen
    ]
    return common_eigenspace(conditions, sampler)


# Conditions.
def killing_operator(ctx: CurvatureContext, i: int, lam: Poly) -> Endo:
    """lam/8 e_i + 1/4 B (e_i _| T^c) + p (e_i _| F) + q (e_i ^ F)."""
    quarter = symring.const(Fraction(1, 4))
    eighth = symring.const(Fraction(1, 8))
    return (
        correction(ctx, i)
        + ctx.t_in(i) * quarter
        + ctx.e(i) * (lam * eighth)
    )


def operators(
    ctx: CurvatureContext,
    mode: VerificationMode,
    bindings: Mapping[str, Poly] | None = None,
) -> list[tuple[str, Endo]]:
    directions = range(1, ctx.n + 1)
    if mode == VerificationMode.PARALLEL:
        return [(f"C(e{i})", correction(ctx, i)) for i in directions]
    elif mode == VerificationMode.KILLING:
        lam = symring.compose(symring.gen("lam"), bindings or {})
        return [
            (f"Killing(e{i})", killing_operator(ctx, i, lam))
            for i in directions
        ]
    elif mode == VerificationMode.CURVATURE:
        first = [(f"K(e{i})", k_first(ctx, i)) for i in directions]
        return [*first, ("K", k_second(ctx))]
    else:
        raise ValueError(f"Unknown verification mode: {mode}")


def _image_conditions(
    name: str, op: Endo, basis: Sequence[Sequence[Poly]]
) -> list[Condition]:
    out = []
    for k, v in enumerate(basis):
        for row, x in enumerate(op.apply(v)):
            if x:
                out.append(Condition(name, k, row, x))
    return out


def killing_conditions(
    ctx: CurvatureContext,
    subspace: SpinorSpace,
    mode: VerificationMode = VerificationMode.PARALLEL,
    bindings: Mapping[str, Poly] | None = None,
) -> list[Condition]:
    """Nonzero entries of every operator of ``mode`` applied to every basis
    spinor; empty exactly when the condition holds identically."""
    out = []
    for name, op in operators(ctx, mode, bindings):
        out.extend(_image_conditions(name, op, subspace.basis))
    return out


def _difference_conditions(
    prepared: Prepared, direction: int, value: Poly
) -> list[Condition]:
    ctx = prepared.ctx
    out = []
    for i in range(1, ctx.n + 1):
        expected = value if i == direction else symring.ZERO
        shifted = correction(ctx, i) - Endo.scalar(ctx.rep.dim, expected)
        basis = prepared.subbundle.basis
        out.extend(_image_conditions(f"C(e{i})-shift", shifted, basis))
    return out


def all_conditions(prepared: Prepared) -> list[Condition]:
    spec = prepared.spec
    conditions = killing_conditions(
        prepared.ctx, prepared.subbundle, spec.mode, prepared.bindings
    )
    if spec.expected_difference is not None:
        direction, text = spec.expected_difference
        conditions += _difference_conditions(
            prepared, direction, prepared.sub(text)
        )
    return conditions


def preserves_subbundle(prepared: Prepared, system: Relations) -> bool:
    """Whether every correction(e_i) maps the subbundle into itself on the
    relations."""
    basis = [
        reduce_all(list(v), system) for v in prepared.subbundle.basis
    ]
    for i in range(1, prepared.ctx.n + 1):
        op = correction(prepared.ctx, i)
        for v in prepared.subbundle.basis:
            image = reduce_all(list(op.apply(v)), system)
            if not matrices.span_contains(basis, image):
                return False
    return True


# Sufficiency.
def verify_sufficiency(prepared: Prepared) -> SufficiencyResult:
    try:
        system = triangularize(prepared.relations)
    except RelationError as e:
        logger.warning(f"{prepared.spec.id}: {e}")
        return SufficiencyResult(False, 0, error=str(e))
    conditions = all_conditions(prepared)
    for condition in conditions:
        residual = symring.eliminate_all(condition.value, system)
        if residual:
            return SufficiencyResult(
                False, len(conditions), condition.to_dict(residual)
            )
    preserved = None
    if prepared.spec.preserves:
        preserved = preserves_subbundle(prepared, system)
    passed = preserved is not False
    return SufficiencyResult(passed, len(conditions), preserved=preserved)


# Necessity.
def _symbols(polys: Iterable[Poly]) -> set[str]:
    used: set[str] = set()
    for x in polys:
        used |= symring.symbols_of(x)
    return used


def _point_text(point: Mapping) -> dict[str, str]:
    return {
        name: symring.gaussian_text(symring.to_gaussian(value))
        for name, value in sorted(point.items())
    }


def necessity_for_relation(
    prepared: Prepared,
    k: int,
    conditions: Sequence[Condition],
    samples: int,
    sampler: RationalSampler,
) -> NecessityResult:
    """Sample points on the other relations where relation ``k`` fails and
    count those at which some condition is nonzero."""
    relation, name = prepared.relations[k]
    text = symring.to_text(relation)
    others = [r for j, r in enumerate(prepared.relations) if j != k]
    try:
        system = triangularize(others)
    except RelationError as e:
        logger.warning(f"{prepared.spec.id}: {e}")
        return NecessityResult(text, "skipped", 0, 0)
    values = [c.value for c in conditions]
    isolated = {n for _, n in system}
    free = _symbols(
        [*values, relation, *prepared.side_conditions]
        + [r for r, _ in system]
    ) - isolated
    drawn = nonzero = 0
    witness = None
    for _ in range(samples * ATTEMPTS_PER_SAMPLE):
        if drawn == samples:
            break
        point = solve_point(system, sampler.draw_point(free))
        if point is None or not symring.evaluate(relation, point):
            continue
        side = prepared.side_conditions
        if any(not symring.evaluate(x, point) for x in side):
            continue
        drawn += 1
        if any(symring.evaluate(x, point) for x in values):
            nonzero += 1
        elif witness is None:
            witness = _point_text(point)
    if drawn == 0:
        outcome = "vacuous"
    elif nonzero == drawn:
        outcome = "certified"
    else:
        outcome = "partial"
    logger.debug(
        f"{prepared.spec.id}: relation {text} ({name}) {outcome}, "
        f"{nonzero}/{drawn} nonzero"
    )
    return NecessityResult(text, outcome, drawn, nonzero, witness)


def verify_necessity(
    prepared: Prepared, samples: int, sampler: RationalSampler
) -> list[NecessityResult]:
    conditions = all_conditions(prepared)
    return [
        necessity_for_relation(
            prepared,
            k,
            conditions,
            samples,
            sampler.fork(f"{prepared.spec.id}:relation{k}"),
        )
        for k in range(len(prepared.relations))
    ]


def stacked_rows(
    prepared: Prepared, system: Relations
) -> tuple[list[list[Poly]], int]:
    """Every operator of the record applied to the subbundle basis, stacked
    into one matrix and reduced by the relations, with its width."""
    basis = prepared.subbundle.basis
    rows: list[list[Poly]] = []
    ops = operators(prepared.ctx, prepared.spec.mode, prepared.bindings)
    for _, op in ops:
        images = [op.apply(v) for v in basis]
        rows.extend(
            [images[j][r] for j in range(len(basis))]
            for r in range(prepared.ctx.rep.dim)
        )
    width = len(basis)
    flat = reduce_all([x for row in rows for x in row], system)
    reduced = [flat[r * width : (r + 1) * width] for r in range(len(rows))]
    return reduced, width


def consistency_kernel(prepared: Prepared) -> int:
    """Dimension of the space of spinors in the subbundle meeting every
    condition at the generic points of the relations."""
    rows, width = stacked_rows(prepared, triangularize(prepared.relations))
    return len(matrices.kernel(rows, width))


def singular_on_relations(prepared: Prepared) -> bool:
    """Whether the conditions admit a spinor at some point of the relations
    where the side conditions and the isolating coefficients are nonzero."""
    system = triangularize(prepared.relations)
    rows, width = stacked_rows(prepared, system)
    nonzero = [
        symring.eliminate_all(x, system) for x in prepared.side_conditions
    ]
    for k, (relation, name) in enumerate(system):
        lead, _ = symring.linear_parts(relation, name)
        lead = symring.eliminate_all(lead, system[k + 1 :])
        if not lead.is_ground:
            nonzero.append(lead)
    return obstruction.has_singular_point(rows, width, nonzero)


# Eigen data.
def eigen_modulo(
    m: Endo, v: Sequence[Poly], system: Relations
) -> str | None:
    """Text of the scalar c with m v = c v on the relations, or None."""
    image = m.apply(v)
    pivot = next((k for k, x in enumerate(v) if x), None)
    if pivot is None:
        raise DimensionError("Eigenvalue of the zero spinor")
    num, den = image[pivot], v[pivot]
    for w, x in zip(image, v, strict=True):
        if symring.eliminate_all(w * den - num * x, system):
            return None
    try:
        return symring.to_text(num.exquo(den))
    except ExactQuotientFailed:
        return f"({symring.to_text(num)})/({symring.to_text(den)})"


def eigen_data(prepared: Prepared, system: Relations) -> list[EigenData]:
    ctx = prepared.ctx
    torsion = ctx.rep.act(ctx.torsion) * ctx.params.B
    flux = ctx.rep.act(ctx.flux)
    out = []
    for k, piece in enumerate(prepared.pieces):
        for v in piece.basis:
            out.append(
                EigenData(
                    k,
                    "[" + ", ".join(symring.to_text(x) for x in v) + "]",
                    eigen_modulo(torsion, v, system),
                    eigen_modulo(flux, v, system),
                )
            )
    return out


def deformed_ric_T(prepared: Prepared) -> Endo:
    """Ric^T = Ric^c + 1/4 (1 - B^2) T^c_imn T^c_jmn for T = B T^c."""
    cls, B = prepared.cls, prepared.ctx.params.B
    ric_g = cls.ricci_c + catalog.torsion_square(cls.torsion) * Fraction(1, 4)
    return catalog.ric_T(cls.torsion * B, ric_g)


# Driver.
def verify_theorem(
    spec: TheoremSpec,
    samples: int = DEFAULT_SAMPLES,
    sampler: RationalSampler | None = None,
) -> VerificationReport:
    sampler = sampler or RationalSampler(0)
    logger.info(f"Verifying {spec.id} ({spec.class_id}, {spec.mode.value})")
    try:
        prepared = prepare(spec, sampler=sampler.fork(f"{spec.id}:pieces"))
    except (DimensionError, RelationError) as e:
        logger.warning(f"{spec.id}: {e}")
        return VerificationReport(spec, "fail", 0, error=str(e))
    dim = prepared.subbundle.dim
    if dim == 0:
        return VerificationReport(spec, "fail", 0, error="empty subbundle")
    if spec.claim == Claim.NECESSARY:
        try:
            kernel_dim = consistency_kernel(prepared)
            singular = None
            if kernel_dim == 0:
                singular = singular_on_relations(prepared)
        except RelationError as e:
            return VerificationReport(spec, "fail", dim, error=str(e))
        status = "pass" if kernel_dim > 0 or singular else "fail"
        report = VerificationReport(
            spec, status, dim, kernel_dim=kernel_dim, singular=singular
        )
        if not report.as_expected:
            logger.warning(
                f"{spec.id}: status {report.status}, expected {spec.expect}"
            )
        return report
    sufficiency = verify_sufficiency(prepared)
    report = VerificationReport(
        spec, "pass" if sufficiency.passed else "fail", dim, sufficiency
    )
    if spec.iff and sufficiency.passed:
        report.necessity = verify_necessity(
            prepared, samples, sampler.fork(f"{spec.id}:necessity")
        )
        if any(r.outcome == "partial" for r in report.necessity):
            report.status = "fail"
    if sufficiency.passed:
        system = triangularize(prepared.relations)
        report.eigen = eigen_data(prepared, system)
        if spec.construction:
            report.ric_T = deformed_ric_T(prepared).to_text()
    if not report.as_expected:
        logger.warning(
            f"{spec.id}: status {report.status}, expected {spec.expect}"
        )
    return report


def verify_all(
    specs: Iterable[TheoremSpec],
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> list[VerificationReport]:
    root = RationalSampler(seed)
    return [verify_theorem(s, samples, root.fork(s.id)) for s in specs]
