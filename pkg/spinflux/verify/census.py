"""Parallel spinor census per class and the rendered existence table.

N is the largest subbundle among the construction records that pass
sufficiency. N^c counts the nabla^c-parallel spinors claimed for the
class, confirmed in the kernel of every K^c contraction (B = 1, F = 0).
The eigenspinor mark is set when every constructed basis spinor is an
eigenspinor of T = B T^c on the relations.
"""

import logging
from dataclasses import dataclass, field

from spinflux.algebra import symring
from spinflux.errors import DimensionError
from spinflux.geometry import catalog
from spinflux.geometry.catalog import ConnectionParams
from spinflux.geometry.curvature import CurvatureContext, k_first, k_second
from spinflux.spin.calibration import build_rep
from spinflux.spin.spinrep import SpinorSpace, common_eigenspace
from spinflux.utils.sampling import RationalSampler
from spinflux.verify import verifier
from spinflux.verify.theorems import theorems_for

logger = logging.getLogger(__name__)

OUT_OF_SCOPE = "n/a (out of scope)"
NO_SOLUTIONS = "no solutions"


@dataclass(frozen=True)
class PrintedRow:
    """One row of the published table; None stands for a dash."""

    n: int | None
    ric_t_ne: int | None
    ric_t_eq: int | None
    mark: bool | None
    n_c: int | None

    def to_dict(self) -> dict:
        return {
            "N": self.n,
            "N(Ric^T=0), T!=T^c": self.ric_t_ne,
            "N(Ric^T=0), T=T^c": self.ric_t_eq,
            "eigenspinor": self.mark,
            "N^c": self.n_c,
        }


_NONE = PrintedRow(None, None, None, None, None)

# label, class id, printed row.
TABLE: tuple[tuple[str, str, PrintedRow], ...] = (
    ("n=5 alpha-Sasakian", "Sasakian5", PrintedRow(1, 1, 1, True, 2)),
    ("n=6 SU(3)", "AH_SU3", PrintedRow(2, 1, None, True, 2)),
    ("n=6 SO(3)", "AH_SO3", PrintedRow(2, 1, 2, True, 2)),
    ("n=6 SU(2)", "AH_SU2", PrintedRow(2, None, None, False, 4)),
    ("n=6 U(2)_0", "AH_U2_0", PrintedRow(2, None, None, False, 4)),
    ("n=6 U(2)_1", "AH_U2_1", _NONE),
    ("n=6 U(2)_-1", "AH_U2_-1", PrintedRow(2, 1, None, True, 2)),
    (
        "n=7 nearly parallel",
        "G2_NearlyParallel",
        PrintedRow(2, 2, None, True, 1),
    ),
    ("n=7 su(3) I", "G2_su3_I", PrintedRow(2, None, None, True, 2)),
    ("n=7 su(3) II", "G2_su3_II", PrintedRow(2, 2, None, True, 2)),
    ("n=7 so(3) I", "G2_so3_I", PrintedRow(2, None, None, True, 2)),
    ("n=7 so(3) II", "G2_so3_II", PrintedRow(2, 2, 1, True, 2)),
    ("n=7 su(2) I", "G2_su2_I", PrintedRow(4, 4, 3, True, 4)),
    ("n=7 su(2) II", "G2_su2_II", PrintedRow(4, None, None, True, 4)),
    ("n=7 su(2) III", "G2_su2_III", PrintedRow(3, None, None, True, 4)),
    ("n=7 u(2) I", "G2_u2_I", PrintedRow(2, 2, 2, True, 2)),
    ("n=7 u(2) II", "G2_u2_II", PrintedRow(2, 2, None, True, 2)),
    ("n=7 su_c(2) rel.", "G2_suc2rel", PrintedRow(1, 1, 1, True, 1)),
    ("n=7 alpha-Sasakian", "Sasakian7", PrintedRow(2, 2, 2, True, 2)),
)

# Claimed nabla^c-parallel spinors: eigenbundle pieces or coordinate
# spinors, and the Ricci assumptions they need.
_D2_PM = ((("D2", "4"),), (("D2", "-4"),))
_D2_PIECES = (*_D2_PM, (("D2", "-2"),))
_CLAIMED: dict[str, tuple[tuple, dict[str, str]]] = {
    "Sasakian5": (
        ((("Phi", "2*I"),), (("Phi", "-2*I"),)),
        {"rho": "alpha^2"},
    ),
    "Sasakian7": (
        ((("Phi", "3*I"),), (("Phi", "-3*I"),)),
        {"rho": "2*alpha^2"},
    ),
    "AH_SU3": (((("T", "4*a"),), (("T", "-4*a"),)), {}),
    "AH_SO3": (((("*Omega", "-3"),),), {}),
    "AH_SU2": (
        (
            (("*Omega1", "-1"), ("*Omega2", "-2")),
            (("*Omega1", "-1"), ("*Omega2", "2")),
        ),
        {},
    ),
    "AH_U2_0": (
        (
            (("*Omega1", "-1"), ("*Omega2", "-2")),
            (("*Omega1", "-1"), ("*Omega2", "2")),
        ),
        {},
    ),
    "AH_U2_1": ((), {}),
    "AH_U2_-1": (((("*Omega1", "-1"), ("*Omega2", "-2")),), {}),
    "G2_NearlyParallel": (((("omega3", "-7"),),), {}),
    "G2_su3_I": (((0, 1),), {}),
    "G2_su3_II": (((0, 1),), {}),
    "G2_so3_I": (((0, 1),), {}),
    "G2_so3_II": (((0, 1),), {}),
    "G2_su2_I": (_D2_PIECES, {}),
    "G2_su2_II": (_D2_PIECES, {}),
    "G2_su2_III": (_D2_PIECES, {}),
    "G2_u2_I": (_D2_PM, {}),
    "G2_u2_II": (_D2_PM, {}),
    "G2_suc2rel": (((("D3", "6"),),), {}),
}


@dataclass
class CensusRow:
    label: str
    class_id: str
    printed: PrintedRow
    n: int
    n_c: int
    mark: bool | None
    kappa_ok: bool | None
    records: list[dict] = field(default_factory=list)

    @property
    def no_solutions(self) -> bool:
        return self.n == 0 and self.n_c == 0

    @property
    def agreement(self) -> dict[str, bool]:
        printed = self.printed
        return {
            "N": (printed.n or 0) == self.n,
            "N^c": (printed.n_c or 0) == self.n_c,
            "eigenspinor": printed.mark == self.mark,
        }

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "class_id": self.class_id,
            "printed": self.printed.to_dict(),
            "computed": {
                "N": self.n,
                "N^c": self.n_c,
                "eigenspinor": self.mark,
                "kappa": self.kappa_ok,
                "N(Ric^T=0)": OUT_OF_SCOPE,
            },
            "agreement": self.agreement,
            "records": self.records,
        }


def _claimed_pieces(cid: str, sampler: RationalSampler) -> list[SpinorSpace]:
    pieces, assumptions = _CLAIMED[cid]
    bindings = {k: symring.parse(v) for k, v in assumptions.items()}
    cls = catalog.get_class(cid).specialized(bindings)
    rep = build_rep(cls.n)
    out = []
    for k, piece in enumerate(pieces):
        if all(isinstance(i, int) for i in piece):
            out.append(SpinorSpace.coordinates(rep.dim, piece))
            continue
        conditions = [
            (rep.act(cls.piece(name)), symring.parse(ev)) for name, ev in piece
        ]
        out.append(common_eigenspace(conditions, sampler.fork(f"{cid}:{k}")))
    return out


def characteristic_count(cid: str, sampler: RationalSampler) -> int:
    """Claimed nabla^c-parallel spinors that K^c annihilates."""
    _, assumptions = _CLAIMED[cid]
    bindings = {k: symring.parse(v) for k, v in assumptions.items()}
    cls = catalog.get_class(cid).specialized(bindings)
    zero_flux = {name: symring.ZERO for name in cls.flux().coefficients}
    params = ConnectionParams(
        symring.ONE, symring.ZERO, symring.ZERO, zero_flux
    )
    ctx = CurvatureContext(cls, params, build_rep(cls.n))
    ops = [k_first(ctx, i) for i in range(1, cls.n + 1)] + [k_second(ctx)]
    count = 0
    for piece in _claimed_pieces(cid, sampler):
        if all(not any(op.apply(v)) for op in ops for v in piece.basis):
            count += piece.dim
        else:
            logger.info(f"{cid}: a claimed nabla^c piece is not in ker K^c")
    return count


def census_row(
    label: str, cid: str, printed: PrintedRow, sampler: RationalSampler
) -> CensusRow:
    logger.info(f"Census for {cid}")
    best = 0
    lams: list[bool] = []
    kappas: list[bool] = []
    records = []
    for spec in theorems_for(cid):
        if not spec.construction:
            continue
        try:
            prepared = verifier.prepare(spec, sampler=sampler.fork(spec.id))
        except DimensionError as e:
            logger.warning(f"{spec.id}: {e}")
            records.append({"id": spec.id, "passed": False, "dim": 0})
            continue
        result = verifier.verify_sufficiency(prepared)
        dim = prepared.subbundle.dim
        records.append({"id": spec.id, "passed": result.passed, "dim": dim})
        if not result.passed:
            continue
        best = max(best, dim)
        system = verifier.triangularize(prepared.relations)
        for data in verifier.eigen_data(prepared, system):
            lams.append(data.lam is not None)
            kappas.append(data.kappa is not None)
    return CensusRow(
        label,
        cid,
        printed,
        best,
        characteristic_count(cid, sampler.fork("characteristic")),
        all(lams) if lams else None,
        all(kappas) if kappas else None,
        records,
    )


def parallel_spinor_census(
    class_ids: list[str] | None = None, seed: int = 0
) -> list[CensusRow]:
    root = RationalSampler(seed)
    return [
        census_row(label, cid, printed, root.fork(cid))
        for label, cid, printed in TABLE
        if class_ids is None or cid in class_ids
    ]


def _mark(value: bool | None) -> str:
    if value is None:
        return "-"
    return "yes" if value else "no"


def _count(value: int | None) -> str:
    return "-" if value is None else str(value)


def render_table(rows: list[CensusRow]) -> str:
    """Aligned text: computed values with the printed ones in brackets."""
    header = ("structure", "N", "N(Ric^T=0)", "T.Psi=lam.Psi", "N^c")
    lines = []
    for row in rows:
        p = row.printed
        if row.no_solutions:
            lines.append(
                (row.label, NO_SOLUTIONS, "", "", f"0 [{_count(p.n_c)}]")
            )
            continue
        printed_ric = f"{_count(p.ric_t_ne)}/{_count(p.ric_t_eq)}"
        lines.append(
            (
                row.label,
                f"{row.n} [{_count(p.n)}]",
                f"{OUT_OF_SCOPE} [{printed_ric}]",
                f"{_mark(row.mark)} [{_mark(p.mark)}]",
                f"{row.n_c} [{_count(p.n_c)}]",
            )
        )
    widths = [
        max(len(r[k]) for r in [header, *lines]) for k in range(len(header))
    ]
    out = []
    for r in [header, *lines]:
        out.append(
            "  ".join(cell.ljust(w) for cell, w in zip(r, widths, strict=True))
            .rstrip()
        )
    return "\n".join(out) + "\n"
