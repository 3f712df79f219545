"""Theorem records: one entry per claimed existence or classification result.

A record names a geometry class, a connection family, the spinor
subbundle the solutions live in and the relations between the system
parameters. Relations are written in the report grammar and each isolates
one symbol; they are applied in the listed order. ``s`` is written out as
``(B-1)/4`` everywhere.
"""

import functools
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum

from spinflux.config.mode import Derivative
from spinflux.errors import UnknownClassError

S = "(B-1)/4"


class VerificationMode(str, Enum):
    """Which condition the spinors of the subbundle must satisfy."""

    PARALLEL = "parallel"
    KILLING = "killing"
    CURVATURE = "curvature"


class Claim(str, Enum):
    SUFFICIENT = "sufficient"
    NECESSARY = "necessary"


@dataclass(frozen=True)
class Piece:
    """One summand of a subbundle.

    Either a joint eigenbundle of named forms, a set of coordinate spinors
    in the calibrated basis, or (both empty) the whole spinor space.
    """

    eigen: tuple[tuple[str, str], ...] = ()
    indices: tuple[int, ...] = ()

    def to_text(self) -> str:
        if self.indices:
            return "span" + str(list(self.indices))
        if not self.eigen:
            return "all spinors"
        return " & ".join(f"{name} = {ev}" for name, ev in self.eigen)


def eig(*pairs: tuple[str, str]) -> Piece:
    return Piece(eigen=tuple(pairs))


def coords(*indices: int) -> Piece:
    return Piece(indices=tuple(indices))


FULL = Piece()


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    class_id: str
    derivative: Derivative
    mode: VerificationMode
    pieces: tuple[Piece, ...]
    relations: tuple[tuple[str, str], ...] = ()
    claim: Claim = Claim.SUFFICIENT
    flux: str | None = None
    assumptions: Mapping[str, str] = field(default_factory=dict)
    side_conditions: tuple[str, ...] = ()
    iff: bool = False
    expected_difference: tuple[int, str] | None = None
    preserves: bool = False
    construction: bool = False
    expect: str = "pass"
    note: str = ""

    def to_dict(self) -> dict:
        kwargs = {}
        if self.flux:
            kwargs["flux"] = self.flux
        if self.expected_difference:
            direction, value = self.expected_difference
            kwargs["expected_difference"] = {
                "direction": direction,
                "value": value,
            }
        if self.note:
            kwargs["note"] = self.note
        return {
            "id": self.id,
            "class_id": self.class_id,
            "derivative": self.derivative.value,
            "mode": self.mode.value,
            "claim": self.claim.value,
            "subbundle": [p.to_text() for p in self.pieces],
            "relations": [
                {"relation": text, "isolates": name}
                for text, name in self.relations
            ],
            "assumptions": dict(self.assumptions),
            "side_conditions": list(self.side_conditions),
            "iff": self.iff,
            "construction": self.construction,
            "expect": self.expect,
            **kwargs,
        }


def _minus(pm: int) -> str:
    return "-" if pm == 1 else "+"


P = VerificationMode.PARALLEL
K = VerificationMode.KILLING
C = VerificationMode.CURVATURE
N0, N1, N2 = Derivative.NABLA0, Derivative.NABLA1, Derivative.NABLA2
GEN = Derivative.GENERIC
NEC = Claim.NECESSARY


# Sasakian.
def _sasakian5() -> list[TheoremSpec]:
    cid = "Sasakian5"
    records = []
    for sign, phi in (("+", "-2*I"), ("-", "2*I")):
        flip = "-" if sign == "+" else "+"
        records.append(
            TheoremSpec(
                f"sas5.nabla1.line{sign}",
                cid,
                N1,
                C,
                (eig(("Phi", phi)),),
                ((f"A {flip} alpha*(B-1)", "A"),),
                assumptions={"rho": "alpha^2*(B + 2*q*(B-1))"},
                expected_difference=(
                    5,
                    f"{flip}I/2*alpha*(B-1)*(1+2*q)",
                ),
                construction=True,
            )
        )
    examples = (("+", "2*I", "-2*(B-1)"), ("-", "-2*I", "2*(B-1)"))
    for sign, phi, value in examples:
        records.append(
            TheoremSpec(
                f"sas5.nabla1.example{sign}",
                cid,
                N1,
                C,
                (eig(("Phi", phi)),),
                assumptions={
                    "alpha": "2",
                    "q": "-1/2",
                    "A": value,
                    "rho": "4",
                },
                expected_difference=(5, "0"),
                construction=True,
                note="concrete example with F = -+2(B-1) *eta",
            )
        )
    records.append(
        TheoremSpec(
            "sas5.nabla1.phi0",
            cid,
            N1,
            C,
            (eig(("Phi", "0")),),
            (("B + 1", "B"), ("q", "q")),
            claim=NEC,
            assumptions={"rho": "alpha^2*(B + 2*q*(B-1))"},
            note="the Phi = 0 component forces B = -1, q = 0",
        )
    )
    for sign, phi, rho in (
        ("+", "2*I", "alpha*(alpha - 2*A)"),
        ("-", "-2*I", "alpha*(alpha + 2*A)"),
    ):
        records.append(
            TheoremSpec(
                f"sas5.nabla2.line{sign}",
                cid,
                N2,
                C,
                (eig(("Phi", phi)),),
                (("B - 1", "B"),),
                assumptions={"rho": rho},
                expected_difference=(5, "-I*A"),
                construction=True,
            )
        )
    records.append(
        TheoremSpec(
            "sas5.nabla2.phi0",
            cid,
            N2,
            C,
            (eig(("Phi", "0")),),
            (("B - 1", "B"), ("A", "A")),
            assumptions={"rho": "-alpha^2"},
            note="F = 0 branch on the Phi = 0 component",
        )
    )
    return records


def _sasakian7() -> list[TheoremSpec]:
    cid = "Sasakian7"
    relation = ("A*(4*q - 6) - alpha*(B-1)", "A")
    rho = {"rho": "alpha*(2*alpha - 9*A)"}
    records = []
    lines = (("+", "3*I", "-9/2*I*A"), ("-", "-3*I", "9/2*I*A"))
    for sign, phi, shift in lines:
        records.append(
            TheoremSpec(
                f"sas7.nabla1.thm{sign}",
                cid,
                N1,
                C,
                (eig(("Phi", phi)),),
                (relation,),
                assumptions=rho,
                expected_difference=(7, shift),
            )
        )
    records.append(
        TheoremSpec(
            "sas7.nabla1.joint",
            cid,
            N1,
            C,
            (eig(("Phi", "3*I")), eig(("Phi", "-3*I"))),
            (relation,),
            assumptions=rho,
            preserves=True,
            construction=True,
        )
    )
    for sign, phi in (("+", "I"), ("-", "-I")):
        records.append(
            TheoremSpec(
                f"sas7.nabla1.case2{sign}",
                cid,
                N1,
                C,
                (eig(("Phi", phi)),),
                (("A + alpha/3", "A"), ("B + 4*q/3 + 1", "B")),
                claim=NEC,
                assumptions={"rho": "alpha^2"},
            )
        )
    nabla2 = ("4*A - alpha*(B-1)", "A")
    for sign, phi in (("+", "3*I"), ("-", "-3*I")):
        records.append(
            TheoremSpec(
                f"sas7.nabla2{sign}",
                cid,
                N2,
                P,
                (eig(("Phi", phi)),),
                (nabla2,),
                iff=True,
            )
        )
    records.append(
        TheoremSpec(
            "sas7.nabla2.joint",
            cid,
            N2,
            P,
            (eig(("Phi", "3*I")), eig(("Phi", "-3*I"))),
            (nabla2,),
            construction=True,
        )
    )
    return records


# Almost Hermitian.
def _ah_su3() -> list[TheoremSpec]:
    cid = "AH_SU3"
    records = [
        TheoremSpec(
            "su3.nabla1.plus",
            cid,
            N1,
            P,
            (eig(("T", "-4*a")),),
            (("2*(q-1)*A - a*(B-1)", "A"),),
            iff=True,
            construction=True,
        ),
        TheoremSpec(
            "su3.nabla1.minus",
            cid,
            N1,
            P,
            (eig(("T", "4*a")),),
            (("2*(q-1)*A + a*(B-1)", "A"),),
            iff=True,
            construction=True,
        ),
        TheoremSpec(
            "su3.nabla0",
            cid,
            N0,
            P,
            (eig(("T", "4*a")), eig(("T", "-4*a"))),
            (("B - 1", "B"),),
            iff=True,
            construction=True,
        ),
    ]
    for sign, ev, flip in (("+", "-4*a", "-"), ("-", "4*a", "+")):
        records.append(
            TheoremSpec(
                f"su3.nabla2{sign}",
                cid,
                N2,
                P,
                (eig(("T", ev)),),
                ((f"2*A {flip} a*(B-1)", "A"),),
                claim=NEC,
                note="the component on the other T-eigenline vanishes",
            )
        )
    return records


def _ah_so3() -> list[TheoremSpec]:
    cid = "AH_SO3"
    records = []
    for sign, ev, flip in (("+", "4*a", "-"), ("-", "-4*a", "+")):
        records.append(
            TheoremSpec(
                f"so3.generic{sign}",
                cid,
                GEN,
                P,
                (eig(("*Omega", "-3"), ("T", ev)),),
                ((f"(2*p - q)*A {flip} a*(B-1)/2", "p"),),
                assumptions={"b": "0", "c": "0"},
                side_conditions=("A",),
                iff=True,
                construction=True,
            )
        )
    records += [
        TheoremSpec(
            "so3.s0",
            cid,
            GEN,
            P,
            (eig(("*Omega", "-3")),),
            (("B - 1", "B"), ("(2*p - q)*A", "p")),
            side_conditions=("A",),
            construction=True,
        ),
        TheoremSpec(
            "so3.nabla0",
            cid,
            N0,
            P,
            (eig(("*Omega", "-3")),),
            (("B - 1", "B"),),
            side_conditions=("A",),
            iff=True,
            construction=True,
        ),
    ]
    return records


def _ah_nabla0_branches(cid: str, prefix: str) -> list[TheoremSpec]:
    return [
        TheoremSpec(
            f"{prefix}.nabla0.minus",
            cid,
            N0,
            P,
            (eig(("*Omega1", "-1"), ("*Omega2", "-2")),),
            (("B - 1", "B"), ("A1 - A2", "A1")),
            construction=True,
        ),
        TheoremSpec(
            f"{prefix}.nabla0.plus",
            cid,
            N0,
            P,
            (eig(("*Omega1", "-1"), ("*Omega2", "2")),),
            (("B - 1", "B"), ("A1 + A2", "A1")),
            construction=True,
        ),
    ]


def _ah_su2() -> list[TheoremSpec]:
    cid = "AH_SU2"
    cases = (
        ("-2", "A1 - A2", "2*p - q"),
        ("-2", "A1 + 2*A2", "p + q"),
        ("2", "A1 + A2", "2*p - q"),
        ("2", "A1 - 2*A2", "p + q"),
    )
    records = _ah_nabla0_branches(cid, "su2")
    for k, (ev, flux, family) in enumerate(cases, start=1):
        records.append(
            TheoremSpec(
                f"su2.generic.case{k}",
                cid,
                GEN,
                P,
                (eig(("*Omega1", "-1"), ("*Omega2", ev)),),
                (("B - 1", "B"), (flux, "A1"), (family, "p")),
                construction=True,
            )
        )
    return records


def _ah_u2_0() -> list[TheoremSpec]:
    return _ah_nabla0_branches("AH_U2_0", "u2_0")


def _ah_u2_1() -> list[TheoremSpec]:
    return [
        TheoremSpec(
            "u2_1.nabla0",
            "AH_U2_1",
            N0,
            P,
            (eig(("*Omega1", "-1"), ("*Omega2", "2")),),
            (("B - 1", "B"), ("A1 + A2", "A1")),
            claim=NEC,
            note="no nabla^c-parallel spinors exist for this class",
        )
    ]


def _ah_u2_m1() -> list[TheoremSpec]:
    cid = "AH_U2_-1"
    base = (("*Omega1", "-1"), ("*Omega2", "-2"))
    records = [
        TheoremSpec(
            "u2_-1.nabla0",
            cid,
            N0,
            P,
            (eig(*base, ("T", "4*a")), eig(*base, ("T", "-4*a"))),
            (("B - 1", "B"), ("A1 - A2", "A1")),
            flux="star_omega12",
            construction=True,
        )
    ]
    for sign, ev, op in (("+", "4*a", "+"), ("-", "-4*a", "-")):
        records.append(
            TheoremSpec(
                f"u2_-1.psi{sign}",
                cid,
                GEN,
                P,
                (eig(*base, ("T", ev)),),
                (
                    (f"q*A1 - 2*p*A2 {op} a*(B-1)/2", "B"),
                    ("(p + q)*(A1 - A2)", "A1"),
                ),
                flux="star_omega12",
                construction=True,
            )
        )
    return records


# G2.
def _nearly_parallel() -> list[TheoremSpec]:
    cid = "G2_NearlyParallel"
    return [
        TheoremSpec(
            "np.branch1",
            cid,
            N1,
            K,
            (eig(("omega3", "-7")),),
            (("-24*A*(q-1) - lam*(B-1)", "B"),),
            iff=True,
            construction=True,
        ),
        TheoremSpec(
            "np.branch2",
            cid,
            N1,
            K,
            (eig(("omega3", "1")),),
            (("A - lam/6", "A"), ("B + 4*q + 3", "B")),
            construction=True,
        ),
        TheoremSpec(
            "np.case3",
            cid,
            N1,
            K,
            (FULL,),
            (("A - lam/3", "A"), ("B + 8*q - 9", "B")),
            claim=NEC,
        ),
        TheoremSpec(
            "np.case3.flat",
            cid,
            N1,
            C,
            (FULL,),
            (("A", "A"), ("B - 3", "B")),
            claim=NEC,
        ),
        TheoremSpec(
            "np.nabla2",
            cid,
            N2,
            K,
            (eig(("omega3", "-7")),),
            (("-24*A - lam*(B-1)", "B"),),
            iff=True,
            construction=True,
        ),
    ]


def _nabla0_g2(cid: str, prefix: str, form: str, ev: str) -> TheoremSpec:
    return TheoremSpec(
        f"{prefix}.nabla0",
        cid,
        N0,
        P,
        (eig((form, ev)),),
        (("B - 1", "B"),),
        flux="star_omega",
        construction=True,
    )


def _g2_su3_like(algebra: str, kind: str) -> list[TheoremSpec]:
    cid = f"G2_{algebra}_{kind}"
    prefix = f"{algebra}_{kind}"
    assumptions = {"a": "0", "b": "0"} if kind == "II" else {}
    records = [_nabla0_g2(cid, prefix, "D1", "4")]
    for sign, index, pm in (("+", 0, 1), ("-", 1, -1)):
        if kind == "I":
            alpha_, beta_ = f"{pm}*a", f"{3 * pm}*a"
        else:
            alpha_, beta_ = "-c", "0"
        records.append(
            TheoremSpec(
                f"{prefix}.psi{sign}",
                cid,
                GEN,
                P,
                (coords(index),),
                (
                    (f"(p + q)*({pm}*A2 - A1) - ({alpha_})*{S}", "A1"),
                    (f"4*p*A1 {_minus(pm)} 3*q*A2 + ({beta_})*{S}", "A2"),
                ),
                flux="F1_F23",
                assumptions=assumptions,
                construction=True,
            )
        )
    if kind == "I":
        joint = (("p", "p"), ("A1", "A1"), (f"q*A2 - a*{S}", "A2"))
    else:
        joint = (("p", "p"), ("A2", "A2"), (f"q*A1 - c*{S}", "A1"))
    records.append(
        TheoremSpec(
            f"{prefix}.joint",
            cid,
            GEN,
            P,
            (coords(0, 1),),
            joint,
            flux="F1_F23",
            assumptions=assumptions,
            construction=True,
        )
    )
    return records


# alpha, beta, gamma of the Psi_+- systems, by torsion type and sign.
_PSI_PM_COEFFS = {
    ("I", 1): ("b", "a", "2*a + b"),
    ("I", -1): ("-b", "-a", "-(2*a + b)"),
    ("II", 1): ("-(2*b + a)", "b - a", "0"),
    ("II", -1): ("-(-2*b + a)", "-b - a", "0"),
}

# alpha, beta, gamma, delta of the Psi_1, Psi_2 systems.
_PSI_I_COEFFS = {
    ("I", 1): ("0", "2*a", "2*b", "b"),
    ("I", 2): ("0", "2*a", "2*b", "b"),
    ("II", 1): ("2*a", "2*b", "-4*b", "-2*b"),
    ("II", 2): ("2*a", "2*b", "-4*b", "-2*b"),
}

_SU2_JOINTS = {
    "su2_I": (
        (0, 1, 2, 3),
        (("p", "p"), ("A1", "A1"), ("A2", "A2"), (f"q*A3 - b*{S}", "A3")),
    ),
    "su2_II": (
        (0, 1, 2, 3),
        (
            ("p", "p"),
            (f"q*A1 - a*{S}", "A1"),
            (f"q*A2 - b*{S}", "A2"),
            ("A3 + 2*A2", "A3"),
        ),
    ),
    "su2_III": (
        (0, 2, 3),
        (
            ("B - 1", "B"),
            ("p + q", "p"),
            ("A1 + A2", "A1"),
            ("A3 - 2*A2", "A3"),
        ),
    ),
    "u2_I": (
        (0, 1),
        (
            ("p", "p"),
            ("A1", "A1"),
            (f"q*A2 - a*{S}", "A2"),
            (f"q*A3 - b*{S}", "A3"),
        ),
    ),
    "u2_II": (
        (0, 1),
        (
            ("p", "p"),
            (f"q*A1 - a*{S}", "A1"),
            (f"q*A2 - b*{S}", "A2"),
            (f"q*A3 + 2*b*{S}", "A3"),
        ),
    ),
}


def _psi_pm_relations(kind: str, pm: int) -> tuple[tuple[str, str], ...]:
    if kind == "III":
        return (
            ("B - 1", "B"),
            (f"(p + q)*({pm}*A3 - A1)", "A3"),
            (f"(p + q)*({pm}*A2 - A1)", "A2"),
            (f"4*p*A1 {_minus(pm)} q*(2*A2 + A3)", "A1"),
        )
    alpha_, beta_, gamma_ = _PSI_PM_COEFFS[(kind, pm)]
    return (
        (f"(p + q)*({pm}*A3 - A1) - ({alpha_})*{S}", "A3"),
        (f"(p + q)*({pm}*A2 - A1) - ({beta_})*{S}", "A2"),
        (f"4*p*A1 {_minus(pm)} q*(2*A2 + A3) + ({gamma_})*{S}", "A1"),
    )


def _psi_i_relations(kind: str, i: int) -> tuple[tuple[str, str], ...]:
    if kind == "III":
        # Only the s = 0 branch carries flux; A1 stays free.
        return (
            ("B - 1", "B"),
            ("p + q", "p"),
            ("A3 - 2*A2", "A3"),
        )
    alpha_, beta_, gamma_, delta_ = _PSI_I_COEFFS[(kind, i)]
    return (
        (f"2*(p + q)*A1 - ({alpha_})*{S}", "A1"),
        (f"2*(p + q)*A2 - ({beta_})*{S}", "A2"),
        (f"2*(p + q)*A3 - ({gamma_})*{S}", "A3"),
        (f"2*p*A2 + q*A3 - ({delta_})*{S}", "p"),
    )


def _g2_su2_like(algebra: str, kind: str) -> list[TheoremSpec]:
    cid = f"G2_{algebra}_{kind}"
    prefix = f"{algebra}_{kind}"
    records = [_nabla0_g2(cid, prefix, "D2", "4")]
    for sign, index, pm in (("+", 0, 1), ("-", 1, -1)):
        records.append(
            TheoremSpec(
                f"{prefix}.psi{sign}",
                cid,
                GEN,
                P,
                (coords(index),),
                _psi_pm_relations(kind, pm),
                flux="F123",
                construction=True,
            )
        )
    if algebra == "su2":
        for i in (1, 2):
            records.append(
                TheoremSpec(
                    f"{prefix}.psi{i}",
                    cid,
                    GEN,
                    P,
                    (coords(i + 1),),
                    _psi_i_relations(kind, i),
                    flux="F123",
                    construction=True,
                )
            )
    indices, relations = _SU2_JOINTS[prefix]
    records.append(
        TheoremSpec(
            f"{prefix}.joint",
            cid,
            GEN,
            P,
            (coords(*indices),),
            relations,
            flux="F123",
            construction=True,
        )
    )
    return records


def _suc2rel() -> list[TheoremSpec]:
    cid = "G2_suc2rel"
    return [
        _nabla0_g2(cid, "suc2rel", "D3", "6"),
        TheoremSpec(
            "suc2rel.case2",
            cid,
            N0,
            C,
            (eig(("D3", "-2")),),
            (("A + 2*a", "A"), ("B + 7", "B"), ("b - 3*a", "b")),
            claim=NEC,
            flux="star_omega",
            note="the B = -7 branch beyond this record is not described",
        ),
        TheoremSpec(
            "suc2rel.psi+",
            cid,
            GEN,
            P,
            (coords(0),),
            (
                (f"(p + q)*(A1 - A2) + b*{S}", "A2"),
                (f"3*(p - q)*A1 + p*A2 + 3*a*{S}", "A1"),
            ),
            flux="F12_3",
            iff=True,
            construction=True,
        ),
    ]


_RECORDS = {
    "Sasakian5": _sasakian5,
    "Sasakian7": _sasakian7,
    "AH_SU3": _ah_su3,
    "AH_SO3": _ah_so3,
    "AH_SU2": _ah_su2,
    "AH_U2_0": _ah_u2_0,
    "AH_U2_1": _ah_u2_1,
    "AH_U2_-1": _ah_u2_m1,
    "G2_NearlyParallel": _nearly_parallel,
    "G2_su3_I": lambda: _g2_su3_like("su3", "I"),
    "G2_su3_II": lambda: _g2_su3_like("su3", "II"),
    "G2_so3_I": lambda: _g2_su3_like("so3", "I"),
    "G2_so3_II": lambda: _g2_su3_like("so3", "II"),
    "G2_su2_I": lambda: _g2_su2_like("su2", "I"),
    "G2_su2_II": lambda: _g2_su2_like("su2", "II"),
    "G2_su2_III": lambda: _g2_su2_like("su2", "III"),
    "G2_u2_I": lambda: _g2_su2_like("u2", "I"),
    "G2_u2_II": lambda: _g2_su2_like("u2", "II"),
    "G2_suc2rel": _suc2rel,
}


@functools.cache
def theorems_for(class_id: str) -> tuple[TheoremSpec, ...]:
    try:
        return tuple(_RECORDS[class_id]())
    except KeyError:
        raise UnknownClassError(f"Unknown geometry class: {class_id}") from None


def all_theorems() -> list[TheoremSpec]:
    return [t for cid in _RECORDS for t in theorems_for(cid)]


def get_theorem(theorem_id: str) -> TheoremSpec:
    for t in all_theorems():
        if t.id == theorem_id:
            return t
    raise UnknownClassError(f"Unknown theorem record: {theorem_id}")
