"""Registry of geometry classes: normal forms, flux bases and Ric^c.

Every record keeps its torsion and Ricci tensor exactly as printed for
the class, in the free parameters of the global ring. Type constraints
(for instance a = -b for su(2) type II) are stored separately as
substitutions and applied by ``GeometryClass.specialized``.
"""

import functools
import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace
from fractions import Fraction

from spinflux.algebra import exterior, symring
from spinflux.algebra.exterior import Form, hodge, wedge
from spinflux.algebra.matrices import Endo
from spinflux.algebra.symring import Poly, Scalar
from spinflux.config.mode import Derivative
from spinflux.errors import DimensionError, UnknownClassError
from spinflux.geometry import forms

logger = logging.getLogger(__name__)

a, b, c = forms.a, forms.b, forms.c
alpha, lam = forms.alpha, forms.lam
rho = symring.gen("rho")
ZERO = symring.ZERO


@dataclass(frozen=True)
class FluxAnsatz:
    """F = sum_i A_i F_i for a fixed list of 4-forms F_i."""

    name: str
    terms: tuple[tuple[str, Form], ...]

    @property
    def coefficients(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.terms)

    def form(self, coeffs: Mapping[str, Poly | Scalar] | None = None) -> Form:
        """The flux with the given coefficient values; missing names stay
        symbolic."""
        coeffs = dict(coeffs or {})
        unknown = set(coeffs) - set(self.coefficients)
        if unknown:
            raise ValueError(
                f"Unknown flux coefficient(s) {sorted(unknown)} for ansatz "
                f"{self.name}; expected {list(self.coefficients)}"
            )
        n = self.terms[0][1].n
        total = Form.zero(n)
        for name, basis in self.terms:
            value = coeffs.get(name, symring.gen(name))
            total = total + basis * value
        return total

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "terms": {k: exterior.to_text(f) for k, f in self.terms},
        }


@dataclass(frozen=True)
class GeometryClass:
    id: str
    n: int
    title: str
    fundamental_forms: Mapping[str, Form]
    torsion: Form
    fluxes: Mapping[str, FluxAnsatz]
    ricci_c: Endo
    constraints: Mapping[str, Poly] = field(default_factory=dict)
    side_conditions: tuple[Poly, ...] = ()
    ricci_g: Endo | None = None

    @property
    def scal_c(self) -> Poly:
        return self.ricci_c.trace()

    @property
    def default_flux(self) -> FluxAnsatz:
        return next(iter(self.fluxes.values()))

    def flux(self, name: str | None = None) -> FluxAnsatz:
        if name is None:
            return self.default_flux
        try:
            return self.fluxes[name]
        except KeyError:
            raise ValueError(
                f"Unknown flux ansatz {name} for class {self.id}; "
                f"expected one of {list(self.fluxes)}"
            ) from None

    def piece(self, name: str) -> Form:
        """A named form whose eigenbundles cut out spinor subbundles;
        ``"T"`` is the torsion."""
        if name == "T":
            return self.torsion
        try:
            return self.fundamental_forms[name]
        except KeyError:
            raise ValueError(
                f"Unknown form {name} for class {self.id}"
            ) from None

    def specialized(
        self, bindings: Mapping[str, Poly] | None = None
    ) -> "GeometryClass":
        """Apply the class constraints, then ``bindings``, to the torsion,
        Ricci tensor and side conditions."""
        total = dict(self.constraints)
        if bindings:
            total = {
                k: symring.compose(v, bindings) for k, v in total.items()
            }
            total.update(bindings)
        if not total:
            return self

        def sub(x: Poly) -> Poly:
            return symring.compose(x, total)

        return replace(
            self,
            torsion=self.torsion.map_coefficients(sub),
            ricci_c=self.ricci_c.map_entries(sub),
            side_conditions=tuple(sub(x) for x in self.side_conditions),
            ricci_g=self.ricci_g.map_entries(sub) if self.ricci_g else None,
        )

    def to_dict(self) -> dict:
        kwargs = {}
        if self.ricci_g is not None:
            kwargs["ricci_g"] = self.ricci_g.to_text()
        return {
            "id": self.id,
            "n": self.n,
            "title": self.title,
            "fundamental_forms": {
                k: exterior.to_text(v)
                for k, v in self.fundamental_forms.items()
            },
            "torsion": exterior.to_text(self.torsion),
            "fluxes": {k: v.to_dict() for k, v in self.fluxes.items()},
            "ricci_c": self.ricci_c.to_text(),
            "scal_c": symring.to_text(self.scal_c),
            "constraints": {
                k: symring.to_text(v) for k, v in self.constraints.items()
            },
            "side_conditions": [
                symring.to_text(x) for x in self.side_conditions
            ],
            **kwargs,
        }


@dataclass(frozen=True)
class ConnectionParams:
    """Parameters of nabla with T = B * T^c; s = (B - 1)/4 always."""

    B: Poly
    p: Poly
    q: Poly
    flux_coeffs: Mapping[str, Poly] = field(default_factory=dict)

    @property
    def s(self) -> Poly:
        return (self.B - 1) * symring.const(Fraction(1, 4))

    @staticmethod
    def for_derivative(derivative: Derivative, n: int) -> "ConnectionParams":
        B = symring.gen("B")
        special = symring.const(Fraction(n - 4, 4))
        if derivative == Derivative.NABLA0:
            return ConnectionParams(B, special, symring.ONE)
        elif derivative == Derivative.NABLA1:
            return ConnectionParams(B, special, symring.gen("q"))
        elif derivative == Derivative.NABLA2:
            return ConnectionParams(B, ZERO, symring.ONE)
        elif derivative == Derivative.GENERIC:
            return ConnectionParams(B, symring.gen("p"), symring.gen("q"))
        else:
            raise ValueError(f"Unknown derivative family: {derivative}")

    def compose(self, bindings: Mapping[str, Poly]) -> "ConnectionParams":
        return ConnectionParams(
            symring.compose(self.B, bindings),
            symring.compose(self.p, bindings),
            symring.compose(self.q, bindings),
            {
                k: symring.compose(v, bindings)
                for k, v in self.flux_coeffs.items()
            },
        )

    def to_dict(self) -> dict[str, str]:
        return {
            "B": symring.to_text(self.B),
            "p": symring.to_text(self.p),
            "q": symring.to_text(self.q),
            "s": symring.to_text(self.s),
        }


def torsion_square(t: Form) -> Endo:
    """The symmetric matrix T_imn T_jmn of a 3-form."""
    if t.degree() not in (None, 3):
        raise DimensionError(f"Expected a 3-form, got degree {t.degree()}")
    n = t.n
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            total = ZERO
            for m in range(1, n + 1):
                for k in range(1, n + 1):
                    x = t.coefficient((i, m, k))
                    if x:
                        total += x * t.coefficient((j, m, k))
            row.append(total)
        rows.append(row)
    return Endo.from_entries(rows)


def flux_form(
    cls: GeometryClass,
    coeffs: Mapping[str, Poly | Scalar] | None = None,
    ansatz: str | None = None,
) -> Form:
    """F = sum_i A_i F_i for the chosen ansatz of ``cls``.

    Raises:
        ValueError: If a coefficient name is not in the ansatz.
    """
    return cls.flux(ansatz).form(coeffs)


def ric_T(t: Form, ric_g: Endo) -> Endo:
    """Ric^g_ij - 1/4 T_imn T_jmn."""
    return ric_g - torsion_square(t) * Fraction(1, 4)


def _diag(values: list[Poly | Scalar]) -> Endo:
    return Endo.diagonal(values)


def _scalar(n: int, value: Poly) -> Endo:
    return Endo.scalar(n, value)


# Flux ansatzes.
def _single(name: str, basis: Form) -> dict[str, FluxAnsatz]:
    return {name: FluxAnsatz(name, (("A", basis),))}


STAR_OMEGA12 = FluxAnsatz(
    "star_omega12",
    (("A1", hodge(forms.OMEGA1)), ("A2", hodge(forms.OMEGA2))),
)
G2_STAR = _single("star_omega", forms.G2_DUAL)


def _ah_forms() -> dict[str, Form]:
    return {
        "Omega": forms.KAEHLER,
        "*Omega": forms.STAR_KAEHLER,
        "Omega1": forms.OMEGA1,
        "Omega2": forms.OMEGA2,
        "*Omega1": hodge(forms.OMEGA1),
        "*Omega2": hodge(forms.OMEGA2),
    }


def _g2_forms() -> dict[str, Form]:
    return {
        "omega3": forms.G2_FORM,
        "*omega3": forms.G2_DUAL,
        "D1": forms.D1,
        "D2": forms.D2,
        "D3": forms.D3,
    }


# Class builders.
def _sasakian(n: int) -> GeometryClass:
    k = (n - 1) // 2
    eta, phi = forms.eta(n), forms.contact_phi(n)
    if n == 5:
        fluxes = _single("star_eta", hodge(eta))
    else:
        fluxes = _single("star_eta_phi", hodge(wedge(eta, phi)))
    half_alpha2 = alpha * alpha * symring.const(Fraction(1, 2))
    return GeometryClass(
        id=f"Sasakian{n}",
        n=n,
        title=f"n={n} alpha-Sasakian structure",
        fundamental_forms={
            "eta": eta,
            "Phi": phi,
            "deta": phi * alpha,
            "eta^deta": wedge(eta, phi) * alpha,
            "deta^deta": wedge(phi, phi) * (alpha * alpha),
        },
        torsion=forms.sasakian_torsion(n),
        fluxes=fluxes,
        ricci_c=_diag([rho] * (n - 1) + [0]),
        side_conditions=(alpha,),
        ricci_g=_diag([rho + half_alpha2] * (n - 1) + [half_alpha2 * k]),
    )


def _ah(
    cid: str,
    title: str,
    torsion: Form,
    ricci: Endo,
    fluxes: dict[str, FluxAnsatz],
    side: tuple[Poly, ...] = (),
    ricci_g: Endo | None = None,
) -> GeometryClass:
    return GeometryClass(
        id=cid,
        n=6,
        title=title,
        fundamental_forms=_ah_forms(),
        torsion=torsion,
        fluxes=fluxes,
        ricci_c=ricci,
        side_conditions=side,
        ricci_g=ricci_g,
    )


def _ah_su3() -> GeometryClass:
    return _ah(
        "AH_SU3",
        "almost Hermitian SU(3)",
        forms.SU3_TORSION_SHAPE * a,
        _scalar(6, a * a * 4),
        _single("star_omega", forms.STAR_KAEHLER),
        (a,),
        _scalar(6, a * a * 5),
    )


def _ah_so3() -> GeometryClass:
    shape = forms.SO3_T12_SHAPE
    t2 = exterior.parse_form(6, {"135": -1, "146": 1, "236": 1, "245": 1})
    torsion = (
        t2 * a
        + shape * b
        + forms.complex_structure_derivation(shape) * c
    )
    return _ah(
        "AH_SO3",
        "almost Hermitian SO(3)",
        torsion,
        _scalar(6, (a * a - b * b - c * c) * 4),
        _single("star_omega", forms.STAR_KAEHLER),
    )


def _ah_su2() -> GeometryClass:
    torsion = exterior.parse_form(6, {"145": a, "235": a, "125": b, "345": b})
    return _ah(
        "AH_SU2",
        "almost Hermitian SU(2)",
        torsion,
        _diag([a * a + b * b] * 4 + [0, 0]),
        {"star_omega12": STAR_OMEGA12},
    )


def _ah_u2_0() -> GeometryClass:
    u1, u2 = symring.gen("U1"), symring.gen("U2")
    v1, v2 = symring.gen("V1"), symring.gen("V2")
    ricci = Endo.from_entries(
        [
            [u1 + u2, 0, v1, v2, 0, 0],
            [0, u1 + u2, -v2, v1, 0, 0],
            [v1, -v2, u2, 0, 0, 0],
            [v2, v1, 0, u2, 0, 0],
            [0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0],
        ]
    )
    return _ah(
        "AH_U2_0",
        "almost Hermitian U(2)_0",
        exterior.parse_form(6, {"125": a, "345": a}),
        ricci,
        {"star_omega12": STAR_OMEGA12},
        (a,),
    )


def _ah_u2_1() -> GeometryClass:
    return _ah(
        "AH_U2_1",
        "almost Hermitian U(2)_1",
        exterior.parse_form(6, {"135": a, "245": -a, "236": a, "146": a}),
        _scalar(6, a * a * 4),
        {"star_omega12": STAR_OMEGA12},
        (a,),
    )


def _ah_u2_m1() -> GeometryClass:
    return _ah(
        "AH_U2_-1",
        "almost Hermitian U(2)_-1",
        forms.SU3_TORSION_SHAPE * a,
        _scalar(6, a * a * 4),
        {"star_omega12": STAR_OMEGA12}
        | _single("star_omega", forms.STAR_KAEHLER),
        (a,),
    )


def _g2(
    cid: str,
    title: str,
    torsion: Form,
    ricci: Endo,
    fluxes: dict[str, FluxAnsatz],
    constraints: dict[str, Poly] | None = None,
    side: tuple[Poly, ...] = (),
) -> GeometryClass:
    return GeometryClass(
        id=cid,
        n=7,
        title=title,
        fundamental_forms=_g2_forms(),
        torsion=torsion,
        fluxes=fluxes,
        ricci_c=ricci,
        constraints=constraints or {},
        side_conditions=side,
    )


def _g2_nearly_parallel() -> GeometryClass:
    return _g2(
        "G2_NearlyParallel",
        "nearly parallel G2",
        forms.G2_FORM * (lam * symring.const(Fraction(-1, 6))),
        _scalar(7, lam * lam * symring.const(Fraction(1, 3))),
        G2_STAR,
        side=(lam,),
    )


F1_F23 = FluxAnsatz("F1_F23", (("A1", forms.F1), ("A2", forms.F2 + forms.F3)))
F123 = FluxAnsatz(
    "F123", (("A1", forms.F1), ("A2", forms.F2), ("A3", forms.F3))
)
F12_3 = FluxAnsatz("F12_3", (("A1", forms.F1 + forms.F2), ("A2", forms.F3)))


def _g2_su3_like(algebra: str, kind: str) -> GeometryClass:
    if kind == "I":
        torsion = exterior.parse_form(7, {"127": a, "347": a, "567": a})
        value = a * a * 2
    else:
        torsion = forms.g2_type_ii_su3_torsion()
        value = (a * a + b * b - c * c) * -4
    return _g2(
        f"G2_{algebra}_{kind}",
        f"cocalibrated G2 {algebra} type {kind}",
        torsion,
        _diag([value] * 6 + [0]),
        G2_STAR | {"F1_F23": F1_F23},
    )


def _g2_su2_like(algebra: str, kind: str) -> GeometryClass:
    if kind == "I":
        torsion = exterior.parse_form(7, {"127": a, "347": a, "567": b})
        lam_, kappa = a * a + a * b, a * b * 2
    elif kind == "II":
        torsion = forms.PSI_PLUS_7 * a + exterior.parse_form(
            7, {"127": b, "347": b, "567": b * -2}
        )
        lam_, kappa = a * a * 4 - b * b, (a * a - b * b) * 4
    else:
        torsion = exterior.parse_form(7, {"135": a, "245": -a})
        lam_, kappa = a * a, ZERO
    constraints: dict[str, Poly] = {}
    side: tuple[Poly, ...] = ()
    if algebra == "su2" and kind == "I":
        constraints = {"a": ZERO}
    elif algebra == "su2" and kind == "II":
        constraints = {"a": -b}
    if kind == "II":
        side = (a,)
    return _g2(
        f"G2_{algebra}_{kind}",
        f"cocalibrated G2 {algebra} type {kind}",
        torsion,
        _diag([lam_] * 4 + [kappa] * 2 + [0]),
        G2_STAR | {"F123": F123},
        constraints,
        side,
    )


def _g2_suc2rel() -> GeometryClass:
    lam_ = a * a * 12 + a * b * 3
    kappa = a * a * 12 + a * b * 4
    return _g2(
        "G2_suc2rel",
        "cocalibrated G2 su_c(2) rel.",
        forms.G2_FORM * a + exterior.parse_form(7, {"567": b}),
        _diag([lam_] * 4 + [kappa] * 3),
        G2_STAR | {"F12_3": F12_3},
        side=(b,),
    )


_BUILDERS = {
    "Sasakian5": lambda: _sasakian(5),
    "Sasakian7": lambda: _sasakian(7),
    "AH_SU3": _ah_su3,
    "AH_SO3": _ah_so3,
    "AH_SU2": _ah_su2,
    "AH_U2_0": _ah_u2_0,
    "AH_U2_1": _ah_u2_1,
    "AH_U2_-1": _ah_u2_m1,
    "G2_NearlyParallel": _g2_nearly_parallel,
    "G2_su3_I": lambda: _g2_su3_like("su3", "I"),
    "G2_su3_II": lambda: _g2_su3_like("su3", "II"),
    "G2_so3_I": lambda: _g2_su3_like("so3", "I"),
    "G2_so3_II": lambda: _g2_su3_like("so3", "II"),
    "G2_su2_I": lambda: _g2_su2_like("su2", "I"),
    "G2_su2_II": lambda: _g2_su2_like("su2", "II"),
    "G2_su2_III": lambda: _g2_su2_like("su2", "III"),
    "G2_u2_I": lambda: _g2_su2_like("u2", "I"),
    "G2_u2_II": lambda: _g2_su2_like("u2", "II"),
    "G2_suc2rel": _g2_suc2rel,
}

CLASS_IDS: tuple[str, ...] = tuple(_BUILDERS)


@functools.cache
def get_class(cid: str) -> GeometryClass:
    """Look up a geometry class by id.

    Raises:
        UnknownClassError: If ``cid`` is not in the catalog.
    """
    try:
        builder = _BUILDERS[cid]
    except KeyError:
        raise UnknownClassError(f"Unknown geometry class: {cid}") from None
    cls = builder()
    logger.debug(f"Built geometry class {cid}")
    return cls


def catalog_dump(class_ids: Iterable[str] = CLASS_IDS) -> dict:
    return {cid: get_class(cid).to_dict() for cid in class_ids}
