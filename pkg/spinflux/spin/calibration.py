"""Choice of gamma matrices by calibration against known endomorphisms.

Each dimension has a list of targets: endomorphisms whose matrices (or
whose action on given spinors) are fixed independently of any gamma
convention. Every candidate frame from ``frames.candidate_frames`` is
tested against all targets; the first candidate passing every target
becomes the representation used everywhere else. When none passes, the
frames reached from a candidate by permuting its spinor basis and rescaling
its vectors by fourth roots of unity are searched as well.
"""

import functools
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from spinflux.algebra import symring
from spinflux.algebra.exterior import Form
from spinflux.algebra.matrices import Endo
from spinflux.errors import CalibrationError, DimensionError
from spinflux.geometry import forms
from spinflux.spin import frames
from spinflux.spin.spinrep import (
    SpinRep,
    connection_difference,
    eigenspace,
)

logger = logging.getLogger(__name__)

# Orbit frames tried per candidate before calibration gives up.
ORBIT_LIMIT = 4096

IU = symring.I_UNIT
a = symring.gen("a")
A = symring.gen("A")
B = symring.gen("B")
q = symring.gen("q")


@dataclass(frozen=True)
class CalibrationTarget:
    name: str
    description: str
    check: Callable[[SpinRep], bool]


@dataclass
class CandidateResult:
    frame: str
    description: str
    clifford_ok: bool
    passed: list[str] = field(default_factory=list)
    failed: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.clifford_ok and not self.failed

    def to_dict(self) -> dict:
        return {
            "frame": self.frame,
            "description": self.description,
            "clifford_ok": self.clifford_ok,
            "passed": self.passed,
            "failed": self.failed,
            "ok": self.ok,
        }


@dataclass
class CalibrationReport:
    n: int
    targets: list[str]
    candidates: list[CandidateResult]
    searched: int = 0
    selected_frame: frames.Frame | None = field(default=None, repr=False)

    @property
    def consistent_frames(self) -> list[str]:
        return [c.frame for c in self.candidates if c.ok]

    @property
    def selected(self) -> str | None:
        frames_ok = self.consistent_frames
        return frames_ok[0] if frames_ok else None

    def maximal_consistent_subset(self) -> list[str]:
        best = max(self.candidates, key=lambda c: len(c.passed))
        return best.passed

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "targets": self.targets,
            "candidates": [c.to_dict() for c in self.candidates],
            "consistent_frames": self.consistent_frames,
            "selected": self.selected,
            "searched": self.searched,
        }


def _diagonal(rep: SpinRep, x: Form, values: list[int]) -> bool:
    return rep.act(x) == Endo.diagonal(values)


def _eigen_dims(
    rep: SpinRep, x: Form, expected: dict[symring.Poly, int]
) -> bool:
    m = rep.act(x)
    return all(eigenspace(m, ev).dim == dim for ev, dim in expected.items())


# Dimension 5.


def _phi_spectrum(rep: SpinRep) -> bool:
    two_i = IU * 2
    return _eigen_dims(
        rep, forms.contact_phi(5), {two_i: 1, -two_i: 1, symring.ZERO: 2}
    )


def _sasakian_nabla2_shift(rep: SpinRep) -> bool:
    """Along the contact direction (p, q, B) = (0, 1, 1) and F = A * e1234
    shift every spinor by -i A."""
    flux = Form.blade(5, (1, 2, 3, 4), A)
    diff = connection_difference(
        rep, Form.zero(5), flux, symring.ZERO, symring.ZERO, symring.ONE, 5
    )
    return diff == Endo.scalar(rep.dim, -IU * A)


# Dimension 6.

SU3_TORSION = forms.SU3_TORSION_SHAPE * a


def _su3_block(rep: SpinRep) -> bool:
    m = rep.act(SU3_TORSION)
    expected = Endo.zero(rep.dim).rows
    rows = [list(row) for row in expected]
    rows[0][1] = IU * a * 4
    rows[1][0] = -IU * a * 4
    return m == Endo.from_entries(rows)


def _su3_difference(rep: SpinRep, i: int) -> Endo:
    """The nabla^1 difference (p = 1/2) for F = A * *Omega."""
    flux = forms.STAR_KAEHLER * A
    s = (B - 1) * symring.const(Fraction(1, 4))
    p = symring.const(Fraction(1, 2))
    return connection_difference(rep, SU3_TORSION, flux, s, p, q, i)


def _spinor(plus: bool) -> tuple[symring.Poly, ...]:
    head = (IU if plus else -IU, symring.ONE)
    return head + (symring.ZERO,) * 6


def _su3_first_direction(rep: SpinRep) -> bool:
    """Image of the two T-eigenspinors under the e_1 difference."""
    diff = _su3_difference(rep, 1)
    half_a = a * (B - 1) * symring.const(Fraction(1, 2))
    shift = A * (q - 1)
    for plus in (True, False):
        image = diff.apply(_spinor(plus))
        sign = 1 if plus else -1
        expected = [symring.ZERO] * 8
        expected[2] = shift * sign + half_a
        expected[5] = IU * (half_a * sign + shift)
        if list(image) != expected:
            return False
    return True


def _su3_all_directions(rep: SpinRep) -> bool:
    """Under 2 (q - 1) A = +-a (B - 1) the spinor of T-eigenvalue +-4a is
    moved along the expected vector, for every direction."""
    for sign in (1, -1):
        relation = (q - 1) * A * 2 - a * (B - 1) * sign
        scale = a * (B - 1)
        for k in range(1, 7):
            x = [symring.ZERO] * 7
            x[k] = symring.ONE
            expected = [
                symring.ZERO,
                symring.ZERO,
                x[1] - IU * x[2],
                -x[3] + IU * x[4],
                IU * x[5] + x[6],
                (IU * x[1] - x[2]) * sign,
                (-IU * x[3] + x[4]) * sign,
                (x[5] + IU * x[6]) * sign,
            ]
            image = _su3_difference(rep, k).apply(_spinor(sign == 1))
            for got, want in zip(image, expected, strict=True):
                residual = got - want * scale
                if symring.eliminate(residual, relation, "A"):
                    return False
    return True


# Dimension 7.


def _g2_targets() -> list[CalibrationTarget]:
    diagonals = {
        "omega3": (forms.G2_FORM, [-7, 1, 1, 1, 1, 1, 1, 1]),
        "D1": (forms.D1, [4, -4, 0, 0, 0, 0, 0, 0]),
        "D2": (forms.D2, [4, -4, -2, -2, 1, 1, 1, 1]),
        "D3": (forms.D3, [6, -2, -2, -2, 0, 0, 0, 0]),
    }
    return [
        CalibrationTarget(
            f"{name}-diagonal",
            f"{name} acts as diag{tuple(values)}",
            functools.partial(_diagonal, x=x, values=values),
        )
        for name, (x, values) in diagonals.items()
    ]


def calibration_targets(n: int) -> list[CalibrationTarget]:
    if n == 5:
        return [
            CalibrationTarget(
                "phi-spectrum",
                "Phi has eigenvalues +-2i once each and 0 twice",
                _phi_spectrum,
            ),
            CalibrationTarget(
                "nabla2-contact-shift",
                "nabla^2 differs from nabla^c by -iA along the contact "
                "direction",
                _sasakian_nabla2_shift,
            ),
        ]
    if n == 6:
        return [
            CalibrationTarget(
                "su3-torsion-block",
                "T = a(-e246+e136+e145+e235) is [[0, 4ai], [-4ai, 0]] + 0",
                _su3_block,
            ),
            CalibrationTarget(
                "difference-e1-columns",
                "e_1 difference on the T-eigenspinors [+-i, 1, 0, ...]",
                _su3_first_direction,
            ),
            CalibrationTarget(
                "difference-general-direction",
                "difference along every e_k under 2(q-1)A = +-a(B-1)",
                _su3_all_directions,
            ),
        ]
    if n == 7:
        return _g2_targets()
    raise DimensionError(f"Unsupported dimension: {n}")


def _evaluate(
    frame: frames.Frame, targets: list[CalibrationTarget], level: int
) -> CandidateResult:
    rep = SpinRep(frame.n, tuple(frame.build()), frame.name)
    defects = rep.clifford_defects()
    result = CandidateResult(frame.name, frame.description, not defects)
    if defects:
        logger.log(
            level,
            f"Frame {frame.name} (n={frame.n}) violates the Clifford "
            f"relations at {defects}",
        )
        return result
    for target in targets:
        if target.check(rep):
            result.passed.append(target.name)
        else:
            result.failed.append(target.name)
    logger.log(
        level,
        f"Frame {frame.name} (n={frame.n}): passed {result.passed}, "
        f"failed {result.failed}",
    )
    return result


def search_orbit(
    base: frames.Frame, targets: list[CalibrationTarget], limit: int
) -> tuple[frames.Frame | None, int]:
    """First frame of the signed-permutation orbit of ``base`` passing
    every target, and the number of orbit frames tried."""
    searched = 0
    for frame in frames.monomial_orbit(base, limit):
        searched += 1
        if _evaluate(frame, targets, logging.DEBUG).ok:
            logger.info(
                f"Orbit frame {frame.name} passes every target: "
                f"{frame.description}"
            )
            return frame, searched
    return None, searched


def calibrate(
    n: int,
    candidates: Sequence[frames.Frame] | None = None,
    orbit_limit: int = ORBIT_LIMIT,
) -> CalibrationReport:
    """Test every candidate frame against the targets of dimension ``n``.

    When no candidate passes, the spinor-basis orbit of each candidate that
    satisfies the Clifford relations is searched, up to ``orbit_limit``
    frames per candidate.
    """
    targets = calibration_targets(n)
    pool = list(
        frames.candidate_frames(n) if candidates is None else candidates
    )
    results = [_evaluate(frame, targets, logging.INFO) for frame in pool]
    report = CalibrationReport(n, [t.name for t in targets], results)
    for frame, result in zip(pool, results, strict=True):
        if result.ok:
            report.selected_frame = frame
            return report
    for frame, result in zip(pool, results, strict=True):
        if not result.clifford_ok or orbit_limit <= 0:
            continue
        found, searched = search_orbit(frame, targets, orbit_limit)
        report.searched += searched
        if found is not None:
            report.candidates.append(_evaluate(found, targets, logging.DEBUG))
            report.selected_frame = found
            break
    return report


@functools.cache
def build_rep(n: int) -> SpinRep:
    """The calibrated spin representation in dimension ``n``.

    Raises:
        CalibrationError: If no candidate frame, nor any frame in their
            spinor-basis orbits, reproduces every target.
    """
    report = calibrate(n)
    frame = report.selected_frame
    if frame is None:
        raise CalibrationError(
            f"No frame in dimension {n} reproduces every target after "
            f"{report.searched} orbit frames; the largest consistent subset "
            f"is {report.maximal_consistent_subset()}"
        )
    if len(report.consistent_frames) > 1:
        logger.info(
            f"Dimension {n} admits several consistent frames: "
            f"{report.consistent_frames}; using {report.selected}"
        )
    return SpinRep(n, tuple(frame.build()), frame.name)
