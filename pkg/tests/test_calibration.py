import pytest

from spinflux.algebra import symring
from spinflux.algebra.matrices import Endo
from spinflux.errors import DimensionError
from spinflux.geometry import forms
from spinflux.spin import calibration, frames


@pytest.mark.parametrize("n", [5, 6, 7])
def test_some_frame_reproduces_every_target(n):
    report = calibration.calibrate(n)
    assert report.selected is not None
    assert report.selected in report.consistent_frames
    assert report.maximal_consistent_subset() == report.targets
    assert calibration.build_rep(n).frame == report.selected


@pytest.mark.parametrize(
    "form, values",
    [
        (forms.G2_FORM, [-7, 1, 1, 1, 1, 1, 1, 1]),
        (forms.D1, [4, -4, 0, 0, 0, 0, 0, 0]),
        (forms.D2, [4, -4, -2, -2, 1, 1, 1, 1]),
        (forms.D3, [6, -2, -2, -2, 0, 0, 0, 0]),
    ],
)
def test_g2_forms_act_diagonally(rep7, form, values):
    assert rep7.act(form) == Endo.diagonal(values)


def test_su3_torsion_block(rep6):
    a = symring.gen("a")
    m = rep6.act(forms.SU3_TORSION_SHAPE * a)
    assert m.entry(0, 1) == a * symring.const(0, 4)
    assert m.entry(1, 0) == a * symring.const(0, -4)
    assert all(
        not m.entry(r, c)
        for r in range(8)
        for c in range(8)
        if (r, c) not in ((0, 1), (1, 0))
    )


def test_report_lists_every_candidate():
    report = calibration.calibrate(7)
    names = [c["frame"] for c in report.to_dict()["candidates"]]
    assert len(names) == len(set(names)) >= 2


def test_unsupported_dimension():
    with pytest.raises(DimensionError):
        calibration.calibration_targets(4)


def test_orbit_search_recovers_a_rephased_frame(rep6):
    base = next(
        f for f in frames.candidate_frames(6) if f.name == rep6.frame
    )
    flip = frames.monomial_columns(
        range(8), [frames.ONE] * 7 + [-frames.ONE]
    )
    scrambled = frames.Frame(
        "scrambled",
        6,
        "calibrated frame with the last spinor negated",
        lambda: frames.change_basis(base.build(), flip),
    )
    report = calibration.calibrate(6, candidates=[scrambled])
    assert report.candidates[0].clifford_ok
    assert not report.candidates[0].ok
    assert report.searched >= 1
    assert report.selected is not None
    assert report.selected.startswith("scrambled~")
    assert report.selected_frame is not None
    assert list(report.selected_frame.build()) == list(rep6.gammas)
    assert report.to_dict()["searched"] == report.searched


def test_orbit_skips_the_frame_itself():
    base = frames.candidate_frames(5)[0]
    orbit = list(frames.monomial_orbit(base, 5))
    assert len(orbit) == 5
    assert [f.name for f in orbit] == [f"{base.name}~{k}" for k in range(1, 6)]
    assert orbit[0].description.endswith("phases [1, 1, 1, i]")
    assert all(f.n == 5 for f in orbit)


def test_no_orbit_search_without_a_limit(rep6):
    base = next(
        f for f in frames.candidate_frames(6) if f.name == rep6.frame
    )
    flip = frames.monomial_columns(range(8), [frames.IU] + [frames.ONE] * 7)
    scrambled = frames.Frame(
        "scrambled",
        6,
        "calibrated frame with the first spinor rephased",
        lambda: frames.change_basis(base.build(), flip),
    )
    report = calibration.calibrate(6, candidates=[scrambled], orbit_limit=0)
    assert report.selected is None
    assert report.selected_frame is None
    assert report.searched == 0
