import pytest

from spinflux.config.configs import RunConfig, parse_class_filter
from spinflux.config.mode import Command, Derivative, OutputFormat
from spinflux.errors import UnknownClassError
from spinflux.geometry.catalog import CLASS_IDS
from spinflux.utils.parser import parse_args
from spinflux.utils.sampling import DEFAULT_SEED, SEED_ENV


def config(*argv: str) -> RunConfig:
    return RunConfig.from_args(parse_args(list(argv)))


def test_parse_class_filter():
    assert parse_class_filter("all") == list(CLASS_IDS)
    assert parse_class_filter("G2_su2_I, Sasakian5") == [
        "Sasakian5",
        "G2_su2_I",
    ]
    assert parse_class_filter("AH_U2_-1") == ["AH_U2_-1"]


@pytest.mark.parametrize("text", ["", " , "])
def test_empty_class_filter(text):
    with pytest.raises(ValueError, match="Empty class filter"):
        parse_class_filter(text)


def test_unknown_class():
    with pytest.raises(UnknownClassError, match="Sasakian9"):
        parse_class_filter("Sasakian5,Sasakian9")


def test_defaults():
    cfg = config("verify")
    assert cfg.mode.command == Command.VERIFY
    assert cfg.mode.derivative is None
    assert cfg.classes == list(CLASS_IDS)
    assert cfg.seed == DEFAULT_SEED
    assert cfg.samples == 20
    assert cfg.format == OutputFormat.JSON
    assert cfg.out == "spinflux-out"
    assert not cfg.verbose


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv(SEED_ENV, "9")
    assert config("census").seed == 9
    assert config("census", "--seed", "3").seed == 3


def test_malformed_seed_environment(monkeypatch):
    monkeypatch.setenv(SEED_ENV, "nine")
    with pytest.raises(ValueError, match=SEED_ENV):
        config("census")


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "--seed", "0"),
        ("verify", "--samples", "0"),
        ("dump", "--class", ""),
    ],
)
def test_invalid_values(argv):
    with pytest.raises(ValueError):
        config(*argv)


def test_missing_command():
    with pytest.raises(ValueError, match="Must specify one of"):
        config()


def test_to_dict():
    cfg = config(
        "dump",
        "--class",
        "AH_SU3",
        "--derivative",
        "nabla2",
        "--seed",
        "5",
        "--format",
        "text",
        "--out",
        "/tmp/elsewhere",
    )
    assert cfg.mode.derivative == Derivative.NABLA2
    assert cfg.to_dict() == {
        "command": "dump",
        "derivative": "nabla2",
        "classes": ["AH_SU3"],
        "seed": 5,
        "samples": 20,
        "format": "text",
    }
