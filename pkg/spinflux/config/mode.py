"""Command and derivative-family enums, and the Mode dataclass."""

import argparse
from dataclasses import dataclass
from enum import Enum


class Command(str, Enum):
    """Subcommands of the spinflux CLI."""

    VERIFY = "verify"
    DUMP = "dump"
    TABLE1 = "table1"
    CENSUS = "census"
    CALIBRATE = "calibrate"
    CATALOG = "catalog"


class Derivative(str, Enum):
    """Families of connections nabla = nabla^g + 1/4 (X _| T)
    + p (X _| F) + q (X ^ F) with T = B * T^c."""

    NABLA0 = "nabla0"
    NABLA1 = "nabla1"
    NABLA2 = "nabla2"
    GENERIC = "generic"


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


@dataclass
class Mode:
    command: Command
    derivative: Derivative | None

    @staticmethod
    def from_args(args: argparse.Namespace) -> "Mode":
        if not args.command:
            raise ValueError(
                "Invalid arguments. Must specify one of: "
                + ", ".join(c.value for c in Command)
            )
        derivative = getattr(args, "derivative", None)
        return Mode(
            command=Command(args.command),
            derivative=Derivative(derivative) if derivative else None,
        )

    def to_dict(self) -> dict[str, str]:
        kwargs = {}
        if self.derivative:
            kwargs["derivative"] = self.derivative.value
        return {"command": self.command.value, **kwargs}
