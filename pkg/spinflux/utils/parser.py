import argparse
from collections.abc import Sequence

from spinflux.config.mode import Command, Derivative, OutputFormat

_HELP = {
    Command.VERIFY: "Verify the theorem records of the selected classes",
    Command.DUMP: "Write K matrices and connection corrections to files",
    Command.TABLE1: "Render the existence table of parallel spinors",
    Command.CENSUS: "Write the parallel spinor census as JSON",
    Command.CALIBRATE: "Report which spinor frames reproduce the displays",
    Command.CATALOG: "Dump the geometry class catalog",
}


def _shared_arguments() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "--class",
        dest="class_filter",
        default="all",
        help=(
            "Geometry class id, a comma separated list of ids, or 'all'. "
            "Defaults to 'all'"
        ),
    )
    parser.add_argument(
        "--derivative",
        choices=[d.value for d in Derivative],
        help=(
            "Derivative family. Filters theorem records for verify; "
            "dump defaults to nabla1"
        ),
    )
    parser.add_argument(
        "--seed",
        type=int,
        help="Sampling seed. Falls back to $SPINFLUX_SEED, then 42",
    )
    parser.add_argument(
        "--samples",
        type=int,
        default=20,
        help="Generic samples per relation in necessity checks",
    )
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.JSON.value,
        help="Report format written to the output directory",
    )
    parser.add_argument(
        "--out",
        type=str,
        default="spinflux-out",
        help="Output directory. Defaults to ./spinflux-out",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        default=False,
        help="If flagged, log debug messages",
    )
    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description="Exact verification of Killing spinors with flux"
    )
    shared = _shared_arguments()
    subparsers = parser.add_subparsers(dest="command")
    for command in Command:
        subparsers.add_parser(
            command.value, parents=[shared], help=_HELP[command]
        )
    return parser.parse_args(argv)
