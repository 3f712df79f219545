import logging
import sys
import traceback
from collections.abc import Callable, Sequence

from spinflux.algebra import symring
from spinflux.config.configs import RunConfig
from spinflux.config.mode import Command, Derivative, OutputFormat
from spinflux.geometry import catalog
from spinflux.geometry.catalog import ConnectionParams
from spinflux.geometry.curvature import (
    PRINTED_SU3,
    ContractionSet,
    CurvatureContext,
    correction,
    k_contractions,
    su3_coefficients,
    su3_layout,
)
from spinflux.spin.calibration import build_rep, calibrate
from spinflux.utils.logging_setup import setup_logging
from spinflux.utils.metadata import write_json, write_text
from spinflux.utils.parser import parse_args
from spinflux.utils.paths import OutputPaths
from spinflux.verify import obstruction, report
from spinflux.verify.census import parallel_spinor_census, render_table
from spinflux.verify.crosschecks import crosschecks_for
from spinflux.verify.theorems import theorems_for
from spinflux.verify.verifier import verify_all

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _write_document(cfg: RunConfig, document: dict):
    paths = OutputPaths(cfg.out)
    command = cfg.mode.command.value
    if cfg.format == OutputFormat.JSON:
        path = paths.report(command, "json")
        write_json(document, path)
    else:
        path = paths.report(command, "txt")
        write_text(report.render(document), path)
    logger.info(f"Wrote {path}")


def cmd_verify(cfg: RunConfig) -> int:
    derivative = cfg.mode.derivative
    specs = [
        spec
        for cid in cfg.classes
        for spec in theorems_for(cid)
        if derivative is None or spec.derivative == derivative
    ]
    logger.info(f"Verifying {len(specs)} theorem records")
    reports = verify_all(specs, cfg.samples, cfg.seed)
    checks = crosschecks_for(cfg.classes, cfg.seed)
    document = report.verify_document(reports, checks, cfg.to_dict())
    _write_document(cfg, document)
    summary = document["summary"]
    logger.info(
        f"{summary['as_expected']}/{summary['total']} records as expected"
    )
    return EXIT_OK if report.document_ok(document) else EXIT_FAILURE


def cmd_census(cfg: RunConfig) -> int:
    rows = parallel_spinor_census(cfg.classes, cfg.seed)
    _write_document(cfg, report.census_document(rows, cfg.to_dict()))
    return EXIT_OK


def cmd_table1(cfg: RunConfig) -> int:
    rows = parallel_spinor_census(cfg.classes, cfg.seed)
    table = render_table(rows)
    write_text(table, OutputPaths(cfg.out).report("table1", "txt"))
    sys.stdout.write(table)
    return EXIT_OK


def _file_name(name: str) -> str:
    return name.replace("*", "star_")


def _su3_coefficient_dump(contractions: ContractionSet) -> dict:
    derived = su3_coefficients(contractions)
    computed = {
        "K": contractions.k_second,
        "K(e2)": contractions.k_first[1],
        "K(e4)": contractions.k_first[3],
        "K(e6)": contractions.k_first[5],
    }
    layout = su3_layout(derived)
    return {
        "layout_matches": {
            name: layout[name] == m for name, m in computed.items()
        },
        "coefficients": {
            name: {
                "derived": symring.to_text(value),
                "printed": symring.to_text(PRINTED_SU3[name]),
                "matches": value == PRINTED_SU3[name],
            }
            for name, value in derived.items()
        },
        "obstruction": [
            symring.to_text(x)
            for x in obstruction.kernel_obstruction(contractions, (2, 4, 6))
        ],
    }


def cmd_dump(cfg: RunConfig) -> int:
    derivative = cfg.mode.derivative or Derivative.NABLA1
    paths = OutputPaths(cfg.out)
    status = EXIT_OK
    for cid in cfg.classes:
        cls = catalog.get_class(cid)
        rep = build_rep(cls.n)
        params = ConnectionParams.for_derivative(derivative, cls.n)
        ctx = CurvatureContext(cls, params, rep)
        target = paths.dump_dir(cid, derivative)
        contractions = k_contractions(ctx)
        if not contractions.consistency_defect(rep).is_zero():
            logger.error(f"{cid}: K differs from sum_i e_i K(e_i)")
            status = EXIT_FAILURE
        write_text(contractions.k_second.to_text(), target / "K.txt")
        for i, k in enumerate(contractions.k_first, start=1):
            write_text(k.to_text(), target / f"K_e{i}.txt")
            write_text(
                correction(ctx, i).to_text(), target / f"correction_e{i}.txt"
            )
        for name in ["T", *cls.fundamental_forms]:
            endo = rep.act(cls.piece(name))
            write_text(endo.to_text(), target / f"form_{_file_name(name)}.txt")
        if cid == "AH_SU3" and derivative == Derivative.NABLA1:
            write_json(
                _su3_coefficient_dump(contractions),
                target / "coefficients.json",
            )
            for name, m in su3_layout(PRINTED_SU3).items():
                write_text(m.to_text(), target / f"printed_{name}.txt")
        logger.info(f"Dumped {cid} ({derivative.value}) to {target}")
    return status


def cmd_calibrate(cfg: RunConfig) -> int:
    dims = sorted({catalog.get_class(cid).n for cid in cfg.classes})
    reports = [calibrate(n) for n in dims]
    write_json(
        {str(r.n): r.to_dict() for r in reports},
        OutputPaths(cfg.out).calibration,
    )
    if any(r.selected is None for r in reports):
        return EXIT_FAILURE
    return EXIT_OK


def cmd_catalog(cfg: RunConfig) -> int:
    write_json(
        catalog.catalog_dump(cfg.classes),
        OutputPaths(cfg.out).catalog,
    )
    return EXIT_OK


COMMANDS: dict[Command, Callable[[RunConfig], int]] = {
    Command.VERIFY: cmd_verify,
    Command.DUMP: cmd_dump,
    Command.TABLE1: cmd_table1,
    Command.CENSUS: cmd_census,
    Command.CALIBRATE: cmd_calibrate,
    Command.CATALOG: cmd_catalog,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    setup_logging(args.verbose if args.command else False)

    try:
        cfg = RunConfig.from_args(args)
    except ValueError as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE

    try:
        return COMMANDS[cfg.mode.command](cfg)
    except Exception as e:
        logger.error(f"Failed: {str(e)}\n{traceback.format_exc()}")
        return EXIT_FAILURE


if __name__ == "__main__":
    exit(main())
