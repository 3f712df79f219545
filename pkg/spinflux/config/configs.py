"""Top-level RunConfig dataclass."""

import argparse
from dataclasses import dataclass
from typing import Any

from spinflux.config.mode import Mode, OutputFormat
from spinflux.errors import UnknownClassError
from spinflux.geometry.catalog import CLASS_IDS
from spinflux.utils.sampling import resolve_seed


def parse_class_filter(text: str) -> list[str]:
    """``"all"`` or comma separated catalog ids, in catalog order."""
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise ValueError("Empty class filter; pass a class id or 'all'")
    if names == ["all"]:
        return list(CLASS_IDS)
    unknown = [n for n in names if n not in CLASS_IDS]
    if unknown:
        raise UnknownClassError(
            f"Unknown geometry class: {', '.join(unknown)}"
        )
    return [cid for cid in CLASS_IDS if cid in names]


@dataclass
class RunConfig:
    mode: Mode
    classes: list[str]
    seed: int
    samples: int
    format: OutputFormat
    out: str
    verbose: bool

    @staticmethod
    def from_args(args: argparse.Namespace) -> "RunConfig":
        mode = Mode.from_args(args)
        seed = resolve_seed(args.seed)
        if seed < 1:
            raise ValueError(f"Seed must be positive, got {seed}")
        if args.samples < 1:
            raise ValueError(
                f"Sample count must be positive, got {args.samples}"
            )
        return RunConfig(
            mode=mode,
            classes=parse_class_filter(args.class_filter),
            seed=seed,
            samples=args.samples,
            format=OutputFormat(args.format),
            out=args.out,
            verbose=args.verbose,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            **self.mode.to_dict(),
            "classes": self.classes,
            "seed": self.seed,
            "samples": self.samples,
            "format": self.format.value,
        }
