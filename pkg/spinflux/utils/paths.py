from pathlib import Path

from spinflux.config.mode import Derivative


class OutputPaths:
    def __init__(self, out: str):
        self.root = Path(out)

    def report(self, command: str, suffix: str) -> Path:
        return self.root / f"{command}.{suffix}"

    @property
    def calibration(self) -> Path:
        return self.root / "calibration.json"

    @property
    def catalog(self) -> Path:
        return self.root / "catalog.json"

    @property
    def dumps(self) -> Path:
        return self.root / "dump"

    def dump_dir(self, class_id: str, derivative: Derivative) -> Path:
        return self.dumps / class_id / derivative.value
