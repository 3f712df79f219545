import json
from pathlib import Path


def write_json(document: dict, path: Path):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(document, f, indent=2, sort_keys=True)
        f.write("\n")


def load_json(path: Path) -> dict:
    with open(path) as f:
        return json.load(f)


def write_text(text: str, path: Path):
    """Write ``text`` with exactly one trailing newline."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        f.write(text.rstrip("\n") + "\n")
