"""Bundled example inputs."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def path(name: str) -> Path:
    """Filesystem path of a bundled corpus file."""
    p = Path(str(resources.files(__name__) / name))
    if not p.is_file():
        raise FileNotFoundError(f"no bundled corpus file named {name!r}")
    return p


def names() -> list[str]:
    return sorted(
        p.name for p in Path(str(resources.files(__name__))).iterdir()
        if p.is_file() and not p.name.startswith("__")
    )


def code_files() -> list[str]:
    """Corpus entries that hold a QC polynomial matrix."""
    return [n for n in names() if n.endswith(".qc")]
