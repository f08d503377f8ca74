"""Bundled example data: a 4-dimensional solvable Malcev algebra, the
non-Lie representation of sl2, parametric operator families, a
symplectic form family, and ready-made Yang-Baxter solutions."""

from importlib import resources
from pathlib import Path


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled fixture file."""
    path = resources.files(__package__).joinpath(name)
    if not path.is_file():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return Path(str(path))


def list_fixtures() -> list[str]:
    return sorted(
        entry.name
        for entry in resources.files(__package__).iterdir()
        if entry.name.endswith(".json")
    )
