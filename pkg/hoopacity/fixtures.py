"""Models shipped with the package, loaded by name ("g1", "robot")."""
from importlib import resources
from typing import List

from hoopacity.exceptions import UsageError
from hoopacity.model_file import ParsedModel, parse_model


def available() -> List[str]:
    folder = resources.files("hoopacity") / "models"
    return sorted(entry.name[:-5] for entry in folder.iterdir() if entry.name.endswith(".json"))


def model_text(name: str) -> str:
    entry = resources.files("hoopacity") / "models" / f"{name}.json"
    if not entry.is_file():
        raise UsageError(f"no packaged model named '{name}' (available: {', '.join(available())})")
    return entry.read_text(encoding="utf-8")


def load_fixture(name: str) -> ParsedModel:
    return parse_model(model_text(name))
