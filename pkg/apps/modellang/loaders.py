"""
Loading `.tn` documents from disk and from the shipped fixtures.
"""
from pathlib import Path

from apps.core.exceptions import InputError

from .parser import parse_model

FIXTURES_DIR = Path(__file__).resolve().parent / 'fixtures'


def load_document(path):
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise InputError(f"Cannot read model file {path}: {exc.strerror or exc}") from None
    return parse_model(data)


def load_fixture(name):
    """Load a shipped fixture by stem, e.g. `load_fixture('Mb')`."""
    return load_document(FIXTURES_DIR / f"{name}.tn")
