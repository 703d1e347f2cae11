from pathlib import Path

import pytest

import vertexforge

GRAPH_DIR = Path(vertexforge.__file__).parent / "data" / "graphs"
INVALID_DIR = Path(__file__).parent / "data" / "invalid"


def corpus_paths() -> list[Path]:
    return sorted(GRAPH_DIR.glob("*.ftcy"))


def invalid_cases() -> list[tuple[Path, str]]:
    out = []
    for path in sorted(INVALID_DIR.glob("*.ftcy")):
        first = path.read_text(encoding="utf-8").splitlines()[0]
        assert first.startswith("# expect:"), path
        out.append((path, first.split(":", 1)[1].strip()))
    return out


@pytest.fixture
def graph_dir() -> Path:
    return GRAPH_DIR
