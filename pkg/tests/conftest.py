import io
import json

import pytest

from rational_fourfolds import config
from rational_fourfolds.cli import run
from rational_fourfolds.schema import IntersectionForm


@pytest.fixture(autouse=True)
def default_budgets(monkeypatch):
    """Documented default budgets, whatever a local .env says."""
    monkeypatch.setattr(config, "MAX_WORDS", 2_000_000)
    monkeypatch.setattr(config, "MAX_BASIS", 40_000)
    monkeypatch.setattr(config, "MAX_HOMOLOGY_DEGREE", 8)
    monkeypatch.setattr(config, "PROGRESS", False)


@pytest.fixture
def form():
    def make(b2: int, signature: int | None = None) -> IntersectionForm:
        return IntersectionForm.from_rank_signature(b2, signature)

    return make


@pytest.fixture
def cli():
    """Run the command line in-process: returns (exit code, stdout, stderr)."""

    def invoke(*argv: str) -> tuple[int, str, str]:
        out, err = io.StringIO(), io.StringIO()
        code = run(list(argv), stdout=out, stderr=err)
        return code, out.getvalue(), err.getvalue()

    return invoke


@pytest.fixture
def cli_json(cli):
    def invoke(*argv: str) -> tuple[int, dict]:
        code, out, err = cli(*argv, "--format", "json")
        assert code in (0, 1), err
        return code, json.loads(out)

    return invoke
