import json
from pathlib import Path

import pytest

from resume_seniority.resume import parse_resume

DATA = Path(__file__).parent / "data"


def job(title="Clerk", start="2010-01", end="2011-01", description=""):
    d = {"title": title, "description": description}
    if start is not None:
        d["dateRange"] = {"start": start, "end": end}
    return d


def record(id="r1", sector="Finance", jobs=(), education=(), **extra):
    d = {"id": id, "sector": sector, "workExperience": list(jobs), "education": list(education)}
    d.update(extra)
    return d


def make_resume(**kw):
    return parse_resume(json.dumps(record(**kw)))


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
