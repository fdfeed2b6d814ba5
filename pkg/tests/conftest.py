import sys
from pathlib import Path

import numpy as np
import pytest

from iwtsteg import files

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
GOLDEN = Path(__file__).resolve().parent / "data" / "golden"

# Stand-ins for the classic test images (see corpus/README.md).
BABOON_LIKE = "chelsea"
PEPPERS_LIKE = "coffee"
FOOTBALL_LIKE = "camera"
EARTH_LIKE = "retina"


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def covers():
    return {p.stem: files.load_rgb(p) for p in files.list_images(CORPUS / "covers")}


@pytest.fixture(scope="session")
def secrets():
    return {p.stem: files.load_grey(p) for p in files.list_images(CORPUS / "secrets")}


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "REPORT_LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(lines):
        terminalreporter.write_line(lines[number])
