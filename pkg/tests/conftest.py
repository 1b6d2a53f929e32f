import sys
from pathlib import Path

import pytest

from esgstruct.elements import Element, ElementKind, ElementMetadata, element_id
from esgstruct.tables import TableGrid, to_html, to_raw_text

FIXTURES = Path(__file__).parent / "fixtures"
sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def make_element(kind, text="", ordinal=1, page=1, grid=None):
    kind = ElementKind(kind)
    if kind is ElementKind.TABLE:
        grid = grid or TableGrid.from_rows([[text or "x"]])
        md = ElementMetadata(page=page, element_id=element_id(ordinal), text_as_html=to_html(grid))
        return Element(kind, to_raw_text(grid), md, table=grid)
    return Element(kind, text, ElementMetadata(page=page, element_id=element_id(ordinal)))


def make_elements(specs):
    """``[(kind, text), ...]`` -> elements with ids e000001... in order."""
    return [make_element(kind, text, ordinal=i) for i, (kind, text) in enumerate(specs, start=1)]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(module.RESULTS, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
