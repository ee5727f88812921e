"""Shared fixtures: the reference tables used across the test modules.

The two data files are immutable snapshots of a published knot table:

* ``reference_knots.txt``       -- 250 rows ``order|crossings|name``
* ``reference_invariants.txt``  -- 250 rows ``order|characteristic|<6 counts>``

A handful of rows carry transcription damage in the source material; the
test modules pin those rows explicitly so that any change in how the code
handles them is caught.
"""
from __future__ import annotations

import pathlib

import pytest

DATA = pathlib.Path(__file__).parent / "data"

# The six linear color tests tabulated in the reference grid, in column order.
GRID_TESTS = ((3, 1), (5, 1), (5, 2), (7, 1), (7, 2), (7, 3))

# Known damage in the reference tables (verified one by one; see the module
# docstrings of test_characteristic.py and test_colorings.py):
#   - knot row 122 repeats the name of row 120 verbatim,
#   - invariant rows 122 and 158 have their response cells exchanged,
#   - invariant row 225's response cells belong to a different knot,
#   - characteristic cell 141 is truncated and cannot be parsed.
DUPLICATED_NAME_ROW = 122
SWAPPED_RESPONSE_ROWS = (122, 158)
FOREIGN_RESPONSE_ROW = 225
TRUNCATED_CHARACTERISTIC_ROW = 141


@pytest.fixture(scope="session")
def knot_table() -> list[tuple[int, int, str]]:
    """All reference knots as (order, crossings, name-text) rows."""
    rows = []
    with open(DATA / "reference_knots.txt") as fh:
        next(fh)  # header
        for line in fh:
            order, crossings, text = line.rstrip("\n").split("|")
            rows.append((int(order), int(crossings), text))
    assert len(rows) == 250
    return rows


@pytest.fixture(scope="session")
def knot_names(knot_table) -> dict[int, str]:
    """Reference name text keyed by order."""
    return {order: text for order, _, text in knot_table}


@pytest.fixture(scope="session")
def invariant_table() -> dict[int, tuple[str, tuple[int, ...]]]:
    """Reference invariants keyed by order: (characteristic-text, responses).

    The characteristic cell is returned verbatim apart from stripping the
    ``\\*`` footnote markers that a few rows carry.
    """
    rows: dict[int, tuple[str, tuple[int, ...]]] = {}
    with open(DATA / "reference_invariants.txt") as fh:
        next(fh)  # header
        for line in fh:
            cells = line.rstrip("\n").split("|")
            order = int(cells[0])
            char_text = cells[1].replace("\\*", "")
            responses = tuple(int(x) for x in cells[2:8])
            rows[order] = (char_text, responses)
    assert len(rows) == 250
    return rows
