"""
Reading and writing finite populations as CSV: a header ``x1,...,xp,z,y``
followed by one record per row, ``z`` in ``{0, 1}`` and every other field a
finite decimal. Rows are numbered from 1, not counting the header.
"""
import logging
import re

import numpy as np
import pandas as pd

from fairselect.exceptions import MissingSubgroupError, PopulationFormatError
from fairselect.models.datasets import PopulationTable

logger = logging.getLogger(__name__)

TOO_MANY_FIELDS = re.compile(r"Expected (\d+) fields in line (\d+), saw (\d+)")


def _check_header(columns):
    columns = [str(column).strip() for column in columns]
    expected = ["x%d" % index for index in range(1, len(columns) - 1)] + ["z", "y"]
    if len(columns) < 3 or columns != expected:
        raise PopulationFormatError(
            "the header must read x1,...,xp,z,y with p >= 1, got %s" % ",".join(columns)
        )
    return columns


def _row_number(frame, position):
    """The data row of ``frame``'s ``position``-th record, blank lines included."""

    return int(frame.index[position]) + 1


def _parser_problem(path, error):
    match = TOO_MANY_FIELDS.search(str(error))
    if match is None:
        return "%s could not be parsed: %s" % (path, error)
    expected, line, seen = (int(group) for group in match.groups())
    return "row %d: too many fields (expected %d, saw %d)" % (line - 1, expected, seen)


def _first_bad_cell(frame, numbers, columns):
    bad = ~np.isfinite(numbers)
    rows = np.flatnonzero(bad.any(axis=1))
    if not rows.shape[0]:
        return None
    row = int(rows[0])
    column = int(np.flatnonzero(bad[row])[0])
    raw = frame.iat[row, column]
    reason = "missing value" if pd.isna(raw) or raw == "" else "'%s' is not a finite number" % raw
    return "row %d, column %s: %s" % (_row_number(frame, row), columns[column], reason)


def read_population_csv(path):
    """Parses a population file. Errors name the offending row and column."""

    try:
        frame = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
            skip_blank_lines=False,
        )
    except pd.errors.EmptyDataError:
        raise PopulationFormatError("%s is empty" % path)
    except pd.errors.ParserError as e:
        raise PopulationFormatError(_parser_problem(path, e))

    columns = _check_header(frame.columns)
    frame = frame.apply(lambda column: column.str.strip())
    # blank lines are skipped but still counted in row numbers
    blank = (frame.isna() | (frame == "")).all(axis=1)
    frame = frame[~blank]
    numbers = frame.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=float)

    problem = _first_bad_cell(frame, numbers, columns)
    if problem:
        raise PopulationFormatError(problem)

    z = numbers[:, -2]
    invalid = np.flatnonzero((z != 0) & (z != 1))
    if invalid.shape[0]:
        row = int(invalid[0])
        raise PopulationFormatError(
            "row %d, column z: expected 0 or 1, got '%s'"
            % (_row_number(frame, row), frame.iat[row, -2])
        )
    if numbers.shape[0] < 2:
        raise PopulationFormatError("a population needs at least two rows")
    for group in (0, 1):
        if not np.any(z == group):
            raise MissingSubgroupError("%s has no records with z=%d" % (path, group))

    table = PopulationTable(numbers[:, :-2], z.astype(np.int8), numbers[:, -1])
    logger.info("read %d records with %d features from %s", table.N, table.p, path)
    return table


def write_population_csv(table, path):
    """Writes ``table`` with round trip float precision."""

    frame = pd.DataFrame(
        table.features, columns=["x%d" % index for index in range(1, table.p + 1)]
    )
    frame["z"] = table.z.astype(int)
    frame["y"] = table.y
    frame.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
    return path
