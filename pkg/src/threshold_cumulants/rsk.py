"""Schensted row insertion, RSK, the insertion function and the threshold.

Tableaux are stored row-first, bottom row first.  Entries may be Fractions
(exact work) or floats (Monte Carlo); only comparisons and midpoints are used.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from threshold_cumulants.diagrams import YoungDiagram
from threshold_cumulants.errors import DomainError
from threshold_cumulants.rational import format_rational, parse_rational


def _check_rows(rows, strict_rows: bool) -> None:
    lengths = [len(r) for r in rows]
    if any(n == 0 for n in lengths):
        raise ValueError("empty rows are not allowed")
    if any(a < b for a, b in zip(lengths, lengths[1:])):
        raise ValueError(f"row lengths must be weakly decreasing: {lengths}")
    for row in rows:
        for a, b in zip(row, row[1:]):
            if a > b or (strict_rows and a == b):
                raise ValueError(f"row is not increasing: {row}")
    for lower, upper in zip(rows, rows[1:]):
        for a, b in zip(lower, upper):
            if not a < b:
                raise ValueError("columns must be strictly increasing upward")


@dataclass(frozen=True)
class PoissonizedTableau:
    rows: tuple[tuple, ...] = ()

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        _check_rows(rows, strict_rows=False)
        for row in rows:
            for v in row:
                if not 0 <= v <= 1:
                    raise ValueError(f"entry {v} outside [0, 1]")

    @property
    def shape(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(r) for r in self.rows))

    def entries(self) -> list:
        return [v for row in self.rows for v in row]

    def first_row_last(self):
        return self.rows[0][-1]


@dataclass(frozen=True)
class StandardTableau:
    rows: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        _check_rows(rows, strict_rows=True)
        values = sorted(v for row in rows for v in row)
        if values != list(range(1, len(values) + 1)):
            raise ValueError("a standard tableau uses each of 1..n exactly once")

    @property
    def shape(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(r) for r in self.rows))


@dataclass(frozen=True)
class BumpingRoute:
    boxes: tuple[tuple[int, int], ...]

    @property
    def new_box(self) -> tuple[int, int]:
        return self.boxes[-1]


def _check_domain(z) -> None:
    if not 0 <= z <= 1:
        raise DomainError(f"inserted value {z} is outside [0, 1]")


def insert(tableau: PoissonizedTableau, z) -> tuple[PoissonizedTableau, BumpingRoute, tuple[int, int]]:
    """Schensted row insertion ``T <- z``.

    Returns the new tableau, the bumping route and the newly created box
    ``(row, column)``.  Equal entries are not bumped (``z`` goes to the leftmost
    entry strictly larger than itself).
    """
    _check_domain(z)
    rows = [list(r) for r in tableau.rows]
    route = []
    r = 0
    while True:
        if r == len(rows):
            rows.append([z])
            route.append((r + 1, 1))
            break
        row = rows[r]
        j = bisect_right(row, z)
        route.append((r + 1, j + 1))
        if j == len(row):
            row.append(z)
            break
        z, row[j] = row[j], z
        r += 1
    new_box = route[-1]
    return PoissonizedTableau(tuple(tuple(row) for row in rows)), BumpingRoute(tuple(route)), new_box


def rsk(word: Sequence) -> tuple[PoissonizedTableau, StandardTableau]:
    """Insertion and recording tableaux of ``word``."""
    p = PoissonizedTableau()
    q_rows: list[list[int]] = []
    for step, z in enumerate(word, start=1):
        p, _, (r, c) = insert(p, z)
        if r > len(q_rows):
            q_rows.append([])
        q_rows[r - 1].append(step)
        assert len(q_rows[r - 1]) == c
    return p, StandardTableau(tuple(tuple(row) for row in q_rows))


def _new_box_u(rows, z) -> int:
    # same walk as insert(), without mutating anything
    for r, row in enumerate(rows, start=1):
        j = bisect_right(row, z)
        if j == len(row):
            return (j + 1) - r
        z = row[j]
    return 1 - (len(rows) + 1)


def u_ins(tableau: PoissonizedTableau, z) -> int:
    """u-coordinate ``column - row`` of the box created by ``T <- z``."""
    _check_domain(z)
    return _new_box_u(tableau.rows, z)


def threshold_from_rows(rows, u0):
    """Threshold on raw row sequences; see :func:`threshold`."""
    points = sorted({v for row in rows for v in row})
    lefts = points if points and points[0] == 0 else [0] + points
    rights = lefts[1:] + [1]

    def above(i: int) -> bool:
        probe = (lefts[i] + rights[i]) / 2
        return _new_box_u(rows, probe) > u0

    lo, hi = 0, len(lefts)
    while lo < hi:
        mid = (lo + hi) // 2
        if above(mid):
            hi = mid
        else:
            lo = mid + 1
    return lefts[lo] if lo < len(lefts) else 1


def threshold(tableau: PoissonizedTableau, u0):
    """``inf{z in [0,1] : u_ins(T, z) > u0}``, and 1 when that set is empty.

    The insertion function is a non-decreasing step function of ``z`` whose
    jumps sit at entries of ``T``, so the answer is always an entry, 0 or 1.
    Each constancy interval is probed at its midpoint and the first interval
    landing strictly right of ``u0`` is located by bisection.
    """
    return threshold_from_rows(tableau.rows, u0)


def tableau_to_dict(tableau: PoissonizedTableau) -> dict:
    return {
        "shape": list(tableau.shape.rows),
        "rows": [[format_rational(Fraction(v)) for v in row] for row in tableau.rows],
    }


def tableau_from_dict(data: dict) -> PoissonizedTableau:
    rows = tuple(tuple(parse_rational(v) for v in row) for row in data["rows"])
    tableau = PoissonizedTableau(rows)
    if "shape" in data and list(tableau.shape.rows) != list(data["shape"]):
        raise ValueError(f"declared shape {data['shape']} does not match rows {list(tableau.shape.rows)}")
    return tableau


def load_tableau(path) -> PoissonizedTableau:
    with open(path) as fh:
        return tableau_from_dict(json.load(fh))


def dump_tableau(tableau: PoissonizedTableau, path) -> None:
    with open(path, "w") as fh:
        json.dump(tableau_to_dict(tableau), fh)
