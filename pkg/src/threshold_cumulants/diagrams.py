"""Young diagrams, corner profiles, Cauchy transforms and transition measures.

Conventions: rows are counted bottom-up (French convention) and the box in row
``r`` and column ``c`` (both 1-based) has u-coordinate ``c - r``.  A concave
corner is identified with the u-coordinate of the box that can be added there,
a convex corner with the u-coordinate of the removable box below it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterator, Sequence, Union

from threshold_cumulants.errors import InterlacingViolation, PoleError


@dataclass(frozen=True)
class YoungDiagram:
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(r <= 0 for r in rows):
            raise ValueError(f"row lengths must be positive: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"row lengths must be weakly decreasing: {rows}")

    @classmethod
    def parse(cls, text: str) -> "YoungDiagram":
        """Parse the comma-separated format, e.g. ``"4,2,2,2"``; ``""`` is empty."""
        text = text.strip()
        if text in ("", "()", "empty"):
            return cls(())
        return cls(tuple(int(part) for part in text.split(",")))

    @classmethod
    def rectangle(cls, p: int, q: int) -> "YoungDiagram":
        """``p`` rows of length ``q``."""
        return cls((q,) * p)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __str__(self) -> str:
        return ",".join(map(str, self.rows))

    @property
    def size(self) -> int:
        return sum(self.rows)

    def row(self, r: int) -> int:
        """Length of row ``r`` (1-based); zero beyond the last row."""
        return self.rows[r - 1] if 1 <= r <= len(self.rows) else 0

    def conjugate(self) -> "YoungDiagram":
        if not self.rows:
            return self
        return YoungDiagram(tuple(sum(1 for r in self.rows if r >= c) for c in range(1, self.rows[0] + 1)))

    def boxes(self) -> Iterator[tuple[int, int]]:
        """All boxes as ``(row, column)``, row by row from the bottom."""
        for r, length in enumerate(self.rows, start=1):
            for c in range(1, length + 1):
                yield r, c

    def addable_boxes(self) -> list[tuple[int, int]]:
        out = []
        for r in range(1, len(self.rows) + 2):
            if r == 1 or self.row(r) < self.row(r - 1):
                out.append((r, self.row(r) + 1))
        return out

    def removable_boxes(self) -> list[tuple[int, int]]:
        return [(r, self.row(r)) for r in range(1, len(self.rows) + 1) if self.row(r) > self.row(r + 1)]


DiagramLike = Union[YoungDiagram, Sequence[int]]


def as_diagram(shape: DiagramLike) -> YoungDiagram:
    if isinstance(shape, YoungDiagram):
        return shape
    if isinstance(shape, str):
        return YoungDiagram.parse(shape)
    return YoungDiagram(tuple(shape))


def partitions(n: int, max_part: int | None = None) -> Iterator[YoungDiagram]:
    """All partitions of ``n`` in reverse lexicographic order."""

    def rec(remaining: int, bound: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, bound), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for rows in rec(n, n if max_part is None else max_part):
        yield YoungDiagram(rows)


def partitions_up_to(max_boxes: int, include_empty: bool = True) -> list[YoungDiagram]:
    out = []
    for n in range(0 if include_empty else 1, max_boxes + 1):
        out.extend(partitions(n))
    return out


@dataclass(frozen=True)
class InterlacingSequence:
    """Corner profile ``x_0 < y_1 < x_1 < ... < y_L < x_L``."""

    concave: tuple[Fraction, ...]
    convex: tuple[Fraction, ...]

    def __post_init__(self):
        concave = tuple(Fraction(v) for v in self.concave)
        convex = tuple(Fraction(v) for v in self.convex)
        object.__setattr__(self, "concave", concave)
        object.__setattr__(self, "convex", convex)
        if len(concave) != len(convex) + 1:
            raise InterlacingViolation(
                f"need exactly one more concave than convex corner, got {len(concave)} and {len(convex)}"
            )
        merged = [concave[0]]
        for y, x in zip(convex, concave[1:]):
            merged.extend((y, x))
        if any(a >= b for a, b in zip(merged, merged[1:])):
            raise InterlacingViolation(f"corners do not interlace strictly: {merged}")

    def is_generic(self) -> bool:
        """True when no two concave corners differ by an integer."""
        xs = self.concave
        return all((xs[j] - xs[i]).denominator != 1 for i in range(len(xs)) for j in range(i + 1, len(xs)))


def corner_profile(shape: DiagramLike) -> InterlacingSequence:
    lam = as_diagram(shape)
    concave = sorted(c - r for r, c in lam.addable_boxes())
    convex = sorted(c - r for r, c in lam.removable_boxes())
    return InterlacingSequence(tuple(concave), tuple(convex))


def as_profile(obj) -> InterlacingSequence:
    """Accept either an interlacing sequence or anything a diagram can be built from."""
    if isinstance(obj, InterlacingSequence):
        return obj
    return corner_profile(as_diagram(obj))


def cauchy_transform(profile, z) -> Fraction:
    """``prod(z - y_j) / prod(z - x_i)``, exactly."""
    lam = as_profile(profile)
    z = Fraction(z)
    if z in lam.concave:
        raise PoleError(f"G has a pole at concave corner {z}")
    return prod((z - y for y in lam.convex), start=Fraction(1)) / prod(z - x for x in lam.concave)


@dataclass(frozen=True)
class TransitionMeasure:
    atoms: tuple[Fraction, ...]
    masses: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.atoms) != len(self.masses):
            raise ValueError("atoms and masses differ in length")
        if any(a >= b for a, b in zip(self.atoms, self.atoms[1:])):
            raise ValueError("atoms must be strictly increasing")
        if any(m <= 0 for m in self.masses):
            raise ValueError("masses must be strictly positive")
        if sum(self.masses) != 1:
            raise ValueError(f"masses sum to {sum(self.masses)}, not 1")

    def mass(self, x) -> Fraction:
        try:
            return self.masses[self.atoms.index(Fraction(x))]
        except ValueError:
            return Fraction(0)

    def items(self) -> Iterator[tuple[Fraction, Fraction]]:
        return zip(self.atoms, self.masses)

    def small_atoms(self, u0) -> tuple[Fraction, ...]:
        return tuple(x for x in self.atoms if x <= u0)

    def big_atoms(self, u0) -> tuple[Fraction, ...]:
        return tuple(x for x in self.atoms if x > u0)

    def cdf(self, u0) -> Fraction:
        return sum((m for x, m in self.items() if x <= u0), start=Fraction(0))


def transition_measure(profile) -> TransitionMeasure:
    """Residues of the Cauchy transform at the concave corners."""
    lam = as_profile(profile)
    xs = lam.concave
    masses = []
    for i, x in enumerate(xs):
        num = prod((x - y for y in lam.convex), start=Fraction(1))
        den = prod((x - xk for k, xk in enumerate(xs) if k != i), start=Fraction(1))
        masses.append(num / den)
    return TransitionMeasure(xs, tuple(masses))


def falling_cauchy(profile, x, k: int) -> Fraction:
    """``G(x) G(x-1) ... G(x-k+1)``; the empty product for ``k == 0``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    lam = as_profile(profile)
    x = Fraction(x)
    out = Fraction(1)
    for r in range(k):
        out *= cauchy_transform(lam, x - r)
    return out


def g_plus(profile, u0) -> Fraction:
    """Cauchy-type transform with the regularized kernel ``1 / (|u0 - z| + 1)``."""
    u0 = Fraction(u0)
    mu = transition_measure(profile)
    return sum((m / (abs(u0 - z) + 1) for z, m in mu.items()), start=Fraction(0))


def perturb(profile, eps) -> InterlacingSequence:
    """Shift the j-th concave and j-th convex corner by ``j * eps``.

    The gap between each convex corner and the next concave corner is kept.
    Raises InterlacingViolation when the shifted corners no longer interlace.
    """
    lam = as_profile(profile)
    eps = Fraction(eps)
    concave = tuple(x + j * eps for j, x in enumerate(lam.concave))
    convex = tuple(y + j * eps for j, y in enumerate(lam.convex, start=1))
    return InterlacingSequence(concave, convex)


def hook_lengths(shape: DiagramLike) -> dict[tuple[int, int], int]:
    lam = as_diagram(shape)
    cols = lam.conjugate()
    return {(r, c): (lam.row(r) - c) + (cols.row(c) - r) + 1 for r, c in lam.boxes()}


def count_syt(shape: DiagramLike) -> int:
    """Number of standard Young tableaux of the given shape (hook length formula)."""
    lam = as_diagram(shape)
    return factorial(lam.size) // prod(hook_lengths(lam).values())

