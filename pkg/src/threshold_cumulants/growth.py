"""Exact Plancherel growth-process computations.

The moment oracle enumerates growth paths directly, so it shares nothing with
the tree formula beyond the transition measure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterator, Sequence

from threshold_cumulants.diagrams import (
    TransitionMeasure,
    YoungDiagram,
    as_diagram,
    corner_profile,
    falling_cauchy,
    transition_measure,
)
from threshold_cumulants.errors import ConditionXViolation, NotACorner, ZeroDenominator


@dataclass(frozen=True)
class GrowthPath:
    diagrams: tuple[YoungDiagram, ...]
    u_coords: tuple[int, ...]


@lru_cache(maxsize=None)
def _measure(rows: tuple[int, ...]) -> TransitionMeasure:
    return transition_measure(YoungDiagram(rows))


def add_box_at(shape, u: int) -> YoungDiagram:
    lam = as_diagram(shape)
    for r, c in lam.addable_boxes():
        if c - r == u:
            rows = list(lam.rows)
            if r > len(rows):
                rows.append(1)
            else:
                rows[r - 1] += 1
            return YoungDiagram(tuple(rows))
    raise NotACorner(f"u = {u} is not a concave corner of {lam.rows}")


def grow(shape, u_seq: Sequence[int]) -> GrowthPath:
    """Follow ``u_seq`` from ``shape``; raises NotACorner on an impossible step."""
    lam = as_diagram(shape)
    diagrams = [lam]
    for u in u_seq:
        lam = add_box_at(lam, u)
        diagrams.append(lam)
    return GrowthPath(tuple(diagrams), tuple(u_seq))


def path_probability(shape, u_seq: Sequence[int]) -> Fraction:
    """Probability that the growth process from ``shape`` adds boxes at ``u_seq``."""
    rows = as_diagram(shape).rows
    prob = Fraction(1)
    for u in u_seq:
        p = _measure(rows).mass(u)
        if p == 0:
            return Fraction(0)
        prob *= p
        rows = add_box_at(rows, u).rows
    return prob


def moment_oracle(shape, u0, k: int) -> Fraction:
    """``k! * P(u0 >= U_1 > U_2 > ... > U_k)`` by exhaustive path enumeration."""
    if k < 1:
        raise ValueError("k must be positive")
    u0 = Fraction(u0)

    def walk(rows: tuple[int, ...], bound, depth: int) -> Fraction:
        if depth == k:
            return Fraction(1)
        total = Fraction(0)
        for x, p in _measure(rows).items():
            if x <= bound:
                total += p * walk(add_box_at(rows, int(x)).rows, x - 1, depth + 1)
        return total

    return factorial(k) * walk(as_diagram(shape).rows, u0, 0)


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """All compositions of ``n`` (ordered tuples of positive parts)."""
    for cuts in range(n):
        for points in combinations(range(1, n), cuts):
            bounds = (0,) + points + (n,)
            yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def anti_pieri_u_sequence(x: Sequence[int], a: Sequence[int]) -> tuple[int, ...]:
    """``(x_1, x_1 - 1, ..., x_1 - a_1 + 1, x_2, ...)``."""
    return tuple(xi - m for xi, ai in zip(x, a) for m in range(ai))


def satisfies_condition_x(shape, x: Sequence[int], a: Sequence[int]) -> bool:
    """No ``x_i - m`` with ``1 <= m < a_i`` is a concave corner of ``shape``."""
    corners = set(corner_profile(shape).concave)
    return all(xi - m not in corners for xi, ai in zip(x, a) for m in range(1, ai))


def theta(x: Sequence, a: Sequence) -> Fraction:
    """Cross-ratio product over pairs ``i < j``.

    ``(x_i - x_j)(x_i - x_j - a_i + a_j) / ((x_i - x_j + a_j)(x_i - x_j - a_i))``
    """
    if len(x) != len(a):
        raise ValueError("x and a must have equal length")
    x = [Fraction(v) for v in x]
    a = [Fraction(v) for v in a]
    out = Fraction(1)
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            d = x[i] - x[j]
            den = (d + a[j]) * (d - a[i])
            if den == 0:
                raise ZeroDenominator(f"theta denominator vanishes for pair ({i + 1}, {j + 1})", edge=(i + 1, j + 1))
            out *= d * (d - a[i] + a[j]) / den
    return out


def anti_pieri_formula(shape, x: Sequence[int], a: Sequence[int]) -> Fraction:
    """Closed-form probability that the growth process follows the anti-Pieri path for ``(x, a)``.

    A vanishing falling product means the path crosses a convex corner; the
    probability is then 0 and the cross-ratio factor (which may be singular in
    that case) is not evaluated.
    """
    lam = as_diagram(shape)
    if len(x) != len(a) or any(ai < 1 for ai in a):
        raise ValueError("x and a must have equal length and a must be positive")
    if any(p <= q for p, q in zip(x, x[1:])):
        raise ValueError("x must be strictly decreasing")
    profile = corner_profile(lam)
    mu = _measure(lam.rows)
    for xi in x:
        if Fraction(xi) not in profile.concave:
            raise NotACorner(f"{xi} is not a concave corner of {lam.rows}")
    if not satisfies_condition_x(lam, x, a):
        raise ConditionXViolation(f"condition (X) fails for x={tuple(x)}, a={tuple(a)}")
    out = Fraction(1)
    for xi, ai in zip(x, a):
        factor = falling_cauchy(profile, Fraction(xi) - 1, ai - 1)
        if factor == 0:
            return Fraction(0)
        out *= Fraction((-1) ** (ai - 1), ai) * mu.mass(xi) * factor
    return theta(x, a) * out


def anti_pieri_moment(shape, u0, k: int) -> Fraction:
    """``k! * sum`` of :func:`anti_pieri_formula` over admissible ``(x, a)``.

    Sums over compositions ``a`` of ``k`` and strictly decreasing tuples of
    small concave corners that satisfy condition (X).
    """
    lam = as_diagram(shape)
    u0 = Fraction(u0)
    small = sorted((int(x) for x in corner_profile(lam).concave if x <= u0), reverse=True)
    total = Fraction(0)
    for a in compositions(k):
        for x in combinations(small, len(a)):
            if satisfies_condition_x(lam, x, a):
                total += anti_pieri_formula(lam, x, a)
    return factorial(k) * total
