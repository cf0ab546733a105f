"""Exact evaluation of the tree, caterpillar and interlacing-moment formulas.

Every quantity is a ``Fraction``; the only source of numbers is the transition
measure of the profile (its atoms and masses).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial, prod
from typing import Iterator, Optional, Sequence

from threshold_cumulants.diagrams import (
    as_diagram,
    as_profile,
    falling_cauchy,
    g_plus,
    perturb,
    transition_measure,
)
from threshold_cumulants.errors import GenericityViolation, SubsetSumZero, ZeroDenominator
from threshold_cumulants.graphs import (
    ColoredDigraph,
    decorations,
    enumerate_caterpillars,
    enumerate_multispines,
    enumerate_nca_trees,
    eval_f,
    is_decoration,
)
from threshold_cumulants.growth import compositions, moment_oracle, theta
from threshold_cumulants.rational import format_rational

__all__ = [
    "CumulantReport",
    "RegularizationReport",
    "SetPartition",
    "cauchy_determinant",
    "cumulant_bound_check",
    "cumulant_caterpillar_formula",
    "cumulant_report",
    "cumulant_tree_formula",
    "cumulants_to_moments",
    "determinant",
    "frak_C",
    "frak_T",
    "moment_interlacing",
    "moments_to_cumulants",
    "regularized_moment_limit_check",
    "restricted_growth_strings",
    "set_partitions",
    "theta",
    "theta_via_multispines",
]


# --- cross-ratio product and its multi-spine expansion -----------------------------


def multispine_beta(paths: Sequence[Sequence[int]], a: Sequence) -> Fraction:
    """``(-1)^n prod(a) / prod over components of (-sum of a over the component)``."""
    n = sum(len(p) for p in paths)
    den = Fraction(1)
    for p in paths:
        s = sum(Fraction(a[v - 1]) for v in p)
        if s == 0:
            raise SubsetSumZero(f"entries of a over component {tuple(p)} sum to zero")
        den *= -s
    return (-1) ** n * prod((Fraction(v) for v in a), start=Fraction(1)) / den


def theta_via_multispines(x: Sequence, a: Sequence) -> Fraction:
    """Expand the cross-ratio product as a sum over multi-spine graphs.

    Each path edge ``(i, j)`` contributes the factor ``1 / (x_j - x_i + a_i)``.
    """
    if len(x) != len(a):
        raise ValueError("x and a must have equal length")
    x = [Fraction(v) for v in x]
    a = [Fraction(v) for v in a]
    n = len(x)
    for k in range(1, n + 1):
        for sub in combinations(a, k):
            if sum(sub) == 0:
                raise SubsetSumZero(f"the subsequence {sub} of a sums to zero")
    total = Fraction(0)
    for paths in enumerate_multispines(n):
        den = Fraction(1)
        for p in paths:
            for i, j in zip(p, p[1:]):
                factor = x[j - 1] - x[i - 1] + a[i - 1]
                if factor == 0:
                    raise ZeroDenominator(f"spine edge ({i}, {j}) has a vanishing factor", edge=(i, j))
                den *= factor
        total += multispine_beta(paths, a) / den
    return total


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    m = [[Fraction(v) for v in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def cauchy_determinant(x: Sequence, z: Sequence) -> Fraction:
    """Product formula for ``det[1 / (x_i - z_j)]``."""
    if len(x) != len(z):
        raise ValueError("x and z must have equal length")
    x = [Fraction(v) for v in x]
    z = [Fraction(v) for v in z]
    n = len(x)
    den = Fraction(1)
    for i in range(n):
        for j in range(n):
            d = x[j] - z[i]
            if d == 0:
                raise ZeroDenominator(f"x_{j + 1} equals z_{i + 1}", edge=(i + 1, j + 1))
            den *= d
    num = prod(((x[i] - x[j]) * (z[j] - z[i]) for i in range(n) for j in range(i + 1, n)), start=Fraction(1))
    return num / den


# --- cumulant formulas ------------------------------------------------------------


def _signed_decorated_sum(graphs: Sequence[ColoredDigraph], profile, u0, n: int) -> Fraction:
    mu = transition_measure(profile)
    mass = dict(mu.items())
    total = Fraction(0)
    for g in graphs:
        sign = (-1) ** (len(g.black) - 1)
        for x in decorations(g, mu.atoms, u0):
            total += sign * eval_f(g, x) * prod(mass[v] for v in x)
    return factorial(n - 1) * total


def cumulant_tree_formula(profile, u0, n: int) -> Fraction:
    """n-th cumulant of the threshold via non-crossing alternating trees.

    ``profile`` is a Young diagram (or anything :func:`as_profile` accepts).
    Cost is ``sum over trees of #small**|black| * #big**|white|`` terms.
    """
    if n < 1:
        raise ValueError("order must be positive")
    return _signed_decorated_sum(enumerate_nca_trees(n), as_profile(profile), Fraction(u0), n)


def cumulant_caterpillar_formula(profile, u0, n: int) -> Fraction:
    """Same cumulant as a sum over labelled caterpillars (red vertices take any atom).

    Only well defined for generic profiles; raises ZeroDenominator otherwise.
    """
    if n < 1:
        raise ValueError("order must be positive")
    return _signed_decorated_sum(enumerate_caterpillars(n), as_profile(profile), Fraction(u0), n)


def _frak(graphs: Sequence[ColoredDigraph], x: Sequence, u0) -> Fraction:
    x = [Fraction(v) for v in x]
    u0 = Fraction(u0)
    total = Fraction(0)
    for g in graphs:
        if is_decoration(g, x, u0):
            total += (-1) ** len(g.black) * eval_f(g, x)
    return total


def frak_T(x: Sequence, u0) -> Fraction:
    """Signed sum of ``f_T(x)`` over the trees for which ``x`` is a decoration."""
    return _frak(enumerate_nca_trees(len(x)), x, u0)


def frak_C(x: Sequence, u0) -> Fraction:
    """Signed sum of ``f_C(x)`` over the labelled caterpillars for which ``x`` is a decoration."""
    return _frak(enumerate_caterpillars(len(x)), x, u0)


# --- moments of interlacing sequences ---------------------------------------------


def moment_interlacing(profile, u0, n: int) -> Fraction:
    """Moment-like sum over compositions and decreasing small-atom tuples.

    Requires generic concave corners (no two differ by an integer).
    """
    lam = as_profile(profile)
    if not lam.is_generic():
        raise GenericityViolation(f"concave corners {lam.concave} contain an integer difference")
    u0 = Fraction(u0)
    mu = transition_measure(lam)
    mass = dict(mu.items())
    small = sorted(mu.small_atoms(u0), reverse=True)
    total = Fraction(0)
    for a in compositions(n):
        for x in combinations(small, len(a)):
            term = theta(x, a)
            for xi, ai in zip(x, a):
                term *= Fraction((-1) ** (ai - 1), ai) * mass[xi] * falling_cauchy(lam, xi - 1, ai - 1)
            total += term
    return factorial(n) * total


@dataclass(frozen=True)
class RegularizationReport:
    shape: tuple[int, ...]
    u0: Fraction
    order: int
    eps: tuple[Fraction, ...]
    target: Fraction
    values: tuple[Fraction, ...]
    gaps: tuple[Fraction, ...]
    passed: bool

    @property
    def final_relative_gap(self) -> Fraction:
        return self.gaps[-1] / abs(self.target) if self.target else self.gaps[-1]


def regularized_moment_limit_check(shape, u0, n: int, eps_list: Sequence) -> RegularizationReport:
    """Compare the regularized interlacing moments against the growth-process moment.

    Passes when the gaps decrease strictly along ``eps_list`` and the last
    relative gap is below 1e-2, or when every gap is exactly zero.
    """
    lam = as_diagram(shape)
    u0 = Fraction(u0)
    if u0.denominator == 1:
        raise ValueError("u0 must not be an integer")
    eps = tuple(Fraction(e) for e in eps_list)
    if any(e <= 0 for e in eps):
        raise GenericityViolation("every eps must be positive")
    target = moment_oracle(lam, u0, n)
    values = tuple(moment_interlacing(perturb(lam, e), u0, n) for e in eps)
    gaps = tuple(abs(v - target) for v in values)
    # identically zero gaps (e.g. u0 above every atom) mean the limit is attained exactly
    exact = all(g == 0 for g in gaps)
    decreasing = all(p > q for p, q in zip(gaps, gaps[1:]))
    rel = gaps[-1] / abs(target) if target else gaps[-1]
    return RegularizationReport(lam.rows, u0, n, eps, target, values, gaps, exact or (decreasing and rel < Fraction(1, 100)))


# --- moments and cumulants --------------------------------------------------------


@dataclass(frozen=True)
class SetPartition:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        object.__setattr__(self, "blocks", blocks)
        items = [v for b in blocks for v in b]
        if any(not b for b in blocks) or len(items) != len(set(items)):
            raise ValueError("blocks must be nonempty and disjoint")
        if sorted(items) != list(range(1, len(items) + 1)):
            raise ValueError("blocks must cover 1..n")

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """Strings ``s`` with ``s[0] = 0`` and ``s[i] <= 1 + max(s[:i])``."""
    if n == 0:
        yield ()
        return

    def rec(prefix: list[int], top: int):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            prefix.append(v)
            yield from rec(prefix, max(top, v))
            prefix.pop()

    yield from rec([0], 0)


def set_partitions(n: int) -> Iterator[SetPartition]:
    for s in restricted_growth_strings(n):
        blocks: dict[int, list[int]] = {}
        for i, b in enumerate(s, start=1):
            blocks.setdefault(b, []).append(i)
        yield SetPartition(tuple(tuple(v) for v in blocks.values()))


@lru_cache(maxsize=None)
def _block_type_counts(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    counts = Counter(tuple(sorted(p.block_sizes)) for p in set_partitions(n))
    return tuple(sorted(counts.items()))


def cumulants_to_moments(kappa: Sequence) -> list[Fraction]:
    """``m_n = sum over set partitions of prod kappa_{|block|}`` (lists are 1-indexed by position)."""
    k = [Fraction(v) for v in kappa]
    return [
        sum((c * prod(k[s - 1] for s in sizes) for sizes, c in _block_type_counts(n)), start=Fraction(0))
        for n in range(1, len(k) + 1)
    ]


def moments_to_cumulants(moments: Sequence) -> list[Fraction]:
    """Invert :func:`cumulants_to_moments` by solving the triangular system order by order."""
    m = [Fraction(v) for v in moments]
    k: list[Fraction] = []
    for n in range(1, len(m) + 1):
        rest = Fraction(0)
        for sizes, c in _block_type_counts(n):
            if sizes == (n,):
                continue
            rest += c * prod(k[s - 1] for s in sizes)
        k.append(m[n - 1] - rest)
    return k


def cumulant_bound_check(shape, u0, n: int) -> tuple[Fraction, Fraction, bool]:
    """``(|kappa_n|, (n-1)! * G_plus(u0)^(n-1), |kappa_n| <= bound)``."""
    u0 = Fraction(u0)
    kappa = abs(cumulant_tree_formula(shape, u0, n))
    bound = factorial(n - 1) * g_plus(as_profile(shape), u0) ** (n - 1)
    return kappa, bound, kappa <= bound


@dataclass
class CumulantReport:
    shape: tuple[int, ...]
    u0: Fraction
    order: int
    cumulants: list[Fraction]
    moments: list[Fraction]
    bounds: list[Fraction]
    oracle_moments: Optional[list[Fraction]] = field(default=None)

    def __post_init__(self):
        if cumulants_to_moments(self.cumulants) != list(self.moments):
            raise ValueError("moments and cumulants are inconsistent")

    def to_dict(self) -> dict:
        out = {
            "shape": list(self.shape),
            "u0": format_rational(self.u0),
            "order": self.order,
            "cumulants": [format_rational(v) for v in self.cumulants],
            "moments": [format_rational(v) for v in self.moments],
            "bounds": [format_rational(v) for v in self.bounds],
        }
        if self.oracle_moments is not None:
            out["oracle_moments"] = [format_rational(v) for v in self.oracle_moments]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def cumulant_report(shape, u0, order: int, with_oracle: bool = False) -> CumulantReport:
    lam = as_diagram(shape)
    u0 = Fraction(u0)
    profile = as_profile(lam)
    kappas = [cumulant_tree_formula(profile, u0, n) for n in range(1, order + 1)]
    gp = g_plus(profile, u0)
    bounds = [factorial(n - 1) * gp ** (n - 1) for n in range(1, order + 1)]
    oracle = [moment_oracle(lam, u0, n) for n in range(1, order + 1)] if with_oracle else None
    return CumulantReport(lam.rows, u0, order, kappas, cumulants_to_moments(kappas), bounds, oracle)
