"""Colored weighted digraphs: non-crossing alternating trees, caterpillars, spines.

Vertices are labelled ``1..n``.  Decorations are tuples indexed by ``vertex - 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import chain, combinations, permutations, product
from typing import Iterator, Sequence

from threshold_cumulants.errors import ZeroDenominator
from threshold_cumulants.rational import format_rational, parse_rational

BLACK, RED, WHITE = "black", "red", "white"
COLORS = (BLACK, RED, WHITE)


@dataclass(frozen=True)
class ColoredDigraph:
    n: int
    colors: tuple[str, ...]
    edges: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        colors = tuple(self.colors)
        edges = tuple((int(i), int(j), Fraction(w)) for i, j, w in self.edges)
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "edges", edges)
        if len(colors) != self.n:
            raise ValueError(f"expected {self.n} colors, got {len(colors)}")
        if any(c not in COLORS for c in colors):
            raise ValueError(f"unknown color in {colors}")
        seen = set()
        for i, j, _ in edges:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge ({i}, {j}) leaves the vertex set")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            if i != j and (j, i) in seen:
                raise ValueError(f"edges ({j}, {i}) and ({i}, {j}) are both present")
            seen.add((i, j))

    def color(self, v: int) -> str:
        return self.colors[v - 1]

    def vertices_of(self, color: str) -> list[int]:
        return [v for v in range(1, self.n + 1) if self.colors[v - 1] == color]

    @property
    def black(self) -> list[int]:
        return self.vertices_of(BLACK)

    @property
    def white(self) -> list[int]:
        return self.vertices_of(WHITE)

    @property
    def red(self) -> list[int]:
        return self.vertices_of(RED)

    def edge_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j, _ in self.edges]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "colors": list(self.colors),
            "edges": [[i, j, format_rational(w)] for i, j, w in self.edges],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ColoredDigraph":
        return cls(data["n"], tuple(data["colors"]), tuple((i, j, parse_rational(w)) for i, j, w in data["edges"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def labelled(n: int, colors: Sequence[str], pairs: Sequence[tuple[int, int]]) -> ColoredDigraph:
    """Graph whose edge weights follow the labelling convention ``weight(i, j) = j - i``."""
    return ColoredDigraph(n, tuple(colors), tuple(sorted((i, j, Fraction(j - i)) for i, j in pairs)))


def disjoint_union(g: ColoredDigraph, h: ColoredDigraph) -> ColoredDigraph:
    shift = g.n
    return ColoredDigraph(
        g.n + h.n,
        g.colors + h.colors,
        g.edges + tuple((i + shift, j + shift, w) for i, j, w in h.edges),
    )


# --- non-crossing alternating trees -------------------------------------------------


@lru_cache(maxsize=None)
def _nca_edge_sets(lo: int, hi: int) -> tuple[tuple[frozenset, tuple[tuple[int, int], ...]], ...]:
    """Trees on ``{lo..hi}`` as ``(white vertices, edges)``.

    Splits on the edge joining the leftmost and rightmost vertex: the rest is
    a tree on ``{lo..i-1}`` and a tree on ``{i..hi}``.  A singleton right part
    is a black one-vertex tree that turns white once attached.
    """
    if lo == hi:
        return ((frozenset(), ()),)
    out = []
    for i in range(lo + 1, hi + 1):
        for left_white, left_edges in _nca_edge_sets(lo, i - 1):
            for right_white, right_edges in _nca_edge_sets(i, hi):
                white = left_white | right_white | {hi}
                out.append((frozenset(white), ((lo, hi),) + left_edges + right_edges))
    return tuple(out)


def enumerate_nca_trees(n: int) -> list[ColoredDigraph]:
    """All non-crossing alternating trees on ``1..n``; there are Catalan(n-1) of them."""
    if n < 1:
        raise ValueError("n must be positive")
    trees = []
    for white, edges in _nca_edge_sets(1, n):
        colors = [WHITE if v in white else BLACK for v in range(1, n + 1)]
        trees.append(labelled(n, colors, edges))
    return trees


def is_tree(g: ColoredDigraph) -> bool:
    if len(g.edges) != g.n - 1:
        return False
    parent = list(range(g.n + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j in g.edge_pairs():
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


def is_alternating(g: ColoredDigraph) -> bool:
    if g.n == 1:
        return g.colors == (BLACK,)
    if any(c == RED for c in g.colors):
        return False
    return all(i < j and g.color(i) == BLACK and g.color(j) == WHITE for i, j in g.edge_pairs())


def is_non_crossing(g: ColoredDigraph) -> bool:
    arcs = [tuple(sorted(e)) for e in g.edge_pairs()]
    for (a, b), (c, d) in combinations(arcs, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


# --- labelled caterpillars ---------------------------------------------------------


def caterpillar(n: int, black: Sequence[int]) -> ColoredDigraph:
    """The labelled caterpillar on ``1..n`` with black vertex set ``black`` (must contain 1)."""
    bs = sorted(set(black))
    if not bs or bs[0] != 1 or bs[-1] > n:
        raise ValueError(f"black set must contain 1 and lie in 1..{n}: {black}")
    colors = [RED] * n
    for b in bs:
        colors[b - 1] = BLACK
    pairs = list(zip(bs, bs[1:]))
    for b, nxt in zip(bs, bs[1:] + [n + 1]):
        pairs.extend((b, v) for v in range(b + 1, nxt))
    return labelled(n, colors, pairs)


def enumerate_caterpillars(n: int) -> list[ColoredDigraph]:
    if n < 1:
        raise ValueError("n must be positive")
    rest = range(2, n + 1)
    subsets = chain.from_iterable(combinations(rest, k) for k in range(n))
    return [caterpillar(n, (1,) + s) for s in subsets]


# --- spines and multi-spines -------------------------------------------------------


def enumerate_spines(vertices: Sequence[int]) -> list[tuple[int, ...]]:
    """Directed paths through all of ``vertices``, as vertex orderings."""
    return list(permutations(vertices))


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """Set partitions of ``items``, blocks ordered by their first element."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def enumerate_multispines(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Forests of directed paths covering ``1..n``; each path is a vertex ordering."""
    out = []
    for blocks in set_partitions(range(1, n + 1)):
        blocks = sorted(blocks, key=min)
        for paths in product(*(permutations(b) for b in blocks)):
            out.append(tuple(paths))
    return out


# --- decorations and f_G -----------------------------------------------------------


def decorations(g: ColoredDigraph, atoms: Sequence, u0) -> Iterator[tuple[Fraction, ...]]:
    """u0-decorations: black vertices get atoms ``<= u0``, white ``> u0``, red any atom."""
    atoms = [Fraction(v) for v in atoms]
    u0 = Fraction(u0)
    small = [x for x in atoms if x <= u0]
    big = [x for x in atoms if x > u0]
    choices = {BLACK: small, WHITE: big, RED: atoms}
    return product(*(choices[c] for c in g.colors))


def eval_f(g: ColoredDigraph, x: Sequence) -> Fraction:
    """``1 / prod over edges (i, j) of (x_j - x_i + weight)``."""
    den = Fraction(1)
    for i, j, w in g.edges:
        factor = Fraction(x[j - 1]) - Fraction(x[i - 1]) + w
        if factor == 0:
            raise ZeroDenominator(f"edge ({i}, {j}) has a vanishing factor", edge=(i, j))
        den *= factor
    return 1 / den


def is_decoration(g: ColoredDigraph, x: Sequence, u0) -> bool:
    for c, v in zip(g.colors, x):
        if c == BLACK and not v <= u0:
            return False
        if c == WHITE and not v > u0:
            return False
    return True
