"""Sampling random tableaux and empirical statistics of the threshold.

Randomness: numpy's PCG64 seeded through ``SeedSequence(seed, spawn_key=(stream,))``.
Work is cut into fixed-size chunks, chunk ``i`` draws from stream ``i``, and
results are concatenated in chunk order, so the output depends only on
``(seed, N)`` and never on the number of workers.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import factorial, sqrt
from typing import Callable, Sequence

import numpy as np

from threshold_cumulants.cumulants import frak_T, moments_to_cumulants
from threshold_cumulants.diagrams import YoungDiagram, as_diagram, transition_measure
from threshold_cumulants.rsk import PoissonizedTableau, StandardTableau, threshold_from_rows

CHUNK_SIZE = 4096
_BLOCK = 8192


class RngStream:
    """Buffered uniform draws from one PCG64 stream."""

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        self.generator = np.random.Generator(np.random.PCG64(seq))
        self._buf: list[float] = []
        self._pos = 0

    def uniform(self) -> float:
        if self._pos == len(self._buf):
            self._buf = self.generator.random(_BLOCK).tolist()
            self._pos = 0
        v = self._buf[self._pos]
        self._pos += 1
        return v

    def uniforms(self, k: int) -> list[float]:
        return [self.uniform() for _ in range(k)]


def _hook_walk(rows: Sequence[int], uniform: Callable[[], float]) -> list[list[int]]:
    # Greene-Nijenhuis-Wilf: place n, n-1, ..., 1 at corners reached by random hook walks
    lam = list(rows)
    cols = [sum(1 for r in rows if r > c) for c in range(rows[0])]
    syt = [[0] * length for length in rows]
    for label in range(sum(rows), 0, -1):
        while True:
            r = int(uniform() * cols[0])
            c = int(uniform() * lam[0])
            if c < lam[r]:
                break
        while True:
            arm = lam[r] - c - 1
            leg = cols[c] - r - 1
            h = arm + leg
            if h == 0:
                break
            j = int(uniform() * h)
            if j < arm:
                c += j + 1
            else:
                r += j - arm + 1
        syt[r][c] = label
        lam[r] -= 1
        cols[c] -= 1
    return syt


def _poissonized_rows(rows: Sequence[int], rng: RngStream) -> tuple[tuple[float, ...], ...]:
    syt = _hook_walk(rows, rng.uniform)
    values = sorted(rng.uniforms(sum(rows)))
    return tuple(tuple(values[label - 1] for label in row) for row in syt)


def sample_syt(shape, rng: RngStream) -> StandardTableau:
    """Uniformly random standard Young tableau via the hook walk."""
    lam = as_diagram(shape)
    if lam.size == 0:
        raise ValueError("shape must be nonempty")
    return StandardTableau(tuple(tuple(row) for row in _hook_walk(lam.rows, rng.uniform)))


def sample_poissonized(shape, rng: RngStream) -> PoissonizedTableau:
    """Uniform Poissonized tableau: sorted i.i.d. uniforms placed along a uniform SYT."""
    lam = as_diagram(shape)
    if lam.size == 0:
        raise ValueError("shape must be nonempty")
    return PoissonizedTableau(_poissonized_rows(lam.rows, rng))


# --- summaries --------------------------------------------------------------------


def _central_moments(x: np.ndarray, upto: int) -> list[float]:
    d = x - x.mean()
    return [0.0] + [float(np.mean(d**k)) for k in range(2, upto + 1)]


def k_statistics(x: np.ndarray) -> list[float]:
    """Unbiased estimators k1..k4 of the first four cumulants."""
    n = len(x)
    m = _central_moments(x, 4)
    m2, m3, m4 = m[1], m[2], m[3]
    k1 = float(x.mean())
    k2 = n / (n - 1) * m2
    k3 = n**2 / ((n - 1) * (n - 2)) * m3 if n > 2 else float("nan")
    if n > 3:
        k4 = n**2 * ((n + 1) * m4 - 3 * (n - 1) * m2**2) / ((n - 1) * (n - 2) * (n - 3))
    else:
        k4 = float("nan")
    return [k1, k2, k3, k4]


def fisher_variances(kappa: Sequence[float], n: int) -> list[float]:
    """Sampling variances of k1..k4 given population cumulants ``kappa[0..7]``."""
    c2, c3, c4, c5, c6, c8 = kappa[1], kappa[2], kappa[3], kappa[4], kappa[5], kappa[7]
    var1 = c2 / n
    var2 = c4 / n + 2 * c2**2 / (n - 1)
    var3 = c6 / n + 9 * (c2 * c4 + c3**2) / (n - 1) + 6 * n * c2**3 / ((n - 1) * (n - 2))
    var4 = (
        c8 / n
        + (16 * c2 * c6 + 48 * c3 * c5 + 34 * c4**2) / (n - 1)
        + 72 * n * (c2**2 * c4 + 2 * c2 * c3**2) / ((n - 1) * (n - 2))
        + 24 * n * (n + 1) * c2**4 / ((n - 1) * (n - 2) * (n - 3))
    )
    return [var1, var2, var3, var4]


def k_statistic_standard_errors(x: np.ndarray) -> list[float]:
    """Standard errors of k1..k4: Fisher's variances with sample cumulants plugged in."""
    n = len(x)
    if n < 4:
        return [float("nan")] * 4
    kappa = [float(v) for v in moments_to_cumulants(_central_moments(x, 8))]
    return [sqrt(max(v, 0.0)) for v in fisher_variances(kappa, n)]


@dataclass(frozen=True)
class SampleSummary:
    count: int
    mean: float
    variance: float
    skewness: float
    excess_kurtosis: float
    k_statistics: tuple[float, ...]
    standard_errors: tuple[float, ...]

    @property
    def se_mean(self) -> float:
        return self.standard_errors[0]

    @property
    def se_variance(self) -> float:
        return self.standard_errors[1]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["k_statistics"] = list(self.k_statistics)
        d["standard_errors"] = list(self.standard_errors)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def summarize(samples) -> SampleSummary:
    x = np.asarray(samples, dtype=float)
    if len(x) < 2:
        raise ValueError("need at least two samples")
    m = _central_moments(x, 4)
    m2, m3, m4 = m[1], m[2], m[3]
    ks = k_statistics(x)
    return SampleSummary(
        count=len(x),
        mean=float(x.mean()),
        variance=ks[1],
        skewness=m3 / m2**1.5 if m2 > 0 else 0.0,
        excess_kurtosis=m4 / m2**2 - 3 if m2 > 0 else 0.0,
        k_statistics=tuple(ks),
        standard_errors=tuple(k_statistic_standard_errors(x)),
    )


# --- chunked sampling -------------------------------------------------------------


def _chunk_sizes(n: int) -> list[int]:
    sizes = [CHUNK_SIZE] * (n // CHUNK_SIZE)
    if n % CHUNK_SIZE:
        sizes.append(n % CHUNK_SIZE)
    return sizes


def _run_chunks(worker, args: tuple, n: int, seed: int, threads: int) -> np.ndarray:
    jobs = [(size, seed, i) + args for i, size in enumerate(_chunk_sizes(n))]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(worker, *zip(*jobs)))
    else:
        parts = [worker(*job) for job in jobs]
    return np.concatenate(parts) if parts else np.empty(0)


def _threshold_chunk(size: int, seed: int, stream: int, rows: tuple[int, ...], u0: Fraction) -> np.ndarray:
    rng = RngStream(seed, stream)
    return np.array([float(threshold_from_rows(_poissonized_rows(rows, rng), u0)) for _ in range(size)])


def sample_thresholds(shape, u0, n: int, seed: int, threads: int = 1) -> np.ndarray:
    """``n`` independent draws of the threshold for uniform Poissonized tableaux of ``shape``."""
    lam = as_diagram(shape)
    if lam.size == 0:
        raise ValueError("shape must be nonempty")
    return _run_chunks(_threshold_chunk, (lam.rows, Fraction(u0)), n, seed, threads)


def estimate_threshold(shape, u0, n: int, seed: int, threads: int = 1) -> SampleSummary:
    if n < 2:
        raise ValueError("need at least two samples")
    return summarize(sample_thresholds(shape, u0, n, seed, threads))


def z_table(shape, u0, order: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...], np.ndarray]:
    """Atoms, masses and the exact Z value for every tuple of atom indices."""
    mu = transition_measure(shape)
    atoms = mu.atoms
    k = len(atoms)
    table = np.empty((k,) * order)
    scale = -factorial(order - 1)
    for idx in np.ndindex(*table.shape):
        table[idx] = float(scale * frak_T([atoms[i] for i in idx], u0))
    return atoms, mu.masses, table


def _z_chunk(size: int, seed: int, stream: int, masses: tuple[float, ...], table: np.ndarray) -> np.ndarray:
    gen = RngStream(seed, stream).generator
    order = table.ndim
    idx = gen.choice(len(masses), size=(size, order), p=masses)
    return table[tuple(idx.T)]


def sample_z(shape, u0, order: int, n: int, seed: int, threads: int = 1) -> np.ndarray:
    if order < 1:
        raise ValueError("order must be positive")
    _, masses, table = z_table(shape, Fraction(u0), order)
    p = np.array([float(m) for m in masses])
    p /= p.sum()
    return _run_chunks(_z_chunk, (tuple(p), table), n, seed, threads)


def estimate_Z(shape, u0, order: int, n: int, seed: int, threads: int = 1) -> SampleSummary:
    """Sample mean of Z estimates the ``order``-th cumulant of the threshold."""
    return summarize(sample_z(shape, u0, order, n, seed, threads))


@dataclass(frozen=True)
class RectangleResult:
    p: int
    q: int
    samples: np.ndarray
    summary: SampleSummary
    sigma2_alpha: float
    exact_mean: Fraction
    exact_variance: Fraction

    @property
    def exact_variance_y(self) -> float:
        """Variance of the scaled corner at this finite size: ``sqrt(pq) * Var(corner)``."""
        return sqrt(self.p * self.q) * float(self.exact_variance)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "summary": self.summary.to_dict(),
            "sigma2_alpha": self.sigma2_alpha,
            "exact_corner_mean": f"{self.exact_mean.numerator}/{self.exact_mean.denominator}",
            "exact_corner_variance": f"{self.exact_variance.numerator}/{self.exact_variance.denominator}",
            "exact_variance_y": self.exact_variance_y,
        }


def _corner_chunk(size: int, seed: int, stream: int, rows: tuple[int, ...]) -> np.ndarray:
    rng = RngStream(seed, stream)
    return np.array([_poissonized_rows(rows, rng)[0][-1] for _ in range(size)])


def rectangle_experiment(p: int, q: int, n: int, seed: int, threads: int = 1) -> RectangleResult:
    """Scaled last entry of the first row, ``(pq)^(1/4) * (corner - q/(p+q))``, for ``p x q`` tableaux."""
    if p < 1 or q < 1 or n < 2:
        raise ValueError("need p, q >= 1 and at least two samples")
    rows = YoungDiagram.rectangle(p, q).rows
    corners = _run_chunks(_corner_chunk, (rows,), n, seed, threads)
    alpha = Fraction(q, p + q)
    y = (p * q) ** 0.25 * (corners - float(alpha))
    exact_var = alpha * Fraction(p, p + q) / (p + q + 1)
    return RectangleResult(
        p, q, y, summarize(y), float(alpha * (1 - alpha)) ** 1.5, alpha, exact_var
    )
