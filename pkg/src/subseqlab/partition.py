"""Partition-function kernels: exact big-integer counting, log-domain streaming
DP over weighted environments, greedy embedding, skip-vector encoding, and
common-subsequence counting.

The count of strictly increasing embeddings sigma with x[sigma] = y obeys

    Z[n, m] = Z[n-1, m] + 1{x_n = y_m} * Z[n-1, m-1],      Z[n, 0] = 1,

and the weighted generalization replaces the indicator by an arbitrary
non-negative weight B[n, m].  Both DPs stream one row at a time, so memory is
O(M) regardless of N.  Zero partition functions are represented by -inf in the
log domain; numpy's logaddexp satisfies logaddexp(-inf, a) = a exactly, which
is the identity the recurrence needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

import numpy as np

from .core import BitString, Seed

NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# Weight environments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RankOneIndicator:
    """B[n, m] = 1 when x_n = y_m, else 0: the two-string embedding count."""

    x: BitString
    y: BitString

    def __post_init__(self):
        if len(self.y) > len(self.x):
            raise ValueError("invalid dimensions: |y| > |x|")

    @property
    def dims(self):
        return len(self.x), len(self.y)

    def log_weight_rows(self) -> Iterator[np.ndarray]:
        ybits = self.y.bits
        for xn in self.x.bits:
            yield np.where(ybits == xn, 0.0, NEG_INF)


@dataclass(frozen=True)
class IidBernoulliHalf:
    """Independent fair-coin 0/1 weights, the mean-field matching environment."""

    n: int
    m: int
    seed: Seed

    def __post_init__(self):
        if not 0 <= self.m <= self.n:
            raise ValueError("invalid dimensions")

    @property
    def dims(self):
        return self.n, self.m

    def log_weight_rows(self) -> Iterator[np.ndarray]:
        rng = self.seed.rng()
        for _ in range(self.n):
            coins = rng.integers(0, 2, size=self.m)
            yield np.where(coins == 1, 0.0, NEG_INF)


@dataclass(frozen=True)
class IidGamma:
    """Independent Gamma(shape, scale) weights, the exactly solvable polymer.

    shape=1, scale=1/2 gives i.i.d. Exponential weights with mean 1/2, matching
    the mean and variance of the fair-coin indicator environment.
    """

    n: int
    m: int
    shape: float
    scale: float
    seed: Seed

    def __post_init__(self):
        if not 0 <= self.m <= self.n:
            raise ValueError("invalid dimensions")
        if self.shape <= 0 or self.scale <= 0:
            raise ValueError("invalid environment: Gamma shape and scale must be positive")

    @property
    def dims(self):
        return self.n, self.m

    def log_weight_rows(self) -> Iterator[np.ndarray]:
        rng = self.seed.rng()
        for _ in range(self.n):
            yield np.log(rng.gamma(self.shape, self.scale, size=self.m))


@dataclass(frozen=True)
class ExplicitMatrix:
    """A fully materialized weight matrix, mainly for tests and tiny examples."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 2:
            raise ValueError("invalid environment: weights must be a 2-d matrix")
        if np.any(~np.isfinite(w)) or np.any(w < 0):
            raise ValueError("invalid environment: weights must be finite and non-negative")
        object.__setattr__(self, "weights", w)

    @property
    def dims(self):
        return self.weights.shape

    def log_weight_rows(self) -> Iterator[np.ndarray]:
        with np.errstate(divide="ignore"):
            for row in self.weights:
                yield np.log(row)


Environment = Union[RankOneIndicator, IidBernoulliHalf, IidGamma, ExplicitMatrix]


class LogDPTable:
    """One streaming row of log partition values log Z[n, m] for m = 0..M.

    Entry 0 stays at log 1 = 0 (the empty embedding); -inf encodes Z = 0.
    """

    def __init__(self, m: int):
        self.row = np.full(m + 1, NEG_INF)
        self.row[0] = 0.0
        self.row_index = 0

    def advance(self, log_weights: np.ndarray) -> None:
        # RHS is evaluated before assignment, so row[:-1] is the previous row.
        self.row[1:] = np.logaddexp(self.row[1:], log_weights + self.row[:-1])
        self.row_index += 1

    @property
    def value(self) -> float:
        return float(self.row[-1])


def _log_count_rank_one(x: BitString, y: BitString) -> float:
    # Same recurrence as LogDPTable.advance, but the indicator weights make the
    # update a gather/scatter on the positions of each bit value in y, and
    # entries beyond the current row index are unreachable.  O(M) memory.
    m = len(y)
    row = np.full(m + 1, NEG_INF)
    row[0] = 0.0
    ybits = y.bits
    idx_for = (np.flatnonzero(ybits == 0), np.flatnonzero(ybits == 1))
    for n, bit in enumerate(x.bits):
        idx = idx_for[bit]
        if idx.size == 0 or idx[0] > n:
            continue
        if idx[-1] > n:
            idx = idx[: np.searchsorted(idx, n + 1)]
        row[idx + 1] = np.logaddexp(row[idx + 1], row[idx])
    return float(row[m])


def log_count_embeddings(env: Environment) -> float:
    """log Z for a weight environment, streamed in O(M) memory; -inf iff Z = 0."""
    if isinstance(env, RankOneIndicator):
        return _log_count_rank_one(env.x, env.y)
    n, m = env.dims
    table = LogDPTable(m)
    for log_row in env.log_weight_rows():
        table.advance(log_row)
    if table.row_index != n:
        raise ValueError("environment yielded the wrong number of rows")
    return table.value


def count_embeddings_exact(x: BitString, y: BitString):
    """Exact number of strictly increasing embeddings of y into x, as a Python int."""
    n, m = len(x), len(y)
    if m > n:
        raise ValueError(f"invalid dimensions: |y|={m} > |x|={n}")
    row = [0] * (m + 1)
    row[0] = 1
    xb, yb = x.bits, y.bits
    for i in range(n):
        xi = xb[i]
        top = min(i + 1, m)
        for j in range(top, 0, -1):
            if yb[j - 1] == xi:
                row[j] += row[j - 1]
    return row[m]


def greedy_embed(x: BitString, y: BitString) -> Optional[np.ndarray]:
    """Leftmost embedding of y into x, or None when y is not a subsequence.

    None happens exactly when the embedding count is zero: any embedding sits
    weakly to the right of the greedy one at every step.
    """
    xb, yb = x.bits, y.bits
    out = np.empty(len(y), dtype=np.int64)
    t = 0
    n = len(x)
    for i, bit in enumerate(yb):
        while t < n and xb[t] != bit:
            t += 1
        if t == n:
            return None
        out[i] = t
        t += 1
    return out


@dataclass(frozen=True)
class SkipVector:
    """Per-position skip counts relative to the greedy embedding."""

    skips: tuple

    @property
    def total(self) -> int:
        return sum(self.skips)


def _validate_embedding(x: BitString, y: BitString, sigma) -> np.ndarray:
    sig = np.asarray(sigma, dtype=np.int64)
    if sig.size != len(y):
        raise ValueError("invalid embedding: wrong length")
    if sig.size and (sig[0] < 0 or sig[-1] >= len(x) or np.any(np.diff(sig) <= 0)):
        raise ValueError("invalid embedding: indices must be strictly increasing within x")
    if sig.size and np.any(x.bits[sig] != y.bits):
        raise ValueError("invalid embedding: x[sigma] != y")
    return sig


def skip_vector_of(x: BitString, y: BitString, sigma) -> SkipVector:
    """Injective encoding of an embedding: entry i counts the occurrences of
    y_i that sigma passes over beyond the earliest available one."""
    sig = _validate_embedding(x, y, sigma)
    xb = x.bits
    n = len(x)
    # next_occ[b][t] = least index >= t holding bit b, n when none.
    next_occ = np.full((2, n + 1), n, dtype=np.int64)
    for t in range(n - 1, -1, -1):
        next_occ[0, t] = t if xb[t] == 0 else next_occ[0, t + 1]
        next_occ[1, t] = t if xb[t] == 1 else next_occ[1, t + 1]
    # prefix_occ[b][t] = number of positions < t holding bit b.
    prefix_occ = np.zeros((2, n + 1), dtype=np.int64)
    prefix_occ[0, 1:] = np.cumsum(xb == 0)
    prefix_occ[1, 1:] = np.cumsum(xb == 1)
    skips = []
    prev = -1
    for i, bit in enumerate(y.bits):
        earliest = next_occ[bit, prev + 1]
        chosen = sig[i]
        skips.append(int(prefix_occ[bit, chosen + 1] - prefix_occ[bit, earliest + 1]))
        prev = chosen
    return SkipVector(tuple(skips))


def embedding_from_skips(x: BitString, y: BitString, v: SkipVector) -> Optional[np.ndarray]:
    """Positional simulation inverting skip_vector_of; None when v is not
    realizable within |x|."""
    if len(v.skips) != len(y):
        raise ValueError("skip vector length must equal |y|")
    xb = x.bits
    n = len(x)
    out = np.empty(len(y), dtype=np.int64)
    t = 0
    for i, bit in enumerate(y.bits):
        remaining = v.skips[i]
        pos = -1
        while t < n:
            if xb[t] == bit:
                if remaining == 0:
                    pos = t
                    t += 1
                    break
                remaining -= 1
            t += 1
        if pos < 0:
            return None
        out[i] = pos
    return out


def count_common_subsequences(x1: BitString, x2: BitString, m: int):
    """Number of pairs (sigma1, sigma2) of length-m embeddings into x1 and x2
    with x1[sigma1] = x2[sigma2], by the inclusion-exclusion recurrence

        Z[i,j,k] = Z[i-1,j,k] + Z[i,j-1,k] - Z[i-1,j-1,k]
                   + 1{x1_i = x2_j} * Z[i-1,j-1,k-1].

    Exact big integers; two (|x2|+1) x (m+1) planes, O(N1*N2*M) time, so this
    is a desk-scale oracle, not a large-N kernel.
    """
    n1, n2 = len(x1), len(x2)
    if m < 0 or m > min(n1, n2):
        raise ValueError(f"invalid dimensions: need 0 <= m <= min({n1}, {n2})")
    width = m + 1
    prev = [[1] + [0] * m for _ in range(n2 + 1)]
    for i in range(1, n1 + 1):
        cur = [[1] + [0] * m for _ in range(n2 + 1)]
        b1 = x1.bits[i - 1]
        for j in range(1, n2 + 1):
            match = b1 == x2.bits[j - 1]
            row = cur[j]
            pj, cj, pj1 = prev[j], cur[j - 1], prev[j - 1]
            for k in range(1, width):
                val = pj[k] + cj[k] - pj1[k]
                if match:
                    val += pj1[k - 1]
                row[k] = val
        prev = cur
    return prev[n2][m]


def lcs_length(x1: BitString, x2: BitString) -> int:
    """Length of the longest common subsequence (classic quadratic DP)."""
    n2 = len(x2)
    row = [0] * (n2 + 1)
    for b1 in x1.bits:
        diag = 0
        for j in range(1, n2 + 1):
            up = row[j]
            if x2.bits[j - 1] == b1:
                row[j] = diag + 1
            elif row[j - 1] > row[j]:
                row[j] = row[j - 1]
            diag = up
    return row[n2]
