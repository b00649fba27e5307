"""Block-alignment statistics between an ambient string and a candidate
subsequence: displacement, local alignment, exact DP optimization of the two
total-alignment scores, the standardization map between the two partition
families, and good-set membership.

An ambient x of length B*b is cut into B fixed blocks of length b.  A
partition of y into B ordered blocks (lengths 0..b) is

  * induced     when at most floor(gamma*B) block lengths fall outside
                [(1-delta)*alpha*b, (1+delta)*alpha*b],
  * standardized when at most floor(3*gamma*B) block lengths differ from the
                per-index rounding of alpha*b,

with delta = b^(-1/2+eps) and gamma = b^(-eps).  The local alignment of block
i is 0 when the block majorities disagree (ties count as majority 1) and
min(1, delta * displacement(y-block)) otherwise, which collapses to the single
expression clip(delta * s_i * d, 0, 1) for the x-block majority sign s_i and
the y-block bit-sum difference d.  Total alignment is the exact supremum of
the average local alignment over the partition family, found by dynamic
programming over (consumed prefix, number of conforming blocks).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .capacity import beta_star
from .core import BitString, Seed, sample_planted, sample_uniform_string, is_typical

NEG_INF = float("-inf")
_FUZZ = 1e-9  # guards floor/ceil of products like alpha*b against float dust


@dataclass(frozen=True)
class AlignmentParams:
    """Window and budget parameters for one (ambient length, block length) pair.

    epsilon defaults to 1/24; overriding it is how tests reach parameter
    regimes where the budgets actually bind at desk scale.
    """

    alpha: float
    b: int
    n: int
    epsilon: float = 1.0 / 24.0

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.b < 1 or self.n < self.b:
            raise ValueError("need 1 <= b <= n")
        if not 0 < self.epsilon <= 0.5:
            raise ValueError("epsilon must lie in (0, 1/2]")
        if self.delta * self.alpha * self.b < 1:
            warnings.warn(
                f"delta*alpha*b = {self.delta * self.alpha * self.b:.3g} < 1: "
                "alignment windows are degenerate at these parameters"
            )

    @property
    def delta(self) -> float:
        return self.b ** (-0.5 + self.epsilon)

    @property
    def gamma(self) -> float:
        return self.b ** (-self.epsilon)

    @property
    def big_b(self) -> int:
        return self.n // self.b

    @property
    def beta_star(self) -> float:
        return beta_star(self.alpha)

    @property
    def induced_budget(self) -> int:
        return int(math.floor(self.gamma * self.big_b + _FUZZ))

    @property
    def standardized_budget(self) -> int:
        return int(math.floor(3.0 * self.gamma * self.big_b + _FUZZ))

    @property
    def scan_cap(self) -> int:
        # Longest run of conforming blocks the standardization pass reads
        # before forcing a stop ("counter capped at b^epsilon").
        return max(1, int(math.floor(self.b**self.epsilon + _FUZZ)))

    def in_window(self, length: int) -> bool:
        ab = self.alpha * self.b
        return (1.0 - self.delta) * ab - _FUZZ <= length <= (1.0 + self.delta) * ab + _FUZZ

    def window_ints(self):
        """Smallest and largest in-window integer lengths, clipped to [0, b]."""
        ab = self.alpha * self.b
        lo = max(0, int(math.ceil((1.0 - self.delta) * ab - _FUZZ)))
        hi = min(self.b, int(math.floor((1.0 + self.delta) * ab + _FUZZ)))
        return lo, hi

    def std_targets(self) -> np.ndarray:
        """Per-index block-length targets: the rounding of alpha*b whose prefix
        sums stay within 1 of alpha*b*k."""
        ab = self.alpha * self.b
        cum = np.floor(ab * np.arange(self.big_b + 1) + _FUZZ).astype(np.int64)
        return np.diff(cum)


def displacement(z: BitString) -> int:
    """|#ones - #zeros| of the string."""
    return abs(2 * int(z.bits.sum(dtype=np.int64)) - len(z))


def _majority(z: BitString) -> int:
    # Majority bit with ties resolved to 1.
    return 1 if 2 * int(z.bits.sum(dtype=np.int64)) >= len(z) else 0


def local_alignment(x_block: BitString, y_block: BitString, delta: float) -> float:
    """0 on majority mismatch, else min(1, delta * displacement(y_block))."""
    if _majority(x_block) != _majority(y_block):
        return 0.0
    return min(1.0, delta * displacement(y_block))


@dataclass(frozen=True)
class Partition:
    """Ordered block lengths of a partition of y; offsets are the prefix sums."""

    block_lengths: tuple

    def __post_init__(self):
        lens = tuple(int(v) for v in self.block_lengths)
        if any(v < 0 for v in lens):
            raise ValueError("block lengths must be non-negative")
        object.__setattr__(self, "block_lengths", lens)

    @property
    def offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.block_lengths)]).astype(np.int64)

    def blocks(self, y: BitString):
        off = self.offsets
        return [y[off[i]:off[i + 1]] for i in range(len(self.block_lengths))]


def is_induced_member(part: Partition, m: int, params: AlignmentParams) -> bool:
    lens = part.block_lengths
    if len(lens) != params.big_b or sum(lens) != m or any(v > params.b for v in lens):
        return False
    exceptional = sum(1 for v in lens if not params.in_window(v))
    return exceptional <= params.induced_budget


def is_standardized_member(part: Partition, m: int, params: AlignmentParams) -> bool:
    lens = part.block_lengths
    if len(lens) != params.big_b or sum(lens) != m or any(v > params.b for v in lens):
        return False
    targets = params.std_targets()
    off_target = sum(1 for v, t in zip(lens, targets) if v != t)
    return off_target <= params.standardized_budget


def average_local_alignment(x: BitString, y: BitString, part: Partition, params: AlignmentParams) -> float:
    """(1/B) sum of local alignments of an explicit partition against x's blocks."""
    b, big_b = params.b, params.big_b
    if len(part.block_lengths) != big_b:
        raise ValueError("partition has the wrong number of blocks")
    xblocks = [x[i * b:(i + 1) * b] for i in range(big_b)]
    total = 0.0
    for xb, yb in zip(xblocks, part.blocks(y)):
        total += local_alignment(xb, yb, params.delta)
    return total / big_b


def _block_signs(x: BitString, params: AlignmentParams) -> np.ndarray:
    b, big_b = params.b, params.big_b
    sums = x.bits[: big_b * b].reshape(big_b, b).sum(axis=1, dtype=np.int64)
    return np.where(2 * sums >= b, 1.0, -1.0)


def _total_alignment(x: BitString, y: BitString, params: AlignmentParams, standardized: bool) -> float:
    b, big_b = params.b, params.big_b
    if len(x) // b != big_b:
        raise ValueError("dimension mismatch: params were built for a different ambient length")
    m = len(y)
    if m > big_b * b:
        raise ValueError(f"dimension mismatch: |y|={m} exceeds B*b={big_b * b}")
    signs = _block_signs(x, params)
    steps = 2 * y.bits.astype(np.int64) - 1
    prefix = np.concatenate([[0], np.cumsum(steps)]).astype(np.float64)
    delta = params.delta
    budget = params.standardized_budget if standardized else params.induced_budget
    required = max(0, big_b - budget)  # conforming blocks needed, capped count
    targets = params.std_targets() if standardized else None
    lo_w, hi_w = params.window_ints()

    f = np.full((required + 1, m + 1), NEG_INF)
    f[0, 0] = 0.0
    for i in range(big_b):
        s = signs[i]
        new = np.full_like(f, NEG_INF)
        for length in range(0, min(b, m) + 1):
            width = m + 1 - length
            gain = np.clip(delta * s * (prefix[length:] - prefix[:width]), 0.0, 1.0)
            if standardized:
                conforming = length == targets[i]
            else:
                conforming = lo_w <= length <= hi_w
            cand = f[:, :width] + gain
            if conforming and required > 0:
                np.maximum(new[1:, length:], cand[:-1], out=new[1:, length:])
                np.maximum(new[required, length:], cand[required], out=new[required, length:])
            else:
                np.maximum(new[:, length:], cand, out=new[:, length:])
        f = new
    best = f[required, m]
    if best == NEG_INF:
        return NEG_INF
    return float(best) / big_b


def total_alignment_ind(x: BitString, y: BitString, params: AlignmentParams) -> float:
    """Exact supremum of the average local alignment over induced partitions;
    -inf when the family is empty."""
    return _total_alignment(x, y, params, standardized=False)


def total_alignment_std(x: BitString, y: BitString, params: AlignmentParams) -> float:
    """Exact supremum over standardized partitions; -inf when the family is empty."""
    return _total_alignment(x, y, params, standardized=True)


def is_good(x: BitString, y: BitString, params: AlignmentParams) -> bool:
    """Membership in the aligned set: induced total alignment >= 1/2 + beta*."""
    if len(y) != int(params.alpha * len(x)):
        raise ValueError(
            f"dimension mismatch: |y|={len(y)} but floor(alpha*|x|)={int(params.alpha * len(x))}"
        )
    return total_alignment_ind(x, y, params) >= 0.5 + params.beta_star


# ---------------------------------------------------------------------------
# Standardization
# ---------------------------------------------------------------------------


def standardize(y: BitString, part: Partition, params: AlignmentParams) -> Partition:
    """Map an induced partition to a standardized one.

    Left-to-right scan: read conforming blocks, stopping at the first
    exceptional block, after scan_cap conforming blocks, or at the last block.
    Within each run the interior blocks are set to their target lengths, one
    designated block absorbs the slack so the concatenated prefix is preserved
    at every stop, and exceptional stop blocks are copied verbatim (an
    exceptional first block of a run is therefore copied with an empty
    standardized prefix).
    """
    big_b, b = params.big_b, params.b
    if not is_induced_member(part, len(y), params):
        raise ValueError("invalid input partition: not an induced near-equipartition")
    lens = part.block_lengths
    exceptional = [not params.in_window(v) for v in lens]
    targets = params.std_targets()
    cap = params.scan_cap
    out = [0] * big_b
    start = 0  # index of the first unprocessed block
    while start < big_b:
        # Scan the next run.
        j = start
        conforming_seen = 0
        while True:
            if exceptional[j]:
                break
            conforming_seen += 1
            if conforming_seen >= cap or j == big_b - 1:
                break
            j += 1
        run_total = sum(lens[start:j + 1])
        if exceptional[j]:
            # Interior blocks at target, the one before the stop absorbs the
            # slack, the exceptional block itself is copied bit-for-bit.
            mid_total = 0
            for k in range(start, j - 1):
                out[k] = int(targets[k])
                mid_total += out[k]
            if j > start:
                out[j - 1] = run_total - lens[j] - mid_total
            out[j] = lens[j]
        else:
            mid_total = 0
            for k in range(start, j):
                out[k] = int(targets[k])
                mid_total += out[k]
            out[j] = run_total - mid_total
        if out[j] < 0 or out[j] > b or (j > start and (out[j - 1] < 0 or out[j - 1] > b)):
            raise ValueError(
                "standardization slack fell outside [0, b]; the window parameters "
                "are too tight for this block length"
            )
        start = j + 1
    return Partition(tuple(out))


# ---------------------------------------------------------------------------
# Sampling helpers for experiments and property tests
# ---------------------------------------------------------------------------


def sample_induced_partition(m: int, params: AlignmentParams, rng: np.random.Generator) -> Partition:
    """A random member of the induced family, built block by block from the
    feasible length choices (uniform over choices at each step, not over the
    family; fine for property tests)."""
    big_b, b = params.big_b, params.b
    lo_w, hi_w = params.window_ints()
    lens = []
    rem = m
    exc_left = params.induced_budget
    for i in range(big_b):
        rest = big_b - i - 1
        feasible = []
        for length in range(0, min(b, rem) + 1):
            left = rem - length
            e_after = exc_left - (0 if lo_w <= length <= hi_w else 1)
            if e_after < 0:
                continue
            exc_use = min(rest, e_after)
            min_cov = max(0, rest - e_after) * lo_w
            max_cov = (rest - exc_use) * hi_w + exc_use * b
            if min_cov <= left <= max_cov:
                feasible.append(length)
        if not feasible:
            raise ValueError("induced family is empty at these parameters")
        length = int(rng.choice(feasible))
        if not (lo_w <= length <= hi_w):
            exc_left -= 1
        lens.append(length)
        rem -= length
    return Partition(tuple(lens))


@dataclass(frozen=True)
class AlignmentExperiment:
    alpha: float
    b: int
    n: int
    trials: int
    planted_good: int
    null_good: int

    @property
    def planted_frequency(self) -> float:
        return self.planted_good / self.trials

    @property
    def null_frequency(self) -> float:
        return self.null_good / self.trials


def alignment_experiment(alpha: float, b: int, n: int, trials: int, seed: Seed) -> AlignmentExperiment:
    """Good-set frequencies under the planted and null laws on typical ambient
    strings: the desk-scale separation witness."""
    params = AlignmentParams(alpha=alpha, b=b, n=n)
    m = int(alpha * n)
    planted_good = 0
    null_good = 0
    # Disjoint substream offsets: trial t uses the block [1000*t, 1000*(t+1)).
    for t in range(trials):
        base = 1000 * t
        # Planted trial: resample until the ambient string is typical.
        for retry in range(64):
            d = sample_planted(n, m, seed.substream(base + retry))
            if is_typical(d.x, b):
                break
        planted_good += is_good(d.x, d.y, params)
        # Null trial: independent typical x and uniform y.
        for retry in range(64):
            x = sample_uniform_string(n, seed.substream(base + 100 + retry))
            if is_typical(x, b):
                break
        y = sample_uniform_string(m, seed.substream(base + 200))
        null_good += is_good(x, y, params)
    return AlignmentExperiment(
        alpha=alpha, b=b, n=n, trials=trials, planted_good=planted_good, null_good=null_good
    )
