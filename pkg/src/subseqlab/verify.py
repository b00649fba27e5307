"""Self-contained oracle suite behind the `verify` subcommand.

Every check recomputes an expected value by an independent route (brute-force
enumeration, series summation, finite differences, exact rationals) and
compares against the fast path.  `fast` finishes in seconds; `full` adds the
Monte Carlo band checks and takes minutes.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import alignment, annealed, capacity, montecarlo
from .core import BitString, Seed
from .partition import (
    RankOneIndicator,
    count_common_subsequences,
    count_embeddings_exact,
    greedy_embed,
    log_count_embeddings,
    skip_vector_of,
)
from .special import EULER_GAMMA, digamma


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name, passed, detail=""):
    return CheckResult(name=name, passed=bool(passed), detail=detail)


def _brute_count(x: BitString, y: BitString) -> int:
    n, m = len(x), len(y)
    return sum(
        1
        for comb in itertools.combinations(range(n), m)
        if all(x[i] == y[j] for j, i in enumerate(comb))
    )


def check_exact_dp_vs_bruteforce(pairs: int = 120, seed: int = 1001) -> CheckResult:
    rng = np.random.default_rng(seed)
    for _ in range(pairs):
        n = int(rng.integers(0, 11))
        m = int(rng.integers(0, n + 1)) if n else 0
        x = BitString(rng.integers(0, 2, n, dtype=np.uint8))
        y = BitString(rng.integers(0, 2, m, dtype=np.uint8))
        if count_embeddings_exact(x, y) != _brute_count(x, y):
            return _result("partition/exact-vs-bruteforce", False, f"mismatch at {x!r}, {y!r}")
    return _result("partition/exact-vs-bruteforce", True, f"{pairs} random pairs, n <= 10")


def check_logdp_vs_exact(pairs: int = 60, seed: int = 1002) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(pairs):
        n = int(rng.integers(1, 19))
        m = int(rng.integers(0, n + 1))
        x = BitString(rng.integers(0, 2, n, dtype=np.uint8))
        y = BitString(rng.integers(0, 2, m, dtype=np.uint8))
        exact = count_embeddings_exact(x, y)
        logz = log_count_embeddings(RankOneIndicator(x, y))
        if exact == 0:
            if logz != float("-inf"):
                return _result("partition/logdp-vs-exact", False, "zero count not -inf")
            continue
        rel = abs(math.exp(logz) - exact) / exact
        worst = max(worst, rel)
    return _result("partition/logdp-vs-exact", worst < 1e-10, f"worst rel err {worst:.2e}")


def check_greedy_equivalence(pairs: int = 2000, seed: int = 1003) -> CheckResult:
    rng = np.random.default_rng(seed)
    for _ in range(pairs):
        n = 25
        m = int(rng.integers(0, 16))
        x = BitString(rng.integers(0, 2, n, dtype=np.uint8))
        y = BitString(rng.integers(0, 2, m, dtype=np.uint8))
        absent = greedy_embed(x, y) is None
        zero = count_embeddings_exact(x, y) == 0
        if absent != zero:
            return _result("partition/greedy-equivalence", False, f"{x!r}, {y!r}")
    return _result("partition/greedy-equivalence", True, f"{pairs} pairs at n=25")


def check_skip_vector_injectivity(seed: int = 1004) -> CheckResult:
    rng = np.random.default_rng(seed)
    for _ in range(40):
        n = int(rng.integers(2, 9))
        m = int(rng.integers(1, n + 1))
        x = BitString(rng.integers(0, 2, n, dtype=np.uint8))
        y = BitString(rng.integers(0, 2, m, dtype=np.uint8))
        seen = {}
        for comb in itertools.combinations(range(n), m):
            if all(x[i] == y[j] for j, i in enumerate(comb)):
                v = skip_vector_of(x, y, list(comb)).skips
                if v in seen:
                    return _result("partition/skip-vector-injectivity", False, f"collision {v}")
                seen[v] = comb
    return _result("partition/skip-vector-injectivity", True, "exhaustive, n <= 8")


def check_common_subsequence_oracle(seed: int = 1005) -> CheckResult:
    rng = np.random.default_rng(seed)
    for _ in range(30):
        n1 = int(rng.integers(0, 8))
        n2 = int(rng.integers(0, 8))
        x1 = BitString(rng.integers(0, 2, n1, dtype=np.uint8))
        x2 = BitString(rng.integers(0, 2, n2, dtype=np.uint8))
        for m in range(min(n1, n2) + 1):
            brute = 0
            for c1 in itertools.combinations(range(n1), m):
                s1 = tuple(x1[i] for i in c1)
                for c2 in itertools.combinations(range(n2), m):
                    if s1 == tuple(x2[i] for i in c2):
                        brute += 1
            if count_common_subsequences(x1, x2, m) != brute:
                return _result("partition/common-subsequence-oracle", False, f"{x1!r},{x2!r},m={m}")
    return _result("partition/common-subsequence-oracle", True, "exhaustive pairs, n <= 7")


def check_closed_form_residuals() -> CheckResult:
    worst = 0.0
    for k in range(1, 20):
        a = 0.05 * k
        sol = annealed.planted_annealed(a)
        c = 1.0 / a
        residuals = (
            abs(annealed.pair_mgf_closed_form(sol.x, sol.y) - 1.0),
            abs(sol.x**2 * (1 - 2 * sol.y) - 2 * sol.x * (1 + sol.y) + 1.0),
            abs(c * sol.x**2 + 3 * sol.x - (c - 1.0)),
            abs(annealed.x_of_rho(a, sol.rho_star) - sol.x),
            abs(annealed.y_of_rho(a, sol.rho_star) - sol.y),
            abs(annealed.z_of_rho(a, sol.rho_star) - 1.0),
        )
        worst = max(worst, max(residuals))
    return _result("annealed/closed-form-residuals", worst < 1e-10, f"19 alphas, worst {worst:.2e}")


def check_closed_form_vs_series() -> CheckResult:
    worst = 0.0
    for x in (0.02, 0.05, 0.1, 0.15, 0.2):
        for y in (0.1, 0.4, 0.8, 1.5):
            if annealed.discriminant(x, y) <= 0.05:
                continue
            cf = annealed.pair_mgf_closed_form(x, y)
            sr = annealed.pair_mgf_series(x, y, tol=1e-13)
            worst = max(worst, abs(cf - sr) / cf)
    return _result("annealed/closed-form-vs-series", worst < 1e-9, f"worst rel err {worst:.2e}")


def check_envelope_identity() -> CheckResult:
    worst = 0.0
    h = 1e-6
    for a in (0.3, 0.5, 0.7):
        for k in range(1, 21):
            rho = 0.04 + 0.9 * k / 21.0
            fd = (annealed.planted_objective(a, rho + h) - annealed.planted_objective(a, rho - h)) / (2 * h)
            exact = a * math.log(annealed.z_of_rho(a, rho))
            worst = max(worst, abs(fd - exact))
    return _result("annealed/envelope-identity", worst < 1e-5, f"worst |fd - a ln z| = {worst:.2e}")


def check_variational_max() -> CheckResult:
    worst = 0.0
    for a in (0.1, 0.3, 0.5, 0.7, 0.9):
        _, numeric = annealed.maximize_planted_objective(a)
        worst = max(worst, abs(numeric - annealed.planted_annealed(a).raw))
    return _result("annealed/variational-maximum", worst < 1e-7, f"worst gap {worst:.2e}")


def check_digamma() -> CheckResult:
    err1 = abs(digamma(1.0) + EULER_GAMMA)
    worst = err1
    for x in (0.1, 0.7, 1.3, 2.5, 5.0, 9.7, 31.0):
        worst = max(worst, abs(digamma(x + 1.0) - digamma(x) - 1.0 / x))
    return _result("annealed/digamma", worst < 1e-10, f"psi(1)+gamma={err1:.1e}, worst residual {worst:.1e}")


def check_gap_product_formula() -> CheckResult:
    for n in range(1, 8):
        for m in range(1, n + 1):
            if annealed.barZ_exact(n, m) != annealed.barZ_pairs_direct(n, m):
                return _result("annealed/gap-product-formula", False, f"(n,m)=({n},{m})")
    return _result("annealed/gap-product-formula", True, "all (n, m) with n <= 7")


def check_planted_mean_enumeration() -> CheckResult:
    for n in range(1, 7):
        for m in range(1, n + 1):
            total = Fraction(0)
            subsets = list(itertools.combinations(range(n), m))
            for word in range(1 << n):
                x = BitString(np.fromiter(((word >> k) & 1 for k in range(n)), dtype=np.uint8, count=n))
                for sigma in subsets:
                    total += count_embeddings_exact(x, x.take(np.array(sigma, dtype=np.int64)))
            expected = total / (len(subsets) * (1 << n))
            if expected != annealed.planted_mean_partition(n, m):
                return _result("annealed/planted-mean-enumeration", False, f"(n,m)=({n},{m})")
    return _result("annealed/planted-mean-enumeration", True, "exact rationals, n <= 6")


def check_nishimori_identity() -> CheckResult:
    worst = 0.0
    for n, m in ((4, 2), (6, 3)):
        rep = montecarlo.null_planted_gap_experiment(m / n, n, 1, Seed(0), exhaustive=True)
        worst = max(worst, abs(rep.planted_side - rep.null_side))
    return _result("montecarlo/nishimori-identity", worst < 1e-12, f"worst gap {worst:.2e}")


def check_capacity_constants() -> CheckResult:
    beta_err = abs(capacity.beta_alpha(0.5) - 0.3413447460685429)
    log10_bound = capacity.log10_explicit_lower_bound(0.5)
    ok = beta_err < 1e-12 and abs(log10_bound + 1860.3469324239877) < 1e-6
    return _result("capacity/explicit-constants", ok, f"beta err {beta_err:.1e}, log10 bound {log10_bound:.2f}")


def check_capacity_sandwich() -> CheckResult:
    for k in range(1, 49):
        p = 0.02 * k
        lower = capacity.dgv_lower_bound(p)
        upper = capacity.upper_bound_uniform_capacity(p)
        tiny = math.exp(capacity.log_explicit_lower_bound(p))
        if not (lower <= upper + 1e-12 and tiny <= upper and upper > 0):
            return _result("capacity/bound-sandwich", False, f"p={p:.2f}")
    return _result("capacity/bound-sandwich", True, "0.02 grid on (0, 0.98)")


def check_alignment_small_oracle(seed: int = 1006) -> CheckResult:
    rng = np.random.default_rng(seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for B, b, eps in ((2, 3, 1 / 24), (3, 4, 0.4), (4, 3, 0.4)):
            params = alignment.AlignmentParams(alpha=0.5, b=b, n=B * b, epsilon=eps)
            for _ in range(6):
                x = BitString(rng.integers(0, 2, B * b, dtype=np.uint8))
                m = int(rng.integers(0, B * b + 1))
                y = BitString(rng.integers(0, 2, m, dtype=np.uint8))
                for std in (False, True):
                    fn = alignment.total_alignment_std if std else alignment.total_alignment_ind
                    member = alignment.is_standardized_member if std else alignment.is_induced_member
                    best = float("-inf")
                    for lens in itertools.product(range(b + 1), repeat=B):
                        if sum(lens) != m:
                            continue
                        part = alignment.Partition(lens)
                        if member(part, m, params):
                            best = max(best, alignment.average_local_alignment(x, y, part, params))
                    if abs(fn(x, y, params) - best) > 1e-12 and not (best == fn(x, y, params)):
                        return _result("alignment/dp-vs-exhaustive", False, f"B={B} b={b} eps={eps}")
    return _result("alignment/dp-vs-exhaustive", True, "B <= 4, b <= 4, both budgets")


def check_standardize_soundness(seed: int = 1007) -> CheckResult:
    # eps = 1/4 is the largest exponent at alpha = 1/2 for which the slack
    # blocks provably stay inside [0, b]; it also makes the scan cap > 1, so
    # the pass does real work instead of copying.
    rng = np.random.default_rng(seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for eps in (1 / 24, 0.25):
            params = alignment.AlignmentParams(alpha=0.5, b=24, n=20 * 24, epsilon=eps)
            m = int(0.5 * params.big_b * params.b)
            y = BitString(rng.integers(0, 2, m, dtype=np.uint8))
            for _ in range(120):
                part = alignment.sample_induced_partition(m, params, rng)
                out = alignment.standardize(y, part, params)
                if not alignment.is_standardized_member(out, m, params):
                    return _result("alignment/standardize-soundness", False, f"eps={eps}")
                if sum(out.block_lengths) != sum(part.block_lengths):
                    return _result("alignment/standardize-soundness", False, "length sum changed")
    return _result("alignment/standardize-soundness", True, "240 random induced partitions")


def check_mc_strict_weak_band() -> CheckResult:
    exact = annealed.strict_weak_value(1.0, 0.5, 0.3)
    est = montecarlo.estimate_polymer(montecarlo.STRICT_WEAK, 0.3, 2000, 8, Seed(77))
    rel = abs(est.mean - exact) / abs(exact)
    return _result("montecarlo/strict-weak-band", rel < 0.07, f"rel gap {rel:.3f} at n=2000")


def check_mc_null_band() -> CheckResult:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        est = montecarlo.estimate_quenched(montecarlo.NULL, 0.25, 6000, 8, Seed(78))
    lo = capacity.skip_vector_lower_bound(0.25) - 3 * est.stderr
    hi = annealed.null_annealed(0.25)
    return _result(
        "montecarlo/null-band", lo <= est.mean <= hi, f"mean {est.mean:.5f} in [{lo:.5f}, {hi:.5f}]"
    )


def check_mc_planted_band() -> CheckResult:
    est = montecarlo.estimate_quenched(montecarlo.PLANTED, 0.5, 4000, 8, Seed(79))
    lo = annealed.null_annealed(0.5) + 3 * est.stderr
    hi = annealed.planted_annealed(0.5).value - 3 * est.stderr
    return _result(
        "montecarlo/planted-band", lo <= est.mean <= hi, f"mean {est.mean:.5f} in [{lo:.5f}, {hi:.5f}]"
    )


def check_mc_positive_rate_past_half() -> CheckResult:
    row = montecarlo.mutual_info_point(0.7, 6000, 8, Seed(80))
    ok = row.mc_capacity > 3 * row.mc_stderr
    return _result("montecarlo/positive-rate-p0.7", ok, f"capacity {row.mc_capacity:.5f} +- {row.mc_stderr:.5f}")


def check_mc_bernoulli_matching() -> CheckResult:
    # Positivity of the fair-coin environment is decided by greedy column
    # advances, which are i.i.d. Geom(1/2) exactly as in the two-string model:
    # positive free energy below alpha = 1/2, Z = 0 w.h.p. above it.
    below = montecarlo.estimate_polymer(montecarlo.BERNOULLI_MATCHING, 0.45, 2000, 6, Seed(81))
    above = montecarlo.estimate_polymer(montecarlo.BERNOULLI_MATCHING, 0.6, 2000, 6, Seed(82))
    ok = below.mean > 0 and below.zero_fraction == 0.0 and above.zero_fraction == 1.0
    return _result(
        "montecarlo/bernoulli-matching",
        ok,
        f"mean {below.mean:.5f} at alpha=0.45, zero fraction {above.zero_fraction:.2f} at 0.6",
    )


FAST_CHECKS = (
    check_exact_dp_vs_bruteforce,
    check_logdp_vs_exact,
    check_greedy_equivalence,
    check_skip_vector_injectivity,
    check_common_subsequence_oracle,
    check_closed_form_residuals,
    check_closed_form_vs_series,
    check_envelope_identity,
    check_variational_max,
    check_digamma,
    check_gap_product_formula,
    check_planted_mean_enumeration,
    check_nishimori_identity,
    check_capacity_constants,
    check_capacity_sandwich,
    check_alignment_small_oracle,
    check_standardize_soundness,
)

FULL_CHECKS = FAST_CHECKS + (
    check_mc_strict_weak_band,
    check_mc_null_band,
    check_mc_planted_band,
    check_mc_positive_rate_past_half,
    check_mc_bernoulli_matching,
)


def run(level: str = "fast"):
    if level not in ("fast", "full"):
        raise ValueError(f"level must be 'fast' or 'full', got {level!r}")
    checks = FAST_CHECKS if level == "fast" else FULL_CHECKS
    results = []
    for fn in checks:
        try:
            results.append(fn())
        except Exception as exc:  # a crash is a failure, not an abort
            results.append(CheckResult(name=fn.__name__, passed=False, detail=f"raised {exc!r}"))
    return results
