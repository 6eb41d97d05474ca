"""
Monte Carlo sphere averages
===========================

Averages of the Morse weight, the number of local minima and the
Gulliver-Yamada vertex defect over uniformly random directions.

Directions are drawn in antithetic pairs ``(u, -u)``. Samples are
split into fixed blocks; block ``b`` draws from ``PCG64(seed)``
jumped ``b`` times, so the result does not depend on how blocks are
spread over worker threads. All accumulated quantities are integers,
which makes the merge exact and order independent.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import ceil, sqrt

import numpy as np

from . import spherical
from .curvature import edge_total_curvature
from .graph import require_valid
from .morse import morse_counts

BLOCK_PAIRS = 512
MAX_REJECTION_RATE = 0.5


class RejectionError(RuntimeError):
    """Too many sampled directions were degenerate."""


@dataclass(frozen=True)
class EstimateReport:
    samples: int
    rejected_degenerate: int
    K_hat: float
    mu_hat: float
    T_hat_over_pi: float
    std_errors: dict
    seed: int
    max_w: int = 0
    mu_histogram: dict = field(default_factory=dict)

    def to_json(self):
        d = asdict(self)
        d["mu_histogram"] = {str(k): v for k, v in sorted(self.mu_histogram.items())}
        return d


@dataclass
class _Tally:
    pairs: int = 0
    rejected: int = 0
    w: int = 0
    w2: int = 0
    mu: int = 0
    mu2: int = 0
    delta: int = 0
    delta2: int = 0
    max_w: int = 0
    hist: dict = field(default_factory=dict)

    def merge(self, other):
        for name in ("pairs", "rejected", "w", "w2", "mu", "mu2", "delta", "delta2"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.max_w = max(self.max_w, other.max_w)
        for k, v in other.hist.items():
            self.hist[k] = self.hist.get(k, 0) + v
        return self


def default_threads():
    env = os.environ.get("GRAPHCURV_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _draw_block(g, block, n_pairs, seed):
    rng = np.random.Generator(np.random.PCG64(seed).jumped(block))
    got = []
    drawn = rejected = 0
    need = n_pairs
    while need > 0:
        U = spherical.sample_directions(rng, need)
        bad = spherical.degenerate_mask(g, U)
        drawn += len(U)
        rejected += int(bad.sum())
        if drawn >= 64 and rejected > MAX_REJECTION_RATE * drawn:
            raise RejectionError("more than half of the sampled directions are degenerate")
        got.append(U[~bad])
        need -= len(U) - int(bad.sum())
    return np.concatenate(got), rejected


def _run_block(g, block, n_pairs, seed):
    U, rejected = _draw_block(g, block, n_pairs, seed)
    c0p, c1p, dp = morse_counts(g, U)
    c0m, c1m, dm = morse_counts(g, -U)
    w = (c0p + c1p) + (c0m + c1m)
    mu = c0p + c0m
    delta = dp + dm
    t = _Tally(pairs=n_pairs, rejected=rejected)
    t.w, t.w2 = int(w.sum()), int((w * w).sum())
    t.mu, t.mu2 = int(mu.sum()), int((mu * mu).sum())
    t.delta, t.delta2 = int(delta.sum()), int((delta * delta).sum())
    t.max_w = int(max((c0p + c1p).max(), (c0m + c1m).max()))
    vals, counts = np.unique(np.concatenate([c0p, c0m]), return_counts=True)
    t.hist = {int(v): int(c) for v, c in zip(vals, counts)}
    return t


def _scan(g, n_samples, seed, threads=None):
    require_valid(g)
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    n_pairs = ceil(n_samples / 2)
    blocks = [(b, min(BLOCK_PAIRS, n_pairs - b * BLOCK_PAIRS))
              for b in range(ceil(n_pairs / BLOCK_PAIRS))]
    threads = threads or default_threads()
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda bn: _run_block(g, bn[0], bn[1], seed), blocks))
    else:
        parts = [_run_block(g, b, n, seed) for b, n in blocks]
    total = _Tally()
    for p in parts:
        total.merge(p)
    return total


def _mean_se(s, s2, n, scale):
    # statistics over pair sums; each pair sum covers two directions
    mean = s / n
    var = (s2 - s * s / n) / (n - 1) if n > 1 else 0.0
    return mean / scale, sqrt(max(var, 0.0) / n) / scale


def estimate(g, n_samples, seed, threads=None):
    """Monte Carlo estimates of total curvature, crookedness and T/pi."""
    t = _scan(g, n_samples, seed, threads)
    n = t.pairs
    K, se_K = _mean_se(t.w, t.w2, n, 2)
    mu, se_mu = _mean_se(t.mu, t.mu2, n, 2)
    D, se_D = _mean_se(t.delta, t.delta2, n, 2)
    sum_k = sum(edge_total_curvature(e) for e in g.edges)
    return EstimateReport(
        samples=2 * n,
        rejected_degenerate=t.rejected,
        K_hat=K,
        mu_hat=mu,
        T_hat_over_pi=D + sum_k,
        std_errors={"K_hat": se_K, "mu_hat": se_mu, "T_hat_over_pi": se_D},
        seed=seed,
        max_w=t.max_w,
        mu_histogram=dict(sorted(t.hist.items())),
    )


def gulliver_yamada(g, n_samples, seed, threads=None):
    """Monte Carlo estimate of ``T / pi`` (the Gulliver-Yamada curvature)."""
    return estimate(g, n_samples, seed, threads).T_hat_over_pi


@dataclass(frozen=True)
class MinimaHistogram:
    frequencies: dict
    mu_hat: float
    fraction_multi_min: float
    samples: int


def minima_histogram(g, n_samples, seed, threads=None):
    """Empirical distribution of the number of local minima."""
    t = _scan(g, n_samples, seed, threads)
    total = sum(t.hist.values())
    freq = {k: v / total for k, v in sorted(t.hist.items())}
    multi = sum(v for k, v in t.hist.items() if k >= 2) / total
    return MinimaHistogram(freq, t.mu / total, multi, total)


def check_crookedness_identity(report, chi):
    """``2 mu_hat - K_hat - chi`` (zero up to rounding for any sample)."""
    return 2 * report.mu_hat - report.K_hat - chi


__all__ = ["EstimateReport", "MinimaHistogram", "RejectionError", "check_crookedness_identity",
           "default_threads", "estimate", "gulliver_yamada",
           "minima_histogram"]
