"""Synthetic power-law streams over a finite universe of integer items.

Items are the ranks 1..U. The plain family gives rank x weight x**-rho;
the shifted family gives it (x + a)**-rho, which flattens the head of the
distribution while keeping the tail exponent. Weights are normalized by
direct summation, so no special-function evaluation is involved.

Sampling is inverse-CDF on a cumulative table, driven by numpy's default
PCG64 generator. A given (spec, n, seed) triple always yields the same
stream, on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .summary import U32_MAX

__all__ = [
    "DistSpec",
    "chi_square_top_ranks",
    "probabilities",
    "sample_stream",
    "weights",
]

FAMILIES = ("zipf", "hurwitz")


@dataclass(frozen=True)
class DistSpec:
    """A power-law shape: family, exponent rho, head shift a, universe size."""

    family: str
    rho: float
    a: float = 0.5
    universe: int = 1_000_000

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if not self.rho > 0:
            raise ValueError(f"need rho > 0, got {self.rho}")
        if self.family == "hurwitz" and not self.a > 0:
            raise ValueError(f"need a > 0 for the shifted family, got {self.a}")
        if self.universe < 1 or self.universe > U32_MAX:
            raise ValueError(f"universe must be in [1, {U32_MAX}], got {self.universe}")


def weights(spec: DistSpec) -> np.ndarray:
    """Unnormalized rank weights, rank 1 first."""
    ranks = np.arange(1, spec.universe + 1, dtype=np.float64)
    if spec.family == "hurwitz":
        ranks += spec.a
    return ranks ** -spec.rho


def probabilities(spec: DistSpec) -> np.ndarray:
    """Rank probabilities, normalized to sum to 1."""
    w = weights(spec)
    return w / w.sum()


def sample_stream(spec: DistSpec, n: int, seed: int) -> np.ndarray:
    """Draw ``n`` items i.i.d. from ``spec`` as a uint32 array of ranks."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    cum = np.cumsum(probabilities(spec))
    cum /= cum[-1]
    u = np.random.default_rng(seed).random(n)
    return (np.searchsorted(cum, u, side="right") + 1).astype(np.uint32)


def chi_square_top_ranks(
    stream: np.ndarray, spec: DistSpec, top: int = 50
) -> tuple[float, float]:
    """Chi-square fit of the stream against ``spec`` on the heaviest ranks.

    Observed counts for ranks 1..top each get their own bin and everything
    else is pooled into one remainder bin. Returns (statistic, p-value).
    """
    n = len(stream)
    if n == 0:
        raise ValueError("need a non-empty stream")
    top = min(top, spec.universe)
    p = probabilities(spec)
    counts = np.bincount(stream, minlength=top + 1)[1 : top + 1]
    observed = np.append(counts, n - counts.sum()).astype(np.float64)
    head = p[:top] * n
    expected = np.append(head, n - head.sum())
    if spec.universe == top:
        observed = observed[:-1]
        expected = expected[:-1]
    stat, pvalue = stats.chisquare(observed, expected)
    return float(stat), float(pvalue)
