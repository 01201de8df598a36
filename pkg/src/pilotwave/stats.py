"""Histograms of recurrence positions and distances to a reference density."""

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyInput
from .numerics.quadrature import QuadratureSpec, integrate

DEFAULT_BIN_WIDTH = 0.1
DEFAULT_SUPPORT = (-10.0, 10.0)
CHI2_MIN_EXPECTED = 5.0


@dataclass(frozen=True)
class Histogram:
    """Counts on half-open bins [origin + k w, origin + (k + 1) w)."""

    bin_width: float
    origin: float = 0.0
    counts: dict = field(default_factory=dict)
    total: int = 0

    def __post_init__(self):
        if not self.bin_width > 0:
            raise ValueError("bin_width must be positive")
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("counts must be non-negative")
        if sum(self.counts.values()) != self.total:
            raise ValueError("total must equal the sum of counts")

    def edges(self, k):
        return self.origin + k * self.bin_width, self.origin + (k + 1) * self.bin_width

    @property
    def occupied(self):
        return sorted(k for k, c in self.counts.items() if c > 0)


def bin_indices(samples, bin_width, origin=0.0):
    """Bin index of every sample.

    Quotients within a few ulps of an integer are snapped to it, so a sample
    written as a decimal edge (0.3 with w = 0.1) opens its bin instead of
    closing the previous one because 3 * 0.1 rounds above 0.3.
    """
    q = (np.asarray(samples, dtype=float) - origin) / bin_width
    r = np.rint(q)
    snap = np.abs(q - r) <= 4.0 * np.finfo(float).eps * np.maximum(np.abs(q), 1.0)
    return np.where(snap, r, np.floor(q)).astype(np.int64)


def build_histogram(samples, bin_width=DEFAULT_BIN_WIDTH, origin=0.0):
    x = np.asarray(samples, dtype=float).ravel()
    if x.size == 0:
        raise EmptyInput("cannot histogram an empty sample")
    if not np.all(np.isfinite(x)):
        raise ValueError("samples must be finite")
    if not bin_width > 0:
        raise ValueError("bin_width must be positive")
    keys, counts = np.unique(bin_indices(x, bin_width, origin), return_counts=True)
    return Histogram(float(bin_width), float(origin),
                     {int(k): int(c) for k, c in zip(keys, counts)}, int(x.size))


def merge(a, b):
    """Add the counts of two histograms on the same bin lattice."""
    if a.bin_width != b.bin_width or a.origin != b.origin:
        raise ValueError("histograms must share bin_width and origin")
    counts = Counter(a.counts)
    counts.update(b.counts)
    return Histogram(a.bin_width, a.origin, dict(sorted(counts.items())), a.total + b.total)


def to_pdf(h):
    """(bin centre, density) for every occupied bin, in increasing x."""
    if h.total <= 0:
        raise EmptyInput("histogram is empty")
    scale = h.total * h.bin_width
    out = []
    for k in h.occupied:
        lo, hi = h.edges(k)
        out.append((0.5 * (lo + hi), h.counts[k] / scale))
    return out


@dataclass(frozen=True)
class DensityComparison:
    l1: float
    sup: float
    ks: float
    chi2: float
    n: int
    chi2_bins: int = 0

    def to_dict(self):
        return {"l1": self.l1, "sup": self.sup, "ks": self.ks, "chi2": self.chi2,
                "chi2_bins": self.chi2_bins, "n": self.n}


def _bin_masses(h, ks, ref_density, ref_cdf, quad):
    edges = h.origin + np.append(ks, ks[-1] + 1) * h.bin_width
    if ref_cdf is not None:
        cdf = np.array([ref_cdf(float(e)) for e in edges])
        return np.diff(cdf), cdf
    masses = np.array([integrate(ref_density, float(a), float(b), quad)[0]
                       for a, b in zip(edges[:-1], edges[1:])])
    lower = integrate(ref_density, float(DEFAULT_SUPPORT[0] - 30.0), float(edges[0]), quad)[0]
    return masses, lower + np.concatenate(([0.0], np.cumsum(masses)))


def compare_density(h, ref_density, ref_cdf=None, support=DEFAULT_SUPPORT,
                    quad=QuadratureSpec(1e-13, 1e-10)):
    """Distances between the normalised histogram and a reference density.

    The reference is bin-averaged (exact CDF differences when ``ref_cdf`` is
    given, adaptive quadrature otherwise) over every bin that is occupied or
    overlaps ``support``; reference mass outside that range counts fully
    toward l1. ``ks`` is the largest CDF gap at the bin edges, which is where
    a histogram knows its empirical CDF exactly.
    """
    if h.total <= 0:
        raise EmptyInput("histogram is empty")
    w = h.bin_width
    k_lo = math.floor((support[0] - h.origin) / w)
    k_hi = math.ceil((support[1] - h.origin) / w) - 1
    occ = h.occupied
    k_lo = min(k_lo, occ[0])
    k_hi = max(k_hi, occ[-1])
    ks_idx = np.arange(k_lo, k_hi + 1)
    counts = np.array([h.counts.get(int(k), 0) for k in ks_idx], dtype=float)
    p_hat = counts / h.total
    mass, cdf_edges = _bin_masses(h, ks_idx, ref_density, ref_cdf, quad)
    outside = max(0.0, 1.0 - float(mass.sum()))
    diff = np.abs(p_hat - mass)
    l1 = float(diff.sum()) + outside
    sup = float(diff.max()) / w
    emp = np.concatenate(([0.0], np.cumsum(p_hat)))
    ks = float(np.max(np.abs(emp - cdf_edges)))
    expected = mass * h.total
    keep = expected >= CHI2_MIN_EXPECTED
    chi2 = float(np.sum((counts[keep] - expected[keep]) ** 2 / expected[keep]))
    return DensityComparison(l1=min(l1, 2.0), sup=sup, ks=ks, chi2=chi2, n=h.total,
                             chi2_bins=int(keep.sum()))


def ks_statistic(samples, cdf):
    """Kolmogorov-Smirnov distance between raw samples and a continuous CDF."""
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    n = x.size
    if n == 0:
        raise EmptyInput("cannot compute KS of an empty sample")
    f = np.array([cdf(float(v)) for v in x])
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def outcome_fractions(outcomes):
    """(p_left, p_right) of a sequence of outcomes (enum members or strings)."""
    labels = [str(getattr(o, "value", o)).upper() for o in outcomes]
    if not labels:
        raise EmptyInput("no outcomes")
    bad = set(labels) - {"LEFT", "RIGHT"}
    if bad:
        raise ValueError(f"unknown outcomes {sorted(bad)}")
    left = labels.count("LEFT")
    p_left = left / len(labels)
    return p_left, 1.0 - p_left


def histogram_distance(a, b):
    """l1 distance between the normalised bin probabilities of two histograms."""
    if a.bin_width != b.bin_width or a.origin != b.origin:
        raise ValueError("histograms must share bin_width and origin")
    if a.total <= 0 or b.total <= 0:
        raise EmptyInput("histogram is empty")
    keys = set(a.counts) | set(b.counts)
    return float(sum(abs(a.counts.get(k, 0) / a.total - b.counts.get(k, 0) / b.total)
                     for k in keys))
