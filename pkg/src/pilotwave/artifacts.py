"""CSV/JSON emission and the ensemble summary shared by the CLI verbs."""

import csv
import json
import math

import numpy as np

from .ensemble import Outcome
from .stats import build_histogram, compare_density, outcome_fractions, to_pdf


def fmt(v):
    """Shortest round-trip decimal; empty for missing or non-finite values."""
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return repr(v) if math.isfinite(v) else ""
    return str(v)


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def write_json(path, obj):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def ensemble_rows(positions):
    for n, x in enumerate(positions):
        yield n, float(x), Outcome.of(x).value


def write_ensemble_csv(path, positions):
    write_csv(path, ["n", "relative_position", "outcome"], ensemble_rows(positions))


def read_ensemble_csv(path):
    """Positions of an ensemble CSV, in recurrence order."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    return np.array([float(r["relative_position"]) for r in rows])


def summarize_positions(positions, model, bin_width):
    """Outcome fractions and histogram-vs-reference metrics of a position sample."""
    h = build_histogram(positions, bin_width)
    cmp = compare_density(h, model.reference_density, model.reference_cdf)
    p_left, p_right = outcome_fractions(Outcome.of(x) for x in positions)
    out = {"p_left": p_left, "p_right": p_right, "bin_width": float(bin_width)}
    out.update(cmp.to_dict())
    return out, h


def histogram_rows(h, model):
    """(bin_left, bin_right, count, density, reference bin average) per occupied bin."""
    for (centre, density), k in zip(to_pdf(h), h.occupied):
        lo, hi = h.edges(k)
        ref = (model.reference_cdf(hi) - model.reference_cdf(lo)) / h.bin_width
        yield lo, hi, h.counts[k], density, ref
