"""Algorithm dispatch with operation counting, and log-log scaling fits."""

from __future__ import annotations

import math
import statistics
import time

from . import bohm, trager, vanhoeij
from .corpus import family
from .field import set_seed
from .ops import COUNTER

ALGORITHMS = ("vanhoeij", "trager", "boehm")
VARIANTS = ALGORITHMS + ("vanhoeij-classical", "vanhoeij-binary", "vanhoeij-jump")


def compute(algorithm, p, f, binary_threshold=3, seed=0):
    """Run one algorithm from a clean counter; returns (basis, op report)."""
    set_seed(seed)
    COUNTER.reset()
    t0 = time.perf_counter()
    if algorithm == "vanhoeij":
        basis = vanhoeij.global_basis_vh(p, f, binary_threshold=binary_threshold)
    elif algorithm.startswith("vanhoeij-"):
        basis = vanhoeij.global_basis_vh(p, f, variant=algorithm.split("-", 1)[1])
    elif algorithm == "trager":
        basis = trager.trager_integral_basis(p, f)
    elif algorithm in ("boehm", "bohm"):
        basis = bohm.bohm_integral_basis(p, f)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    report = COUNTER.snapshot()
    report["wall_time"] = time.perf_counter() - t0
    report["ops"] = report["field_mul"] + report["field_inv"]
    return basis, report


def systems_count(basis):
    return sum(fr["systems"] for fr in basis.report.get("factors", []))


def fit_slope(points):
    """Least-squares slope of log(ops) against log(D); None with fewer than two sizes."""
    pts = [(math.log(d), math.log(max(v, 1))) for d, v in points]
    if len({x for x, _ in pts}) < 2:
        return None
    return statistics.linear_regression([x for x, _ in pts], [y for _, y in pts]).slope


def benchmark(family_name, sizes, algorithms=ALGORITHMS, p=10007, seed=0):
    """Op counts per size and the fitted log-log slope per algorithm."""
    points = []
    for s in sizes:
        f, D = family(family_name, s, p)
        entry = {"size": s, "D": D, "ops": {}, "systems": {}}
        for alg in algorithms:
            basis, rep = compute(alg, p, f, seed=seed)
            entry["ops"][alg] = rep["ops"]
            if alg.startswith("vanhoeij"):
                entry["systems"][alg] = systems_count(basis)
        points.append(entry)
    slopes = {alg: fit_slope([(pt["D"], pt["ops"][alg]) for pt in points]) for alg in algorithms}
    return {"family": family_name, "p": p, "points": points, "slopes": slopes}
