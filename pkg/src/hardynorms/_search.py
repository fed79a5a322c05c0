"""Deterministic supremum search: coarse grid scan plus golden-section polish.

The scan does not assume unimodality; the top grid points are each refined
locally, so plateau weights and step-edge suprema are still found.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

__all__ = ["SupResult", "golden_max", "sup_search", "log_grid"]


@dataclass(frozen=True)
class SupResult:
    value: float
    arg: float


def log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    return np.exp(np.linspace(math.log(lo), math.log(hi), n))


def golden_max(fn: Callable[[float], float], a: float, b: float,
               xtol: float = 0.0, rel: float = 1e-12) -> SupResult:
    """Golden-section maximization on [a, b], fixed iteration count."""
    if b <= a:
        v = fn(a)
        return SupResult(v, a)
    span = b - a
    tol = max(xtol, rel * max(abs(a), abs(b), 1.0))
    n = max(1, int(math.ceil(math.log(tol / span) / math.log(INVPHI)))) if tol < span else 1
    c = b - INVPHI * span
    d = a + INVPHI * span
    fc, fd = fn(c), fn(d)
    for _ in range(n):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = fn(d)
    if fc >= fd:
        return SupResult(fc, c)
    return SupResult(fd, d)


def sup_search(fn: Callable[[float], float], lo: float, hi: float, *,
               n_grid: int = 512, top: int = 5, extra: Iterable[float] = (),
               log_axis: bool = True, xtol: float = 0.0) -> SupResult:
    """Supremum of fn over [lo, hi] with extra candidate points.

    Infinite values short-circuit; NaN values are skipped.
    """
    if hi < lo:
        raise ValueError("empty search interval")
    if hi == lo:
        return SupResult(fn(lo), lo)
    if log_axis and lo > 0:
        xs = log_grid(lo, hi, n_grid)
    else:
        xs = np.linspace(lo, hi, n_grid)
    cand = list(xs)
    for e in extra:
        if lo <= e <= hi:
            cand.append(float(e))
    vals = []
    for x in cand:
        v = fn(float(x))
        if math.isinf(v) and v > 0:
            return SupResult(math.inf, float(x))
        vals.append(-math.inf if math.isnan(v) else v)
    order = sorted(range(len(xs)), key=lambda i: vals[i], reverse=True)[:top]
    best_v = max(vals)
    best_x = float(cand[vals.index(best_v)])
    for i in order:
        a = float(xs[max(i - 1, 0)])
        b = float(xs[min(i + 1, len(xs) - 1)])
        r = golden_max(fn, a, b, xtol=xtol)
        if math.isinf(r.value) and r.value > 0:
            return r
        if r.value > best_v:
            best_v, best_x = r.value, r.arg
    return SupResult(best_v, best_x)
