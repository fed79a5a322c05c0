"""Equivalence of the rearrangement norm pair, the exactness family, and
fundamental functions of the derived spaces."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DeltaOutOfRange, NonpositiveKappa, ZeroNorm
from .funcspace import (
    DEFAULT_QUAD,
    INF,
    Piece,
    QuadratureConfig,
    RealFn,
    indicator_fn,
)
from .norms import NormResult, y_quasinorms
from .rearrange import MeasureSpec

__all__ = [
    "EquivalenceReport",
    "FundamentalReport",
    "verify_equivalence",
    "exactness_family",
    "fundamental_functions",
]


@dataclass(frozen=True)
class EquivalenceReport:
    ystar: NormResult
    y: NormResult
    ratio: float
    k_upper_used: float
    within_sandwich: bool


def verify_equivalence(f: RealFn, V, mu: MeasureSpec, k_upper: float,
                       quad: QuadratureConfig = DEFAULT_QUAD) -> EquivalenceReport:
    """Both rearrangement norms of f in V and whether their ratio sits in
    [1, k_upper].  The lower constant 1 holds because the running average
    dominates the rearrangement pointwise."""
    ystar, y = y_quasinorms(f, V, mu, quad)
    if ystar.value == 0.0 or ystar.value == INF:
        raise ZeroNorm(f"base norm is {ystar.value}")
    ratio = y.value / ystar.value
    ok = (1.0 - 1e-8) <= ratio <= k_upper * (1.0 + 1e-8)
    return EquivalenceReport(ystar=ystar, y=y, ratio=ratio,
                             k_upper_used=k_upper, within_sandwich=ok)


def exactness_family(kappa: float):
    """The pair (1 - t^kappa, 1 - t^kappa/(kappa+1)) on (0, 1): a decreasing
    function together with the closed form of its running average."""
    if kappa <= 0:
        raise NonpositiveKappa("kappa must be > 0")
    k = float(kappa)

    def f_star(t):
        tv = np.minimum(np.asarray(t, dtype=float), 1.0)
        v = np.maximum(1.0 - tv ** k, 0.0)
        return float(v) if np.ndim(t) == 0 else v

    def f_star_anti(t):
        tv = min(float(t), 1.0)
        return tv - tv ** (k + 1.0) / (k + 1.0)

    def f_double(t):
        tv = np.asarray(t, dtype=float)
        inside = 1.0 - tv ** k / (k + 1.0)
        beyond = (1.0 - 1.0 / (k + 1.0)) / np.maximum(tv, 1.0)
        v = np.where(tv <= 1.0, inside, beyond)
        return float(v) if np.ndim(t) == 0 else v

    fstar = RealFn(domain=(0.0, 1.0), form="composite", fn=f_star,
                   monotone="nonincreasing", antiderivative=f_star_anti,
                   head=(0.0, 0.0))
    fss = RealFn(domain=(0.0, INF), form="composite", fn=f_double,
                 monotone="nonincreasing", head=(0.0, 0.0))
    return fstar, fss


@dataclass(frozen=True)
class FundamentalReport:
    """Norms of the rearrangement pair of an indicator of mass delta.

    ``additive`` is the sum formula with the mass-scaled tail delta/t;
    ``additive_printed`` uses the unscaled 1/t tail, kept for the
    discrepancy report.
    """

    star: float
    definitional: float
    additive: float
    additive_printed: float


def fundamental_functions(delta: float, V, mu: MeasureSpec,
                          quad: QuadratureConfig = DEFAULT_QUAD) -> FundamentalReport:
    """Fundamental functions of the derived pair at mass delta.

    The first value is the V-norm of the indicator of [0, delta]; the
    second the V-norm of its running average, computed definitionally.
    """
    if not (0.0 < delta < mu.total_mass):
        raise DeltaOutOfRange(f"delta={delta} outside (0, {mu.total_mass})")
    ind = indicator_fn(0.0, delta, domain=(0.0, mu.total_mass))
    star = V.norm_of(ind, quad).value

    upper = mu.total_mass
    g_star_star = RealFn(
        domain=(0.0, upper), form="composite",
        pieces=(Piece(1.0, 0.0, 0.0, 0.0, delta),
                Piece(delta, -1.0, 0.0, delta, upper)),
        monotone="nonincreasing")
    definitional = V.norm_of(g_star_star, quad).value

    tail_scaled = RealFn(domain=(0.0, upper), form="composite",
                         pieces=(Piece(delta, -1.0, 0.0, delta, upper),),
                         monotone="nonincreasing")
    tail_printed = RealFn(domain=(0.0, upper), form="composite",
                          pieces=(Piece(1.0, -1.0, 0.0, delta, upper),),
                          monotone="nonincreasing")
    additive = star + V.norm_of(tail_scaled, quad).value
    additive_printed = star + V.norm_of(tail_printed, quad).value
    return FundamentalReport(star=star, definitional=definitional,
                             additive=additive,
                             additive_printed=additive_printed)
