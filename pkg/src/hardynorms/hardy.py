"""Hardy (Cesàro) averaging operators.

``hardy`` is f -> (1/t) * integral of f over (0, t).  The weighted variant
applies power factors before and after.  On the octant, ``hardy_axis``
averages along one coordinate and ``hardy_d`` over the whole box; the box
version is computed directly so its agreement with the composition of
one-axis averages is a real test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _sciint

from .funcspace import (
    DEFAULT_QUAD,
    INF,
    CumulativeIntegral,
    MultiFn,
    QuadratureConfig,
    RealFn,
    fn_product,
    power_fn,
)

__all__ = ["HardyResult", "hardy", "hardy_weighted", "hardy_axis", "hardy_d"]


@dataclass(frozen=True)
class HardyResult:
    fn: RealFn
    singular_head: bool = False


def hardy(f: RealFn, quad: QuadratureConfig = DEFAULT_QUAD) -> HardyResult:
    """Running average of f.  Nonincreasing inputs give nonincreasing
    outputs dominating the input pointwise."""
    cum = CumulativeIntegral(f, quad)
    singular = cum.divergent_head

    def fn(t):
        if np.ndim(t) != 0:
            return np.array([fn(float(v)) for v in np.asarray(t, dtype=float)])
        t = float(t)
        if t <= 0.0:
            return INF if singular else f._value(max(t, 1e-300))
        v = cum(t)
        return INF if v == INF else v / t

    mono = "nonincreasing" if f.monotone == "nonincreasing" else None
    tail = (-1.0, 0.0)  # the average decays like (total integral)/t
    out = RealFn(domain=(0.0, INF), form="composite", fn=fn, monotone=mono,
                 head=f.head_behavior(), tail=tail)
    return HardyResult(fn=out, singular_head=singular)


def hardy_weighted(g: RealFn, alpha: float, beta: float,
                   quad: QuadratureConfig = DEFAULT_QUAD) -> RealFn:
    """x^alpha * hardy(x^{-beta} g)(x)."""
    inner = fn_product(power_fn(-beta), g)
    h = hardy(inner, quad).fn

    def fn(x):
        if np.ndim(x) != 0:
            return np.array([fn(float(v)) for v in np.asarray(x, dtype=float)])
        x = float(x)
        if x <= 0.0:
            return 0.0
        return x ** alpha * h._value(x)

    return RealFn(domain=g.domain, form="composite", fn=fn)


def hardy_axis(f: MultiFn, axis: int,
               quad: QuadratureConfig = DEFAULT_QUAD) -> MultiFn:
    """Average along one coordinate, the others held fixed."""
    if not (0 <= axis < f.dim):
        raise IndexError("axis out of range")
    if f.factors is not None:
        factors = list(f.factors)
        factors[axis] = hardy(factors[axis], quad).fn
        return MultiFn(dim=f.dim, factors=tuple(factors))
    base = f

    def fn(point):
        x = float(point[axis])
        if x <= 0.0:
            return 0.0
        section = base.slice1d(axis, point)
        v = CumulativeIntegral(section, quad)(x)
        return INF if v == INF else v / x

    return MultiFn(dim=f.dim, fn=fn)


def _box_integral(f: MultiFn, corner, quad: QuadratureConfig) -> float:
    """Integral of f over the box (0, x_1] x ... x (0, x_d], nested on the
    log axis of each coordinate."""
    lo = quad.lower_cut
    eps = min(quad.rel_tol * 1e-2, 1e-8)

    def level(k: int, fixed: tuple) -> float:
        hi = float(corner[k])
        if hi <= lo:
            return 0.0
        if k == f.dim - 1:
            def integrand(u):
                x = math.exp(u)
                return f(fixed + (x,)) * x
        else:
            def integrand(u):
                x = math.exp(u)
                return level(k + 1, fixed + (x,)) * x
        val, _ = _sciint.quad(integrand, math.log(lo), math.log(hi),
                              epsabs=0.0, epsrel=eps,
                              limit=quad.max_subdivisions)
        return val

    return level(0, ())


def hardy_d(f: MultiFn, quad: QuadratureConfig = DEFAULT_QUAD) -> MultiFn:
    """Box average (prod x_j)^{-1} * integral over (0, x_1] x ... x (0, x_d]."""
    if f.factors is not None:
        return MultiFn(dim=f.dim,
                       factors=tuple(hardy(g, quad).fn for g in f.factors))
    base = f

    def fn(point):
        vol = 1.0
        for x in point:
            if float(x) <= 0.0:
                return 0.0
            vol *= float(x)
        v = _box_integral(base, tuple(float(x) for x in point), quad)
        return INF if v == INF else v / vol

    return MultiFn(dim=f.dim, fn=fn)
