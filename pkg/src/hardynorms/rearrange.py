"""Tail functions, decreasing rearrangement and the running average f**.

The tail function of f is t -> mu{|f| >= t}.  The rearrangement is its
generalized left inverse f*(t) = inf{s >= 0 : T(s) <= t}, which is
nonincreasing and right continuous, and sends an indicator of mass delta to
the indicator of [0, delta).  f**(t) = (1/t) * integral of f* over (0, t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidParameter
from .funcspace import (
    DEFAULT_QUAD,
    INF,
    Piece,
    QuadratureConfig,
    RealFn,
    integrate,
)

__all__ = [
    "MeasureSpec",
    "TailFunction",
    "tail_function",
    "decreasing_rearrangement",
    "rearrangement_of",
    "double_star",
    "max_integral_form",
]

_SAMPLE_NODES = 2 ** 14  # fixed budget for the sampling fallback


@dataclass(frozen=True)
class MeasureSpec:
    """Lebesgue measure on an interval or half-line; unit interval for the
    probability case (total mass exactly 1)."""

    kind: str
    a: float = 0.0
    b: float = INF

    @classmethod
    def interval(cls, a: float, b: float) -> "MeasureSpec":
        if not (0.0 <= a < b < INF):
            raise InvalidParameter("need 0 <= a < b < inf")
        return cls("lebesgue-interval", a, b)

    @classmethod
    def halfline(cls) -> "MeasureSpec":
        return cls("lebesgue-halfline", 0.0, INF)

    @classmethod
    def unit(cls) -> "MeasureSpec":
        return cls("probability-unit-interval", 0.0, 1.0)

    @property
    def total_mass(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class TailFunction:
    """t -> mu{|f| >= t}: nonincreasing, values in [0, total_mass].

    Step representation carries ``levels`` (strictly increasing thresholds)
    and ``masses``: T(t) = masses[k] on (levels[k-1], levels[k]], 0 above
    the last level.  ``approximate`` flags the sampling fallback.
    """

    total_mass: float
    levels: Optional[np.ndarray] = None
    masses: Optional[np.ndarray] = None
    fn: Optional[object] = None
    approximate: bool = False

    def __call__(self, t):
        if np.ndim(t) != 0:
            return np.array([self(float(v)) for v in np.asarray(t, dtype=float)])
        t = float(t)
        if t <= 0.0:
            return self.total_mass
        if self.levels is not None:
            idx = int(np.searchsorted(self.levels, t, side="left"))
            if idx >= len(self.levels):
                return 0.0
            return float(self.masses[idx])
        return float(self.fn(t))


def _step_tail_from_pieces(f: RealFn, mu: MeasureSpec) -> TailFunction:
    vals = {}
    for p in f.pieces:
        lo = max(p.lo, mu.a)
        hi = min(p.hi, mu.b)
        if hi <= lo:
            continue
        if p.coeff > 0.0:
            vals[p.coeff] = vals.get(p.coeff, 0.0) + (hi - lo)
    # remaining mass sits at value 0 and never enters the tail for t > 0
    levels = np.array(sorted(vals), dtype=float)
    masses = np.array([sum(vals[v] for v in vals if v >= lv) for lv in levels])
    return TailFunction(total_mass=mu.total_mass, levels=levels, masses=masses)


def _monotone_tail(f: RealFn, mu: MeasureSpec) -> TailFunction:
    """Tail of a monotone function via its inverse, or bisection of level sets."""
    lo, hi = max(f.domain[0], mu.a), min(f.domain[1], mu.b)
    decreasing = f.monotone == "nonincreasing"

    def boundary(t: float) -> float:
        # crossing point of the level f = t: the level set {f >= t} is
        # (lo, boundary) for decreasing f and (boundary, hi) for increasing f
        if f.inverse is not None:
            x = float(f.inverse(t))
            return min(max(x, lo), hi)
        a, b = lo, hi
        if b == INF:
            b = max(1.0, 2.0 * a)
            # grow until f(b) has crossed the level (decreasing: f(b) < t)
            for _ in range(2000):
                above = f._value(b) >= t
                if above != decreasing:
                    break
                b *= 2.0
                if b > 1e300:
                    return INF if decreasing else b
        probe = a if a > 0 else min(0.5 * b, 1e-300)
        if (f._value(probe) >= t) != decreasing:
            # level never reached (decreasing) or reached everywhere (increasing)
            return lo
        for _ in range(200):
            m = 0.5 * (a + b)
            if (f._value(m if m > 0 else probe) >= t) == decreasing:
                a = m
            else:
                b = m
        return 0.5 * (a + b)

    def tail(t: float) -> float:
        if t <= 0.0:
            return mu.total_mass
        x = boundary(t)
        if decreasing:
            return max(0.0, min(x, hi) - lo)
        return max(0.0, hi - max(x, lo))

    return TailFunction(total_mass=mu.total_mass, fn=tail)


def _sampled_tail(f: RealFn, mu: MeasureSpec, quad: QuadratureConfig) -> TailFunction:
    lo = max(mu.a, f.domain[0], quad.lower_cut)
    hi = min(mu.b, f.domain[1], quad.upper_cut)
    edges = np.exp(np.linspace(math.log(lo), math.log(hi), _SAMPLE_NODES + 1))
    mids = np.sqrt(edges[:-1] * edges[1:])
    lengths = np.diff(edges)
    fv = np.asarray(f(mids), dtype=float)
    order = np.argsort(fv, kind="stable")[::-1]
    fv_sorted = fv[order]
    cum = np.cumsum(lengths[order])
    pos = fv_sorted > 0.0
    levels_desc = fv_sorted[pos]
    cum = cum[pos]
    # collapse ties, keep the largest accumulated mass per level
    levels, masses = [], []
    for v, m in zip(levels_desc, cum):
        if levels and levels[-1] == v:
            masses[-1] = m
        else:
            levels.append(v)
            masses.append(m)
    levels = np.array(levels[::-1], dtype=float)
    masses = np.array(masses[::-1], dtype=float)
    return TailFunction(total_mass=mu.total_mass, levels=levels, masses=masses,
                        approximate=True)


def tail_function(f: RealFn, mu: MeasureSpec,
                  quad: QuadratureConfig = DEFAULT_QUAD) -> TailFunction:
    """Tail function of f under mu.

    Exact for piecewise-constant forms and for monotone forms (by inverse or
    bisection of level sets); otherwise estimated from a fixed budget of
    log-spaced samples, with ``approximate`` set on the result.
    """
    if f.pieces is not None and all(p.power == 0.0 and p.logpow == 0.0
                                    for p in f.pieces) and f.off_support == 0.0:
        return _step_tail_from_pieces(f, mu)
    if f.monotone in ("nonincreasing", "nondecreasing"):
        return _monotone_tail(f, mu)
    return _sampled_tail(f, mu, quad)


def _invert_step_tail(T: TailFunction) -> RealFn:
    """Left inverse of a step tail: a right-continuous decreasing step fn."""
    if len(T.levels) == 0:
        return RealFn(domain=(0.0, T.total_mass if T.total_mass < INF else INF),
                      form="piecewise-constant",
                      pieces=(Piece(0.0, 0.0, 0.0, 0.0, max(T.total_mass, 1.0)),),
                      monotone="nonincreasing")
    # T(s) = masses[k] for s in (levels[k-1], levels[k]]; inf{s: T(s) <= t}
    # jumps exactly at the masses, taking the level values
    pieces = []
    prev_mass = 0.0
    for lv, m in zip(T.levels[::-1], T.masses[::-1]):  # descending level order
        if m > prev_mass:
            pieces.append(Piece(lv, 0.0, 0.0, prev_mass, m))
            prev_mass = m
    hi = prev_mass if prev_mass > 0 else 1.0
    dom_hi = T.total_mass if T.total_mass < INF else INF
    return RealFn(domain=(0.0, dom_hi if dom_hi > 0 else hi),
                  form="piecewise-constant",
                  pieces=tuple(pieces) if pieces else (Piece(0.0, 0.0, 0.0, 0.0, hi),),
                  monotone="nonincreasing")


def decreasing_rearrangement(T: TailFunction) -> RealFn:
    """Generalized left inverse f*(t) = inf{s >= 0 : T(s) <= t}."""
    if T.levels is not None:
        return _invert_step_tail(T)
    tf = T

    def star(t: float) -> float:
        if t >= tf.total_mass:
            return 0.0
        if tf(0.0) <= t:
            return 0.0
        # grow the bracket until T(b) <= t
        b = 1.0
        for _ in range(2000):
            if tf(b) <= t:
                break
            b *= 2.0
            if b > 1e300:
                return INF
        a = 0.0
        for _ in range(200):
            m = 0.5 * (a + b)
            if tf(m) <= t:
                b = m
            else:
                a = m
        return b

    def fn(t):
        if np.ndim(t) == 0:
            return star(float(t))
        return np.array([star(float(v)) for v in np.asarray(t, dtype=float)])

    dom_hi = T.total_mass if T.total_mass < INF else INF
    return RealFn(domain=(0.0, dom_hi), form="composite", fn=fn,
                  monotone="nonincreasing")


def rearrangement_of(f: RealFn, mu: MeasureSpec,
                     quad: QuadratureConfig = DEFAULT_QUAD) -> RealFn:
    """f*, taking the shortcut for inputs that are already nonincreasing and
    right continuous from the left edge of the measure's support."""
    if f.monotone == "nonincreasing" and f.domain[0] == mu.a == 0.0:
        from .funcspace import restrict

        if mu.total_mass == INF or f.domain[1] <= mu.total_mass:
            return f
        return restrict(f, (0.0, mu.total_mass))
    return decreasing_rearrangement(tail_function(f, mu, quad))


def double_star(fstar: RealFn, t: float,
                quad: QuadratureConfig = DEFAULT_QUAD) -> float:
    """(1/t) * integral of f* over (0, t); +inf on a divergent head."""
    if t <= 0:
        raise InvalidParameter("t must be > 0")
    v = integrate(fstar, (0.0, t), quad)
    if v == INF:
        return INF
    return v / t


def max_integral_form(f: RealFn, mu: MeasureSpec, t: float,
                      quad: QuadratureConfig = DEFAULT_QUAD) -> float:
    """(1/t) * sup over sets E with mu(E) <= t of the integral of |f| on E.

    For a nonatomic measure this equals the running average of f*; the two
    routes are exposed separately so their equality is testable.
    """
    fstar = decreasing_rearrangement(tail_function(f, mu, quad))
    return double_star(fstar, t, quad)
