"""Norm functionals: weighted Lebesgue, anisotropic mixed, tail and
Marcinkiewicz suprema, the rearrangement pair, and (anisotropic) Grand
Lebesgue norms.

Supremum-type norms run the shared grid + golden-section engine over the
truncated window of the active quadrature config, with structure points of
the argument injected as extra candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from ._search import log_grid, sup_search
from .errors import (
    EmptyFamily,
    InfiniteAtGridPoint,
    InvalidParameter,
    InvalidWeight,
)
from .funcspace import (
    DEFAULT_QUAD,
    INF,
    MultiFn,
    QuadratureConfig,
    RealFn,
    WeightSpec,
    fn_pow,
    fn_product,
    indicator_fn,
    integrate,
    restrict,
)
from .hardy import hardy
from .rearrange import MeasureSpec, rearrangement_of

__all__ = [
    "NormResult",
    "PsiFunction",
    "lp_norm",
    "lp_norm_multi",
    "mixed_norm",
    "tail_quasinorm",
    "marcinkiewicz_norm",
    "y_quasinorms",
    "grand_lebesgue_norm",
    "agls_norm",
    "natural_function",
    "validate_class_w",
    "LebesgueSpace",
    "SupWeightedSpace",
    "GrandLebesgueSpace",
]


@dataclass(frozen=True)
class NormResult:
    value: float
    achieved_at: object = None
    error_estimate: float = 0.0

    def __float__(self):
        return float(self.value)


# ---------------------------------------------------------------------------
# weighted Lebesgue norms
# ---------------------------------------------------------------------------

def _weight_fn(weight, domain) -> Optional[RealFn]:
    if weight is None:
        return None
    if isinstance(weight, WeightSpec):
        return weight.as_realfn(domain)
    return weight


def lp_norm(f: RealFn, p: float, weight=None,
            quad: QuadratureConfig = DEFAULT_QUAD) -> NormResult:
    """(integral of |f|^p * b)^{1/p} over f's domain; essential sup for
    p = inf (the weight is ignored there)."""
    if p != INF and p < 1:
        raise InvalidParameter("p must be >= 1 or inf")
    if p == INF:
        lo = max(f.domain[0], quad.lower_cut)
        hi = min(f.domain[1], quad.upper_cut)
        r = sup_search(lambda x: abs(f._value(x)), lo, hi,
                       extra=f.breakpoints())
        return NormResult(r.value, achieved_at=r.arg)
    g = fn_pow(f, p)
    b = _weight_fn(weight, f.domain)
    if b is not None:
        g = fn_product(g, b)
    v = integrate(g, f.domain, quad)
    if v == INF:
        return NormResult(INF)
    return NormResult(v ** (1.0 / p), error_estimate=quad.rel_tol * max(v, 0.0) ** (1.0 / p))


def lp_norm_multi(f: MultiFn, p: float,
                  quad: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Plain L_p norm on the octant, computed as one nested integral of
    |f|^p (the unlayered route, used to cross-check |f|_{p,...,p})."""
    from scipy import integrate as _sciint

    lo, hi = quad.lower_cut, quad.upper_cut
    eps = min(quad.rel_tol * 1e-2, 1e-8)

    def level(k: int, fixed: tuple) -> float:
        if k == f.dim:
            return f(fixed) ** p

        def integrand(u):
            x = math.exp(u)
            return level(k + 1, fixed + (x,)) * x

        val, _ = _sciint.quad(integrand, math.log(lo), math.log(hi),
                              epsabs=0.0, epsrel=eps, limit=quad.max_subdivisions)
        return val

    return level(0, ()) ** (1.0 / p)


# ---------------------------------------------------------------------------
# mixed (anisotropic) norms
# ---------------------------------------------------------------------------

def _axis_norm(inner: Callable[[float], float], p: float, weight,
               quad: QuadratureConfig) -> float:
    lo, hi = quad.lower_cut, quad.upper_cut
    if p == INF:
        return sup_search(inner, lo, hi, n_grid=256).value
    from scipy import integrate as _sciint

    w = weight if weight is not None else (lambda x: 1.0)
    eps = min(quad.rel_tol * 1e-2, 1e-8)

    def integrand(u):
        x = math.exp(u)
        return inner(x) ** p * w(x) * x

    val, _ = _sciint.quad(integrand, math.log(lo), math.log(hi),
                          epsabs=0.0, epsrel=eps, limit=quad.max_subdivisions)
    return val ** (1.0 / p)


def _iterated_mixed(f: MultiFn, pvec, weights, quad) -> float:
    d = f.dim

    def reduce_axis(k: int, fixed_tail: tuple) -> float:
        # fixed_tail holds x_{k+2}, ..., x_d (coordinates above level k)
        if k == 0:
            def inner(x1):
                return abs(f((x1,) + fixed_tail))
        else:
            def inner(xk):
                return reduce_axis(k - 1, (xk,) + fixed_tail)
        w = None if weights is None else weights[k]
        wf = None if w is None else (w if callable(w) else w)
        return _axis_norm(inner, pvec[k], wf, quad)

    return reduce_axis(d - 1, ())


def mixed_norm(f: MultiFn, p: Sequence[float], weights=None,
               quad: QuadratureConfig = DEFAULT_QUAD,
               cross_check: Optional[bool] = None) -> NormResult:
    """Iterated norm with the first coordinate innermost.

    For tensor products the factorized product of 1-D norms is used; by
    default (d <= 2) it is cross-checked against the fully iterated
    quadrature and the gap lands in ``error_estimate``.
    """
    p = tuple(float(v) if v not in (None, "inf") else INF for v in p)
    if len(p) != f.dim:
        raise InvalidParameter("one exponent per axis required")
    if any(v != INF and v < 1 for v in p):
        raise InvalidParameter("exponents must be >= 1 or inf")
    if f.factors is not None:
        value = 1.0
        for j, (g, pj) in enumerate(zip(f.factors, p)):
            wj = None if weights is None else weights[j]
            value *= lp_norm(g, pj, weight=wj, quad=quad).value
        do_check = cross_check if cross_check is not None else (f.dim <= 2)
        err = 0.0
        if do_check:
            wfs = None
            if weights is not None:
                wfs = [None if w is None else (w if callable(w) else w) for w in weights]
            iterated = _iterated_mixed(f, p, wfs, quad)
            err = abs(value - iterated)
        return NormResult(value, error_estimate=err)
    wfs = None
    if weights is not None:
        wfs = [None if w is None else (w if callable(w) else w) for w in weights]
    return NormResult(_iterated_mixed(f, p, wfs, quad))


# ---------------------------------------------------------------------------
# tail and Marcinkiewicz suprema
# ---------------------------------------------------------------------------

def validate_class_w(w: WeightSpec, quad: QuadratureConfig = DEFAULT_QUAD) -> None:
    """Admissible weights are continuous, strictly increasing, 0 at 0+ and
    unbounded at infinity."""
    if not isinstance(w, WeightSpec):
        raise InvalidWeight("weight must be a WeightSpec")
    if w.coeff <= 0:
        raise InvalidWeight("weight must be positive")
    if w.is_pure_power():
        if w.exponent <= 0:
            raise InvalidWeight("pure power weight needs exponent > 0")
        return
    xs = log_grid(quad.lower_cut, quad.upper_cut, 256)
    vals = np.asarray(w(xs), dtype=float)
    if not np.all(np.diff(vals) > 0):
        raise InvalidWeight("weight is not strictly increasing")
    if not (vals[0] < 1e-3 * vals[-1]):
        raise InvalidWeight("weight does not separate 0+ from infinity")


def _sup_weighted(g: RealFn, w: WeightSpec, quad: QuadratureConfig,
                  upper: float = INF, extra=()) -> NormResult:
    """sup of w(t)|g(t)| over (0, upper), exact on step functions."""
    hi = min(upper, quad.upper_cut, g.domain[1] if g.domain[1] > 0 else INF)
    lo = quad.lower_cut
    if g.pieces is not None and all(p.power == 0.0 and p.logpow == 0.0
                                    for p in g.pieces) and g.off_support == 0.0:
        best_v, best_t = 0.0, lo
        for p in g.pieces:
            if p.coeff == 0.0:
                continue
            t = min(p.hi, hi)
            if t <= p.lo:
                continue
            v = p.coeff * float(w(t))  # w increasing: sup on [lo, hi) at the right edge
            if v > best_v:
                best_v, best_t = v, t
        return NormResult(best_v, achieved_at=best_t)
    r = sup_search(lambda t: float(w(t)) * abs(g._value(t)), lo, hi,
                   extra=tuple(g.breakpoints()) + tuple(extra))
    return NormResult(r.value, achieved_at=r.arg)


def tail_quasinorm(f: RealFn, w: WeightSpec, mu: MeasureSpec,
                   quad: QuadratureConfig = DEFAULT_QUAD) -> NormResult:
    """sup of w(t) f*(t)."""
    validate_class_w(w, quad)
    fstar = rearrangement_of(f, mu, quad)
    return _sup_weighted(fstar, w, quad)


def marcinkiewicz_norm(f: RealFn, w: WeightSpec, mu: MeasureSpec,
                       quad: QuadratureConfig = DEFAULT_QUAD,
                       extra_points=()) -> NormResult:
    """sup of w(t) f**(t)."""
    validate_class_w(w, quad)
    fstar = rearrangement_of(f, mu, quad)
    fss = hardy(fstar, quad).fn
    extra = tuple(fstar.breakpoints()) + tuple(extra_points)
    if mu.total_mass < INF:
        extra += (mu.total_mass,)
    r = sup_search(lambda t: float(w(t)) * fss._value(t),
                   quad.lower_cut, quad.upper_cut, extra=extra)
    return NormResult(r.value, achieved_at=r.arg)


# ---------------------------------------------------------------------------
# space descriptors and the rearrangement norm pair
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LebesgueSpace:
    """L_p(b) over an interval of the half-line."""

    p: float
    weight: object = None
    domain: tuple = (0.0, INF)

    def norm_of(self, g: RealFn, quad: QuadratureConfig = DEFAULT_QUAD) -> NormResult:
        return lp_norm(restrict(g, self.domain), self.p, weight=self.weight, quad=quad)

    def label(self) -> str:
        return f"Lp(p={self.p}, domain={self.domain})"


@dataclass(frozen=True)
class SupWeightedSpace:
    """sup-weighted space: norm sup_t w(t)|g(t)| over (0, upper)."""

    w: WeightSpec
    upper: float = INF

    def norm_of(self, g: RealFn, quad: QuadratureConfig = DEFAULT_QUAD) -> NormResult:
        validate_class_w(self.w, quad)
        return _sup_weighted(g, self.w, quad, upper=self.upper)

    def label(self) -> str:
        return f"SupWeighted(exponent={self.w.exponent})"


@dataclass(frozen=True)
class GrandLebesgueSpace:
    """Grand Lebesgue space over a psi function."""

    psi: "PsiFunction"
    domain: tuple = (0.0, INF)

    def norm_of(self, g: RealFn, quad: QuadratureConfig = DEFAULT_QUAD) -> NormResult:
        return grand_lebesgue_norm(restrict(g, self.domain), self.psi, quad=quad)

    def label(self) -> str:
        return "GrandLebesgue"


def y_quasinorms(f: RealFn, V, mu: MeasureSpec,
                 quad: QuadratureConfig = DEFAULT_QUAD):
    """The pair (norm of f* in V, norm of f** in V)."""
    fstar = rearrangement_of(f, mu, quad)
    fss = hardy(fstar, quad).fn
    return V.norm_of(fstar, quad), V.norm_of(fss, quad)


# ---------------------------------------------------------------------------
# Grand Lebesgue norms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PsiFunction:
    """Positive function of the exponent, +inf off its open support.

    Forms: ``parametric`` (callable), ``natural`` (tabulated sup of a
    family), ``dirac`` (finite at one exponent only, recovering L_r).
    """

    support: tuple
    form: str = "parametric"
    fn: Optional[Callable] = None
    r: object = None
    grid: Optional[np.ndarray] = None
    values: Optional[np.ndarray] = None

    def __call__(self, p):
        if self.form == "dirac":
            if np.ndim(p) == 0:
                return 1.0 if p == self.r else INF
            pv = np.asarray(p, dtype=float)
            return np.where(pv == self.r, 1.0, INF)
        a, b = self.support
        if self.form == "natural":
            if np.ndim(p) == 0:
                if not (a <= p <= b):
                    return INF
                return float(np.interp(p, self.grid, self.values))
            pv = np.asarray(p, dtype=float)
            out = np.interp(pv, self.grid, self.values)
            return np.where((pv >= a) & (pv <= b), out, INF)
        if np.ndim(p) == 0:
            if not (a < p < b):
                return INF
            return float(self.fn(p))
        pv = np.asarray(p, dtype=float)
        out = np.full(pv.shape, INF)
        m = (pv > a) & (pv < b)
        if m.any():
            out[m] = [float(self.fn(v)) for v in pv[m]]
        return out

    @classmethod
    def dirac(cls, r) -> "PsiFunction":
        if np.ndim(r) == 0:
            return cls(support=(float(r), float(r)), form="dirac", r=float(r))
        return cls(support=tuple((float(v), float(v)) for v in r), form="dirac",
                   r=tuple(float(v) for v in r))

    @classmethod
    def constant(cls, value: float, support) -> "PsiFunction":
        if value <= 0:
            raise InvalidParameter("psi must be positive")
        return cls(support=support, form="parametric", fn=lambda p: value)

    @classmethod
    def from_callable(cls, fn: Callable, support) -> "PsiFunction":
        return cls(support=support, form="parametric", fn=fn)


def grand_lebesgue_norm(f: RealFn, psi: PsiFunction, mu: MeasureSpec = None,
                        quad: QuadratureConfig = DEFAULT_QUAD,
                        p_grid=None) -> NormResult:
    """sup over p of |f|_p / psi(p) by grid scan plus local refinement.

    The dirac form short-circuits to the plain L_r norm; tabulated psi
    functions are scanned on their own grid without refinement.
    """
    if mu is not None:
        f = restrict(f, (mu.a, mu.b))
    if psi.form == "dirac":
        r = lp_norm(f, psi.r, quad=quad)
        return NormResult(r.value, achieved_at=psi.r, error_estimate=r.error_estimate)

    def ratio(p: float) -> float:
        d = psi(p)
        if d == INF:
            return -INF
        v = lp_norm(f, p, quad=quad).value
        return v / d

    if psi.form == "natural":
        ps = psi.grid if p_grid is None else np.asarray(p_grid, dtype=float)
        vals = [ratio(float(p)) for p in ps]
        i = int(np.argmax(vals))
        return NormResult(float(vals[i]), achieved_at=float(ps[i]))
    a, b = psi.support
    if p_grid is not None:
        ps = np.asarray(p_grid, dtype=float)
        lo, hi = float(ps.min()), float(ps.max())
        r = sup_search(ratio, lo, hi, n_grid=len(ps), log_axis=False, xtol=1e-4,
                       extra=tuple(float(v) for v in ps))
        return NormResult(r.value, achieved_at=r.arg)
    # open support: stay strictly inside, probing one-sided limits at the ends
    b_eff = min(b, 64.0)
    span = b_eff - a
    inset = min(1e-6, 1e-6 * span)
    lo = a + inset
    hi = (b_eff - inset) if b_eff == b else b_eff
    n = max(16, min(1024, int(span / 1e-2) + 1))
    r = sup_search(ratio, lo, hi, n_grid=n, log_axis=False, xtol=1e-4,
                   extra=(lo, hi))
    return NormResult(r.value, achieved_at=r.arg)


def agls_norm(f: MultiFn, psi: PsiFunction,
              quad: QuadratureConfig = DEFAULT_QUAD, grid=None) -> NormResult:
    """sup over exponent vectors of |f|_p / psi(p) on a product grid, with a
    coordinate-wise golden polish around the best point."""
    from ._search import golden_max

    if psi.form == "dirac":
        r = mixed_norm(f, psi.r, quad=quad, cross_check=False)
        return NormResult(r.value, achieved_at=psi.r)

    def ratio(pvec) -> float:
        d = _psi_box_value(psi, pvec)
        if d == INF:
            return -INF
        return mixed_norm(f, pvec, quad=quad, cross_check=False).value / d

    if grid is None:
        axes = []
        for (a, b) in psi.support:
            b_eff = min(b, 16.0)
            axes.append(np.linspace(a + 1e-3, b_eff - 1e-3 if b_eff == b else b_eff, 8))
    else:
        axes = [np.asarray(g, dtype=float) for g in grid]
    best_v, best_p = -INF, None
    for idx in np.ndindex(*[len(ax) for ax in axes]):
        pvec = tuple(float(axes[j][i]) for j, i in enumerate(idx))
        v = ratio(pvec)
        if v > best_v:
            best_v, best_p = v, pvec
    if best_p is None:
        raise InfiniteAtGridPoint("psi infinite on the whole grid")
    # one golden pass per coordinate around the best grid point
    refined = list(best_p)
    for j, (a, b) in enumerate(psi.support):
        ax = axes[j]
        step = ax[1] - ax[0] if len(ax) > 1 else 0.1
        lo = max(a + 1e-6, refined[j] - step)
        hi = min(b - 1e-6 if b < INF else refined[j] + step, refined[j] + step)

        def along(x, _j=j):
            pv = list(refined)
            pv[_j] = x
            return ratio(tuple(pv))

        r = golden_max(along, lo, hi, xtol=1e-3)
        if r.value > best_v:
            best_v = r.value
            refined[j] = r.arg
    return NormResult(best_v, achieved_at=tuple(refined))


def _psi_box_value(psi: PsiFunction, pvec) -> float:
    if psi.form == "dirac":
        return 1.0 if tuple(pvec) == tuple(psi.r) else INF
    for (a, b), p in zip(psi.support, pvec):
        if not (a < p < b):
            return INF
    return float(psi.fn(tuple(pvec)))


def natural_function(family: Sequence[RealFn], p_grid,
                     quad: QuadratureConfig = DEFAULT_QUAD) -> PsiFunction:
    """psi(p) = sup over the family of |xi|_p, tabulated on the grid.

    Grid points where some member has an infinite norm are dropped from the
    support; an empty family or an empty surviving grid is an error.
    """
    members = list(family)
    if not members:
        raise EmptyFamily("natural function needs at least one member")
    ps, vals = [], []
    for p in p_grid:
        p = float(p)
        v = max(lp_norm(g, p, quad=quad).value for g in members)
        if v < INF:
            ps.append(p)
            vals.append(v)
    if not ps:
        raise InfiniteAtGridPoint("family norm infinite at every grid point")
    grid = np.asarray(ps, dtype=float)
    return PsiFunction(support=(float(grid.min()), float(grid.max())),
                       form="natural", grid=grid,
                       values=np.asarray(vals, dtype=float))
