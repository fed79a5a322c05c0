"""Function representations and the deterministic quadrature engine.

Scalar functions on an interval of the positive half-line are carried as
:class:`RealFn`.  Closed forms (powers, powers with a log factor, indicators,
piecewise constants) are stored as a list of disjoint power-log pieces
``c * x^a * |log x|^d`` so that integrals, pointwise powers, products and
restrictions stay exact.  Everything else is a ``composite`` wrapping a
callable, optionally annotated with monotonicity, an inverse, an
antiderivative and head/tail growth exponents.

Improper integrals are computed on the log axis (x = e^u).  Power and
power-log pieces integrate in closed form (incomplete gamma on the log
axis); the adaptive fallback works on the truncated window
``[lower_cut, upper_cut]`` of the active :class:`QuadratureConfig`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate as _sciint
from scipy import special as _special

from .errors import (
    EmptyComponentList,
    InvalidParameter,
    NonConvergentQuadrature,
    NonpositiveScale,
    UnknownForm,
)

INF = math.inf

__all__ = [
    "QuadratureConfig",
    "RealFn",
    "MultiFn",
    "WeightSpec",
    "Piece",
    "make_function",
    "dilate",
    "tensor_product",
    "integrate",
    "CumulativeIntegral",
    "fn_pow",
    "fn_product",
    "fn_scale",
    "restrict",
    "power_fn",
    "indicator_fn",
    "DEFAULT_QUAD",
]


# ---------------------------------------------------------------------------
# quadrature configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureConfig:
    """Truncation window, node budget and tolerance for improper integrals.

    ``lower_cut``/``upper_cut`` bound the window used by the adaptive
    fallback (closed-form pieces integrate to their true endpoints).
    """

    lower_cut: float = 1e-8
    upper_cut: float = 1e8
    rel_tol: float = 1e-6
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (0 < self.lower_cut < self.upper_cut):
            raise InvalidParameter("need 0 < lower_cut < upper_cut")
        if not (0 < self.rel_tol <= 1e-2):
            raise InvalidParameter("rel_tol must lie in (0, 1e-2]")
        if self.max_subdivisions < 10:
            raise InvalidParameter("max_subdivisions too small")

    def with_(self, **kw) -> "QuadratureConfig":
        return replace(self, **kw)


DEFAULT_QUAD = QuadratureConfig()


# ---------------------------------------------------------------------------
# closed-form pieces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    """One closed-form piece ``coeff * x^power * |log x|^logpow`` on [lo, hi).

    A nonzero ``logpow`` requires the support to live entirely in [1, inf)
    or entirely in (0, 1], so |log x| is monotone on the piece.
    """

    coeff: float
    power: float = 0.0
    logpow: float = 0.0
    lo: float = 0.0
    hi: float = INF

    def __post_init__(self):
        if not (0.0 <= self.lo < self.hi):
            raise InvalidParameter("piece needs 0 <= lo < hi")
        if self.logpow != 0.0 and not (self.lo >= 1.0 or self.hi <= 1.0):
            raise InvalidParameter("log-power piece must not straddle x = 1")

    def value(self, x: float) -> float:
        if x < self.lo or x >= self.hi:
            return 0.0
        v = self.coeff * x ** self.power
        if self.logpow != 0.0:
            u = abs(math.log(x))
            if u == 0.0:
                return 0.0 if self.logpow > 0 else INF
            v *= u ** self.logpow
        return v

    def values(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros_like(x, dtype=float)
        m = (x >= self.lo) & (x < self.hi)
        if not m.any():
            return out
        xs = x[m]
        v = self.coeff * xs ** self.power
        if self.logpow != 0.0:
            with np.errstate(divide="ignore", invalid="ignore"):
                v = v * np.abs(np.log(xs)) ** self.logpow
        out[m] = v
        return out


def _pow_interval(a: float, c: float, d: float) -> float:
    """integral of x^a over (c, d), 0 <= c < d <= inf, exact and log-stable."""
    if c == d:
        return 0.0
    if a == -1.0:
        if c == 0.0 or d == INF:
            return INF
        return math.log(d / c)
    s = a + 1.0
    if d == INF:
        if s > 0:
            return INF
        return -(c ** s) / s  # s < 0
    if c == 0.0:
        if s < 0:
            return INF
        return d ** s / s
    # e^{s ln c} * expm1(s ln(d/c)) / s avoids cancellation for s ~ 0
    return math.exp(s * math.log(c)) * math.expm1(s * math.log(d / c)) / s


def _exp_mono_interval(lam: float, dpow: float, u1: float, u2: float) -> float:
    """integral of e^{-lam*u} u^dpow over (u1, u2) with 0 <= u1 < u2 <= inf, lam > 0."""
    if dpow <= -1.0 and u1 == 0.0:
        return INF
    if dpow > -1.0:
        # lower incomplete gamma, regularized
        p2 = 1.0 if u2 == INF else _special.gammainc(dpow + 1.0, lam * u2)
        p1 = 0.0 if u1 == 0.0 else _special.gammainc(dpow + 1.0, lam * u1)
        lg = _special.gammaln(dpow + 1.0)
        mass = p2 - p1
        if mass <= 0.0:
            return 0.0
        return math.exp(lg - (dpow + 1.0) * math.log(lam) + math.log(mass))
    # dpow <= -1 with u1 > 0: no incomplete-gamma form, integrate numerically
    hi = u2 if u2 != INF else u1 + max(50.0, 60.0 / lam)
    val, _ = _sciint.quad(lambda u: math.exp(-lam * u) * u ** dpow, u1, hi,
                          epsabs=0.0, epsrel=1e-12, limit=200)
    return val


def _piece_integral(p: Piece, c: float, d: float) -> float:
    """Exact integral of the piece over (c, d) ∩ [lo, hi)."""
    c = max(c, p.lo)
    d = min(d, p.hi)
    if d <= c:
        return 0.0
    if p.coeff == 0.0:
        return 0.0
    if p.logpow == 0.0:
        return p.coeff * _pow_interval(p.power, c, d)
    s = p.power + 1.0
    if p.lo >= 1.0:
        # u = log x in [0, inf)
        u1, u2 = math.log(c), (INF if d == INF else math.log(d))
        if s == 0.0:
            dp = p.logpow
            if u2 == INF:
                return INF if dp >= -1.0 else (p.coeff * (-(u1 ** (dp + 1.0)) / (dp + 1.0))
                                               if u1 > 0 else INF)
            if dp == -1.0:
                if u1 == 0.0:
                    return INF
                return p.coeff * math.log(u2 / u1)
            if u1 == 0.0 and dp < -1.0:
                return INF
            return p.coeff * (u2 ** (dp + 1.0) - u1 ** (dp + 1.0)) / (dp + 1.0)
        if s < 0:
            return p.coeff * _exp_mono_interval(-s, p.logpow, u1, u2)
        # growing exponential on the log axis
        if u2 == INF:
            return INF
        val, _ = _sciint.quad(lambda u: math.exp(s * u) * u ** p.logpow, u1, u2,
                              epsabs=0.0, epsrel=1e-12, limit=200)
        return p.coeff * val
    # support inside (0, 1]: v = -log x in [0, inf)
    v1 = 0.0 if d >= 1.0 else -math.log(d)
    v2 = INF if c == 0.0 else -math.log(c)
    if s == 0.0:
        dp = p.logpow
        if v2 == INF:
            if dp >= -1.0 or v1 == 0.0:
                return INF
            return p.coeff * (-(v1 ** (dp + 1.0)) / (dp + 1.0))
        if dp == -1.0:
            return INF if v1 == 0.0 else p.coeff * math.log(v2 / v1)
        if v1 == 0.0 and dp < -1.0:
            return INF
        return p.coeff * (v2 ** (dp + 1.0) - v1 ** (dp + 1.0)) / (dp + 1.0)
    if s > 0:
        return p.coeff * _exp_mono_interval(s, p.logpow, v1, v2)
    if v2 == INF:
        return INF
    val, _ = _sciint.quad(lambda v: math.exp(-s * v) * v ** p.logpow, v1, v2,
                          epsabs=0.0, epsrel=1e-12, limit=200)
    return p.coeff * val


# ---------------------------------------------------------------------------
# RealFn
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealFn:
    """Evaluatable nonnegative function on an interval of (0, inf].

    ``pieces`` carries the closed form when there is one; ``fn`` is the raw
    callable for composite forms.  ``off_support`` is the value taken
    outside every piece (``+inf`` for reciprocal-type functions).
    """

    domain: tuple = (0.0, INF)
    form: str = "composite"
    pieces: Optional[tuple] = None
    fn: Optional[Callable] = None
    off_support: float = 0.0
    monotone: Optional[str] = None          # 'nonincreasing' | 'nondecreasing'
    inverse: Optional[Callable] = None
    antiderivative: Optional[Callable] = None
    head: Optional[tuple] = None            # (power, logpow) as x -> 0+
    tail: Optional[tuple] = None            # (power, logpow) as x -> inf

    def __call__(self, x):
        if isinstance(x, np.ndarray):
            return self._values(x)
        return self._value(float(x))

    def _value(self, x: float) -> float:
        if self.pieces is not None:
            for p in self.pieces:
                if p.lo <= x < p.hi:
                    return p.value(x)
            return self.off_support
        return float(self.fn(x))

    def _values(self, x: np.ndarray) -> np.ndarray:
        if self.pieces is not None:
            out = np.full(x.shape, self.off_support, dtype=float)
            for p in self.pieces:
                m = (x >= p.lo) & (x < p.hi)
                if m.any():
                    out[m] = p.values(x)[m]
            return out
        try:
            return np.asarray(self.fn(x), dtype=float)
        except (TypeError, ValueError):
            return np.array([float(self.fn(float(v))) for v in x])

    # -- metadata helpers ---------------------------------------------------

    def breakpoints(self) -> list:
        """Interior structure points, used as quadrature/sup-search hints."""
        pts = set()
        if self.pieces is not None:
            for p in self.pieces:
                for v in (p.lo, p.hi):
                    if 0.0 < v < INF:
                        pts.add(v)
        for v in self.domain:
            if 0.0 < v < INF:
                pts.add(v)
        return sorted(pts)

    def head_behavior(self) -> Optional[tuple]:
        if self.pieces is not None:
            lead = min(self.pieces, key=lambda p: p.lo)
            if lead.lo == 0.0 and lead.coeff != 0.0:
                return (lead.power, lead.logpow)
            return (0.0, 0.0) if self.off_support == 0.0 else None
        return self.head

    def tail_behavior(self) -> Optional[tuple]:
        if self.pieces is not None:
            last = max(self.pieces, key=lambda p: p.hi)
            if last.hi == INF and last.coeff != 0.0:
                return (last.power, last.logpow)
            return (0.0, -INF) if self.off_support == 0.0 else None
        return self.tail

    def is_zero(self) -> bool:
        return (self.pieces is not None and self.off_support == 0.0
                and all(p.coeff == 0.0 for p in self.pieces))


def power_fn(exponent: float, coeff: float = 1.0, support=(0.0, INF),
             domain=(0.0, INF)) -> RealFn:
    mono = "nonincreasing" if exponent <= 0 and coeff >= 0 else "nondecreasing"
    return RealFn(domain=domain, form="power",
                  pieces=(Piece(coeff, exponent, 0.0, support[0], support[1]),),
                  monotone=mono if coeff != 0 else "nonincreasing")


def indicator_fn(a: float, b: float, domain=(0.0, INF)) -> RealFn:
    return RealFn(domain=domain, form="indicator",
                  pieces=(Piece(1.0, 0.0, 0.0, a, b),))


def _tab_interp(x_nodes, y_nodes):
    lx = np.log(np.asarray(x_nodes, dtype=float))
    ly = np.asarray(y_nodes, dtype=float)

    def fn(x):
        return np.interp(np.log(x), lx, ly)

    return fn


def make_function(spec: dict) -> RealFn:
    """Build a :class:`RealFn` from a structured description.

    Supported forms: ``power``, ``power-log``, ``indicator``,
    ``piecewise-constant``, ``tabulated``, ``composite`` and the sugar form
    ``exp`` (c * e^{-rate x}, stored as an annotated composite).
    """
    if "form" not in spec:
        raise UnknownForm("function spec needs a 'form' key")
    form = spec["form"]
    domain = tuple(spec.get("domain", (0.0, INF)))
    domain = (float(domain[0]), INF if domain[1] in (None, "inf") else float(domain[1]))

    def _support(default):
        sup = spec.get("support", default)
        lo = float(sup[0])
        hi = INF if sup[1] in (None, "inf") else float(sup[1])
        return lo, hi

    if form == "power":
        lo, hi = _support((0.0, INF))
        return power_fn(float(spec["exponent"]), float(spec.get("coeff", 1.0)),
                        (lo, hi), domain)
    if form == "power-log":
        lo, hi = _support((1.0, INF))
        dlt = float(spec["log_exponent"])
        if not (lo >= 1.0 or hi <= 1.0):
            raise InvalidParameter("power-log support must not straddle x = 1")
        return RealFn(domain=domain, form="power-log",
                      pieces=(Piece(float(spec.get("coeff", 1.0)),
                                    float(spec["exponent"]), dlt, lo, hi),))
    if form == "indicator":
        a, b = spec["set"]
        a, b = float(a), (INF if b in (None, "inf") else float(b))
        if "log_exponent" in spec:
            raise InvalidParameter("indicator form takes no log exponent")
        if not (0.0 <= a < b):
            raise InvalidParameter("indicator set must satisfy 0 <= a < b")
        return indicator_fn(a, b, domain)
    if form == "piecewise-constant":
        brk = [float(v) for v in spec["breakpoints"]]
        vals = [float(v) for v in spec["values"]]
        if len(vals) != len(brk) - 1:
            raise InvalidParameter("need one value per breakpoint gap")
        if any(v < 0 for v in vals):
            raise InvalidParameter("values must be nonnegative")
        pieces = tuple(Piece(v, 0.0, 0.0, brk[i], brk[i + 1])
                       for i, v in enumerate(vals))
        mono = "nonincreasing" if all(vals[i] >= vals[i + 1] for i in range(len(vals) - 1)) else None
        return RealFn(domain=domain, form="piecewise-constant", pieces=pieces,
                      monotone=mono)
    if form == "tabulated":
        fn = _tab_interp(spec["x"], spec["y"])
        return RealFn(domain=domain, form="tabulated", fn=fn)
    if form == "exp":
        rate = float(spec.get("rate", 1.0))
        c = float(spec.get("coeff", 1.0))
        if rate <= 0:
            raise InvalidParameter("exp form needs rate > 0")
        return RealFn(
            domain=domain, form="composite",
            fn=lambda x: c * np.exp(-rate * np.minimum(np.asarray(x, dtype=float), 700.0 / rate)),
            monotone="nonincreasing",
            inverse=lambda t: -math.log(t / c) / rate if 0 < t <= c else (0.0 if t > c else INF),
            antiderivative=lambda x: 0.0 if x == INF else -(c / rate) * math.exp(-rate * x),
            head=(0.0, 0.0), tail=None)
    if form == "composite":
        return RealFn(domain=domain, form="composite", fn=spec["fn"],
                      monotone=spec.get("monotone"),
                      inverse=spec.get("inverse"),
                      antiderivative=spec.get("antiderivative"),
                      head=spec.get("head"), tail=spec.get("tail"))
    raise UnknownForm(f"unsupported form {form!r}")


# ---------------------------------------------------------------------------
# algebra on RealFn
# ---------------------------------------------------------------------------

def fn_pow(f: RealFn, p: float) -> RealFn:
    """Pointwise |f|^p, keeping the closed form when there is one.

    Negative p gives the reciprocal power, which is +inf wherever f
    vanishes (tracked through ``off_support`` for piece forms).
    """
    if p == 1.0:
        return f
    if f.pieces is not None and f.off_support == 0.0:
        pieces = tuple(Piece(abs(pc.coeff) ** p if pc.coeff != 0.0 else (0.0 if p > 0 else INF),
                             pc.power * p, pc.logpow * p, pc.lo, pc.hi)
                       for pc in f.pieces)
        return RealFn(domain=f.domain, form=f.form, pieces=pieces,
                      monotone=f.monotone, off_support=0.0 if p > 0 else INF)
    g = f

    def fn(x):
        with np.errstate(divide="ignore"):
            return np.asarray(g(x), dtype=float) ** p

    def _scale(beh):
        return None if beh is None else (beh[0] * p, beh[1] * p)

    return RealFn(domain=f.domain, form="composite", fn=fn, monotone=f.monotone,
                  head=_scale(f.head_behavior()), tail=_scale(f.tail_behavior()))


def fn_scale(f: RealFn, c: float) -> RealFn:
    """Pointwise c*f for c >= 0."""
    if c < 0:
        raise InvalidParameter("functions are nonnegative; use c >= 0")
    if f.pieces is not None:
        pieces = tuple(Piece(pc.coeff * c, pc.power, pc.logpow, pc.lo, pc.hi)
                       for pc in f.pieces)
        return replace(f, pieces=pieces)
    g = f
    anti = (None if f.antiderivative is None
            else (lambda x, _a=f.antiderivative, _c=c: _c * _a(x)))
    return RealFn(domain=f.domain, form="composite",
                  fn=lambda x: c * np.asarray(g(x), dtype=float),
                  monotone=f.monotone, antiderivative=anti,
                  head=f.head, tail=f.tail)


def _merge_pieces(fp: Sequence[Piece], gp: Sequence[Piece]) -> tuple:
    out = []
    for a in fp:
        for b in gp:
            lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
            if lo >= hi:
                continue
            if a.logpow != 0.0 and b.logpow != 0.0 and not (lo >= 1.0 or hi <= 1.0):
                return None
            out.append(Piece(a.coeff * b.coeff, a.power + b.power,
                             a.logpow + b.logpow, lo, hi))
    return tuple(out)


def fn_product(f: RealFn, g: RealFn) -> RealFn:
    """Pointwise product, closed-form when both factors are piece-form."""
    dom = (max(f.domain[0], g.domain[0]), min(f.domain[1], g.domain[1]))
    if (f.pieces is not None and g.pieces is not None
            and f.off_support == 0.0 and g.off_support == 0.0):
        pieces = _merge_pieces(f.pieces, g.pieces)
        if pieces is not None:
            return RealFn(domain=dom, form="composite" if len(pieces) != 1 else f.form,
                          pieces=pieces)
    ff, gg = f, g

    def fn(x):
        return np.asarray(ff(x), dtype=float) * np.asarray(gg(x), dtype=float)

    def _add(a, b):
        if a is None or b is None:
            return None
        return (a[0] + b[0], a[1] + b[1])

    return RealFn(domain=dom, form="composite", fn=fn,
                  head=_add(f.head_behavior(), g.head_behavior()),
                  tail=_add(f.tail_behavior(), g.tail_behavior()))


def restrict(f: RealFn, interval) -> RealFn:
    """Restrict f to an interval (zero outside)."""
    lo, hi = float(interval[0]), (INF if interval[1] is None else float(interval[1]))
    if f.pieces is not None and f.off_support == 0.0:
        pieces = tuple(Piece(p.coeff, p.power, p.logpow, max(p.lo, lo), min(p.hi, hi))
                       for p in f.pieces if max(p.lo, lo) < min(p.hi, hi))
        if not pieces:
            pieces = (Piece(0.0, 0.0, 0.0, lo, hi),)
        return RealFn(domain=(lo, hi), form=f.form, pieces=pieces, monotone=f.monotone)
    g = f

    def fn(x):
        xv = np.asarray(x, dtype=float)
        return np.where((xv >= lo) & (xv < hi), np.asarray(g(x), dtype=float), 0.0)

    return RealFn(domain=(lo, hi), form="composite", fn=fn,
                  head=f.head_behavior() if lo == 0.0 else None,
                  tail=f.tail_behavior() if hi == INF else None)


def dilate(f, lam: float):
    """Dilation x -> f(lam * x); works on RealFn and MultiFn."""
    if lam <= 0:
        raise NonpositiveScale("dilation factor must be > 0")
    if isinstance(f, MultiFn):
        factors = None if f.factors is None else tuple(dilate(g, lam) for g in f.factors)
        base = f

        def fn(point):
            return base(tuple(lam * v for v in point))

        return MultiFn(dim=f.dim, fn=fn if factors is None else None, factors=factors)
    if lam == 1.0:
        return f
    dom = (f.domain[0] / lam, f.domain[1] / lam if f.domain[1] != INF else INF)
    if f.pieces is not None and all(p.logpow == 0.0 for p in f.pieces):
        pieces = tuple(Piece(p.coeff * lam ** p.power, p.power, 0.0,
                             p.lo / lam, p.hi / lam if p.hi != INF else INF)
                       for p in f.pieces)
        return RealFn(domain=dom, form=f.form, pieces=pieces,
                      off_support=f.off_support, monotone=f.monotone)
    g = f

    def fn(x):
        return np.asarray(g(np.asarray(x, dtype=float) * lam), dtype=float)

    inv = None if f.inverse is None else (lambda t, _i=f.inverse: _i(t) / lam)
    anti = (None if f.antiderivative is None
            else (lambda x, _a=f.antiderivative: _a(lam * x) / lam))
    hb, tb = f.head_behavior(), f.tail_behavior()
    return RealFn(domain=dom, form="composite", fn=fn, monotone=f.monotone,
                  inverse=inv, antiderivative=anti, head=hb, tail=tb)


# ---------------------------------------------------------------------------
# multivariate functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultiFn:
    """Function on the open octant (0, inf)^d.

    ``factors`` is kept when the function is a tensor product, so mixed
    norms and per-axis averages can use the factorized route.
    """

    dim: int
    fn: Optional[Callable] = None
    factors: Optional[tuple] = None

    def __call__(self, point) -> float:
        if self.factors is not None:
            v = 1.0
            for g, x in zip(self.factors, point):
                v *= float(g(float(x)))
            return v
        return float(self.fn(tuple(float(x) for x in point)))

    def slice1d(self, axis: int, point) -> RealFn:
        """The 1-D section along `axis` with the other coordinates frozen."""
        if self.factors is not None:
            c = 1.0
            for j, (g, x) in enumerate(zip(self.factors, point)):
                if j != axis:
                    c *= float(g(float(x)))
            return fn_scale(self.factors[axis], c)
        base = self
        fixed = tuple(float(x) for x in point)

        def fn(x):
            xv = np.asarray(x, dtype=float)
            if xv.ndim == 0:
                pt = list(fixed)
                pt[axis] = float(xv)
                return base(pt)
            out = np.empty(xv.shape)
            for i, v in enumerate(xv.ravel()):
                pt = list(fixed)
                pt[axis] = float(v)
                out.ravel()[i] = base(pt)
            return out

        return RealFn(domain=(0.0, INF), form="composite", fn=fn)


def tensor_product(components: Sequence[RealFn]) -> MultiFn:
    """Tensor product of 1-D functions on (0, inf)."""
    comps = tuple(components)
    if not comps:
        raise EmptyComponentList("tensor product needs at least one factor")
    return MultiFn(dim=len(comps), factors=comps)


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightSpec:
    """Parametric weight c * x^exponent * slow(x).

    ``slow`` is None, ``("log1p", d)`` for (1 + log(1+x))^d, or a callable
    slowly varying factor.  A pure power is exactly homogeneous:
    w(lam x) = lam^exponent w(x).
    """

    exponent: float
    coeff: float = 1.0
    slow: object = None

    def _slow_value(self, x):
        if self.slow is None:
            return 1.0
        if callable(self.slow):
            return self.slow(x)
        kind, d = self.slow
        if kind == "log1p":
            return (1.0 + np.log1p(x)) ** d
        raise InvalidParameter(f"unknown slow part {kind!r}")

    def __call__(self, x):
        xv = np.asarray(x, dtype=float)
        v = self.coeff * xv ** self.exponent * self._slow_value(xv)
        return float(v) if np.ndim(x) == 0 else v

    @property
    def behavior_zero(self) -> float:
        return self.exponent

    @property
    def behavior_inf(self) -> float:
        return self.exponent

    def is_pure_power(self) -> bool:
        return self.slow is None

    def as_realfn(self, domain=(0.0, INF)) -> RealFn:
        if self.is_pure_power():
            return power_fn(self.exponent, self.coeff, domain, domain)
        w = self

        def fn(x):
            return w(x)

        return RealFn(domain=domain, form="composite", fn=fn,
                      head=(self.exponent, 0.0), tail=(self.exponent, 0.0))

    def reciprocal_realfn(self, domain=(0.0, INF)) -> RealFn:
        if self.is_pure_power():
            return power_fn(-self.exponent, 1.0 / self.coeff, domain, domain)
        w = self

        def fn(x):
            return 1.0 / w(x)

        return RealFn(domain=domain, form="composite", fn=fn,
                      head=(-self.exponent, 0.0), tail=(-self.exponent, 0.0))


# ---------------------------------------------------------------------------
# integration
# ---------------------------------------------------------------------------

def _divergent_head(beh) -> bool:
    if beh is None:
        return False
    a, d = beh
    return a < -1.0 or (a == -1.0 and d >= -1.0)


def _divergent_tail(beh) -> bool:
    if beh is None:
        return False
    a, d = beh
    if d == -INF:        # compact support marker
        return False
    return a > -1.0 or (a == -1.0 and d >= -1.0)


def _numeric_log_axis(f: RealFn, a: float, b: float, quad: QuadratureConfig) -> float:
    lo = max(a, quad.lower_cut)
    hi = min(b, quad.upper_cut)
    if hi <= lo:
        return 0.0
    u1, u2 = math.log(lo), math.log(hi)

    def integrand(u):
        x = math.exp(u)
        return f._value(x) * x

    pts = [math.log(v) for v in f.breakpoints() if lo < v < hi]
    kw = dict(epsabs=0.0, epsrel=min(quad.rel_tol * 1e-2, 1e-9),
              limit=quad.max_subdivisions, full_output=1)
    if pts:
        kw["points"] = pts
    res = _sciint.quad(integrand, u1, u2, **kw)
    val, err = res[0], res[1]
    if math.isnan(val):
        raise NonConvergentQuadrature("integrand produced NaN")
    if err > quad.rel_tol * max(abs(val), 1e-300) and err > 1e-12:
        raise NonConvergentQuadrature(
            f"estimated error {err:.3e} above tolerance for value {val:.6e}")
    return val


def integrate(f: RealFn, interval, quad: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Integral of f over the interval, +inf on detected divergence.

    Closed-form pieces integrate to their true endpoints; the adaptive
    fallback works on the log axis over the truncated config window and is
    bitwise deterministic for a fixed config.
    """
    a = float(interval[0])
    b = INF if interval[1] is None else float(interval[1])
    if a < 0:
        raise InvalidParameter("integration interval must sit in [0, inf]")
    if b <= a:
        return 0.0

    if f.pieces is not None:
        if f.off_support == INF:
            # reciprocal-type function: +inf off the pieces, so any gap of
            # positive measure inside (a, b) makes the integral infinite
            spans = sorted((p.lo, p.hi) for p in f.pieces)
            cursor = a
            for lo, hi in spans:
                if lo > cursor:
                    return INF
                cursor = max(cursor, hi)
                if cursor >= b:
                    break
            if cursor < b:
                return INF
        total = 0.0
        for p in f.pieces:
            v = _piece_integral(p, a, b)
            if v == INF:
                return INF
            total += v
        return total

    if a == 0.0 and _divergent_head(f.head_behavior()):
        return INF
    if b == INF and _divergent_tail(f.tail_behavior()):
        return INF

    if f.antiderivative is not None:
        fa = f.antiderivative(a)
        fb = f.antiderivative(b)
        return fb - fa

    return _numeric_log_axis(f, a, b, quad)


class CumulativeIntegral:
    """Running integral x -> ∫_0^x f, memoized per evaluation point.

    Each value is computed independently of earlier probes, so results do
    not depend on probe order.
    """

    def __init__(self, f: RealFn, quad: QuadratureConfig = DEFAULT_QUAD):
        self.f = f
        self.quad = quad
        self._cache = {}
        self.divergent_head = (f.pieces is None and _divergent_head(f.head_behavior())) or (
            f.pieces is not None and any(
                p.lo == 0.0 and p.coeff != 0.0 and _divergent_head((p.power, p.logpow))
                for p in f.pieces))

    def __call__(self, x: float) -> float:
        if self.divergent_head:
            return INF
        v = self._cache.get(x)
        if v is None:
            v = integrate(self.f, (0.0, x), self.quad)
            self._cache[x] = v
        return v
