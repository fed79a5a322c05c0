"""Constant functionals and finiteness criteria for weighted averaging
inequalities: the gamma functional of sup-weighted spaces, the two-weight
supremum criteria (equal, increasing and decreasing exponent regimes), the
monotone-input bounds, the equal-weight criterion, exponent bookkeeping for
power weights, the explicit constant family for the power-weight inequality,
its multidimensional product, empirical operator-constant estimation, and the
exponent-transform of psi functions for Grand Lebesgue bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import integrate as _sciint

from ._search import log_grid, sup_search
from .errors import (
    EmptyFamily,
    ExponentDomain,
    ExponentOrder,
    InvalidParameter,
    ZeroNorm,
)
from .funcspace import (
    DEFAULT_QUAD,
    INF,
    CumulativeIntegral,
    QuadratureConfig,
    RealFn,
    WeightSpec,
    fn_pow,
    fn_product,
    integrate,
    power_fn,
)
from .hardy import hardy
from .norms import PsiFunction, validate_class_w

__all__ = [
    "ConstantReport",
    "ExponentQuad",
    "StepanovBounds",
    "RatioBounds",
    "gamma_w",
    "bradley_B",
    "bradley_Bpq",
    "mazja_B",
    "stepanov_bounds",
    "muckenhoupt_D",
    "validate_exponents",
    "k0_form1",
    "k0_form2",
    "k0_family",
    "K0Report",
    "k_multi",
    "estimate_KVH",
    "build_nu_r",
    "ratio_bounded",
]


@dataclass(frozen=True)
class ConstantReport:
    """A computed constant with provenance and an attached bracket when the
    criterion only pins the constant up to fixed factors."""

    value: float
    finite: bool
    formula_id: str
    sup_achieved_at: object = None
    error_estimate: float = 0.0
    bracket: Optional[tuple] = None
    note: Optional[str] = None


def _as_fn(weight) -> RealFn:
    if isinstance(weight, WeightSpec):
        return weight.as_realfn()
    return weight


def _safe_product(a: float, b: float) -> float:
    """Product for sup criteria: a factor of 0 wins over a factor of inf."""
    if a == 0.0 or b == 0.0:
        return 0.0
    if a == INF or b == INF:
        return INF
    return a * b


def _xpow(base: float, e: float) -> float:
    """Power with the 0^0 = 1 and inf^0 = 1 conventions of the constants."""
    if e == 0.0:
        return 1.0
    if base == 0.0:
        return 0.0 if e > 0 else INF
    if base == INF:
        return INF if e > 0 else 0.0
    return base ** e


# ---------------------------------------------------------------------------
# the gamma functional
# ---------------------------------------------------------------------------

def gamma_w(w: WeightSpec, quad: QuadratureConfig = DEFAULT_QUAD) -> ConstantReport:
    """sup over t of w(t)/t * integral of 1/w over (0, t)."""
    validate_class_w(w, quad)
    recip = w.reciprocal_realfn()
    cum = CumulativeIntegral(recip, quad)
    if cum.divergent_head:
        return ConstantReport(INF, False, "gamma-functional",
                              note="reciprocal weight not integrable at 0")

    def ratio(t: float) -> float:
        v = cum(t)
        return INF if v == INF else float(w(t)) / t * v

    r = sup_search(ratio, quad.lower_cut, quad.upper_cut)
    return ConstantReport(r.value, r.value < INF, "gamma-functional",
                          sup_achieved_at=r.arg,
                          error_estimate=quad.rel_tol * (r.value if r.value < INF else 0.0))


# ---------------------------------------------------------------------------
# two-weight supremum criteria
# ---------------------------------------------------------------------------

def _sup_two_factor(tail_fn, head_fn, e_tail: float, e_head: float,
                    quad: QuadratureConfig, extra=()) -> "tuple[float, float]":
    def term(r: float) -> float:
        return _safe_product(_xpow(tail_fn(r), e_tail), _xpow(head_fn(r), e_head))

    r = sup_search(term, quad.lower_cut, quad.upper_cut, extra=extra)
    return r.value, r.arg


def bradley_B(u, v, p: float, quad: QuadratureConfig = DEFAULT_QUAD) -> ConstantReport:
    """Equal-exponent two-weight criterion:
    sup_r (int_r^inf u^p)^{1/p} (int_0^r v^{-p'})^{1/p'}.

    The bracket attaches the implied bounds [B, p^{1/p} p'^{1/p'} B]; the
    sandwich factor never exceeds 2.
    """
    if p <= 1:
        raise InvalidParameter("p must be > 1")
    pp = p / (p - 1.0)
    ufn, vfn = _as_fn(u), _as_fn(v)
    upow = fn_pow(ufn, p)
    vneg = fn_pow(vfn, -pp)
    cum = CumulativeIntegral(vneg, quad)
    extra = tuple(ufn.breakpoints()) + tuple(vfn.breakpoints())
    value, arg = _sup_two_factor(lambda r: integrate(upow, (r, INF), quad),
                                 cum, 1.0 / p, 1.0 / pp, quad, extra)
    factor = p ** (1.0 / p) * pp ** (1.0 / pp)
    bracket = None if value == INF else (value, factor * value)
    return ConstantReport(value, value < INF, "bradley-supremum",
                          sup_achieved_at=arg, bracket=bracket,
                          note=f"sandwich factor {factor:.6f} <= 2")


def bradley_Bpq(u, v, p: float, q: float,
                quad: QuadratureConfig = DEFAULT_QUAD) -> ConstantReport:
    """Two-weight criterion for exponents 1 < p <= q < inf."""
    if not (1 < p <= q < INF):
        raise ExponentOrder("requires 1 < p <= q < inf (use mazja_B for q < p)")
    pp = p / (p - 1.0)
    ufn, vfn = _as_fn(u), _as_fn(v)
    upow = fn_pow(ufn, q)
    vneg = fn_pow(vfn, -pp)
    cum = CumulativeIntegral(vneg, quad)
    extra = tuple(ufn.breakpoints()) + tuple(vfn.breakpoints())
    value, arg = _sup_two_factor(lambda r: integrate(upow, (r, INF), quad),
                                 cum, 1.0 / q, 1.0 / pp, quad, extra)
    factor = p ** (1.0 / q) * pp ** (1.0 / pp)
    bracket = None if value == INF else (value, factor * value)
    return ConstantReport(value, value < INF, "bradley-supremum-pq",
                          sup_achieved_at=arg, bracket=bracket,
                          note=f"sandwich factor {factor:.6f}")


def mazja_B(u, v, p: float, q: float,
            quad: QuadratureConfig = DEFAULT_QUAD) -> ConstantReport:
    """Two-weight criterion for the regime 1 <= q < p < inf (triple
    integral), with the bracketing coefficients attached."""
    if not (1 <= q < p < INF):
        raise ExponentOrder("requires 1 <= q < p < inf")
    pp = p / (p - 1.0)
    ufn, vfn = _as_fn(u), _as_fn(v)
    uq = fn_pow(ufn, q)
    vneg = fn_pow(vfn, -pp)
    cumv = CumulativeIntegral(vneg, quad)

    tail_at_eps = integrate(uq, (quad.lower_cut, INF), quad)
    if tail_at_eps == INF:
        return ConstantReport(INF, False, "mazja-triple-integral",
                              note="upper weight tail not q-integrable")

    e_mid = p / (p - q)

    def integrand(x: float) -> float:
        uv = integrate(uq, (x, INF), quad)
        if uv == 0.0:
            return 0.0
        mid = uv if q == 1.0 else _safe_product(_xpow(cumv(x), q - 1.0), uv)
        if mid == INF:
            return INF
        return _xpow(mid, e_mid) * vneg._value(x)

    lo, hi = quad.lower_cut, quad.upper_cut
    pts = [math.log(b) for b in set(ufn.breakpoints()) | set(vfn.breakpoints())
           if lo < b < hi]
    # probe for an infinite integrand before integrating
    for x in log_grid(lo, hi, 64):
        if integrand(float(x)) == INF:
            return ConstantReport(INF, False, "mazja-triple-integral",
                                  note="integrand infinite inside the window")
    kw = dict(epsabs=0.0, epsrel=min(quad.rel_tol * 1e-2, 1e-9),
              limit=quad.max_subdivisions)
    if pts:
        kw["points"] = pts
    total, _ = _sciint.quad(lambda t: integrand(math.exp(t)) * math.exp(t),
                            math.log(lo), math.log(hi), **kw)
    value = _xpow(total, (p - q) / (p * q))
    lo_c = ((p - q) / (p - 1.0)) ** ((q - 1.0) / q) * q ** (1.0 / q)
    hi_c = (p / (p - 1.0)) ** ((q - 1.0) / q) * q ** (1.0 / q)
    bracket = None if value == INF else (lo_c * value, hi_c * value)
    return ConstantReport(value, value < INF, "mazja-triple-integral",
                          bracket=bracket,
                          note=f"bracket coefficients [{lo_c:.6f}, {hi_c:.6f}]")


# ---------------------------------------------------------------------------
# monotone-input bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StepanovBounds:
    a0: ConstantReport
    a1: ConstantReport
    b0: Optional[ConstantReport]
    b1: Optional[ConstantReport]
    regime: str              # 'sup' for p <= q, 'integral' for q < p
    bracket_sum: float       # A0 + A1 or B0 + B1, reported raw


def stepanov_bounds(w, v, p: float, q: float,
                    quad: QuadratureConfig = DEFAULT_QUAD) -> StepanovBounds:
    """The four functionals controlling the averaging operator on
    nonincreasing inputs; the scalar coefficients of the equivalence are not
    pinned, so the raw sums are reported."""
    if p <= 1:
        raise InvalidParameter("p must be > 1")
    pp = p / (p - 1.0)
    wfn, vfn = _as_fn(w), _as_fn(v)
    cum_w = CumulativeIntegral(wfn, quad)
    cum_v = CumulativeIntegral(vfn, quad)
    tail_wq = fn_product(power_fn(-q), wfn)
    extra = tuple(wfn.breakpoints()) + tuple(vfn.breakpoints())

    def a0_term(t: float) -> float:
        return _safe_product(_xpow(cum_w(t), 1.0 / q), _xpow(cum_v(t), -1.0 / p))

    r0 = sup_search(a0_term, quad.lower_cut, quad.upper_cut, extra=extra)
    a0 = ConstantReport(r0.value, r0.value < INF, "stepanov-a0", sup_achieved_at=r0.arg)

    def inner1(x: float) -> float:
        V = cum_v(x)
        if V == 0.0:
            return 0.0
        return x ** pp * _xpow(V, -pp) * vfn._value(x)

    inner1_fn = RealFn(domain=(0.0, INF), form="composite",
                       fn=lambda x: inner1(float(x)))
    cum_inner1 = CumulativeIntegral(inner1_fn, quad)

    def a1_term(t: float) -> float:
        tail = integrate(tail_wq, (t, INF), quad)
        return _safe_product(_xpow(tail, 1.0 / q), _xpow(cum_inner1(t), 1.0 / pp))

    r1 = sup_search(a1_term, quad.lower_cut, quad.upper_cut, n_grid=128, extra=extra)
    a1 = ConstantReport(r1.value, r1.value < INF, "stepanov-a1", sup_achieved_at=r1.arg)

    b0 = b1 = None
    if q < p:
        r_exp = 1.0 / (1.0 / q - 1.0 / p)
        qq = q / (q - 1.0) if q > 1 else INF
        eps = min(quad.rel_tol * 1e-2, 1e-9)

        def b0_integrand(t: float) -> float:
            base = _safe_product(_xpow(cum_w(t), 1.0 / p), _xpow(cum_v(t), -1.0 / p))
            return _xpow(base, r_exp) * wfn._value(t)

        v0, _ = _sciint.quad(lambda s: b0_integrand(math.exp(s)) * math.exp(s),
                             math.log(quad.lower_cut), math.log(quad.upper_cut),
                             epsabs=0.0, epsrel=eps, limit=quad.max_subdivisions)
        b0 = ConstantReport(_xpow(v0, 1.0 / r_exp), v0 < INF, "stepanov-b0")

        def b1_integrand(t: float) -> float:
            tail = integrate(tail_wq, (t, INF), quad)
            base = _safe_product(_xpow(tail, 1.0 / q),
                                 _xpow(cum_inner1(t), 1.0 / qq if qq != INF else 0.0))
            return _xpow(base, r_exp) * inner1(t)

        v1, _ = _sciint.quad(lambda s: b1_integrand(math.exp(s)) * math.exp(s),
                             math.log(quad.lower_cut), math.log(quad.upper_cut),
                             epsabs=0.0, epsrel=eps, limit=quad.max_subdivisions)
        b1 = ConstantReport(_xpow(v1, 1.0 / p), v1 < INF, "stepanov-b1")

    if p <= q:
        regime, total = "sup", a0.value + a1.value
    else:
        regime, total = "integral", b0.value + b1.value
    return StepanovBounds(a0=a0, a1=a1, b0=b0, b1=b1, regime=regime,
                          bracket_sum=total)


def muckenhoupt_D(w, p: float, quad: QuadratureConfig = DEFAULT_QUAD) -> ConstantReport:
    """Minimal D with: integral from t of s^{-p} w(s) ds <= D t^{-p} *
    integral of w over (0, t).

    The inner tail integral is read from t (reading it from 0 diverges
    already for w = 1); the convention is recorded on the report.
    """
    if p <= 1:
        raise InvalidParameter("p must be > 1")
    wfn = _as_fn(w)
    cum_w = CumulativeIntegral(wfn, quad)
    tail_fn = fn_product(power_fn(-p), wfn)

    def term(t: float) -> float:
        tail = integrate(tail_fn, (t, INF), quad)
        if tail == INF:
            return INF
        denom = cum_w(t)
        if denom == 0.0:
            return 0.0 if tail == 0.0 else INF
        return t ** p / denom * tail

    r = sup_search(term, quad.lower_cut, quad.upper_cut,
                   extra=wfn.breakpoints())
    return ConstantReport(r.value, r.value < INF, "muckenhoupt-ratio",
                          sup_achieved_at=r.arg,
                          note="tail integral taken from t, not from 0")


# ---------------------------------------------------------------------------
# exponent bookkeeping and the explicit constant family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExponentQuad:
    """Admissible (alpha, beta, p) with the induced q for the power-weight
    averaging inequality; d rescales the exponent relation."""

    alpha: float
    beta: float
    p: float
    q: float
    d: int = 1

    @property
    def delta(self) -> float:
        return self.alpha - self.beta

    @property
    def p0(self) -> float:
        return 1.0 / (1.0 - self.beta)

    @property
    def p_plus(self) -> float:
        return self.d / self.delta

    @property
    def q0(self) -> float:
        return 1.0 / (1.0 - self.alpha)


def validate_exponents(alpha: float, beta: float, p: float, d: int = 1) -> ExponentQuad:
    """Check the admissibility clauses and return the induced q.

    Rejections name the failed clause.
    """
    if not (0.0 <= alpha < 1.0):
        raise ExponentDomain("alpha-range", f"alpha={alpha} outside [0, 1)")
    if not (0.0 <= beta < 1.0):
        raise ExponentDomain("beta-range", f"beta={beta} outside [0, 1)")
    if not alpha > beta:
        raise ExponentDomain("order", f"need alpha > beta, got {alpha} <= {beta}")
    delta = alpha - beta
    p0 = 1.0 / (1.0 - beta)
    p_plus = d / delta
    if not p > p0:
        raise ExponentDomain("p-low", f"p={p} must exceed {p0}")
    if p > p_plus:
        raise ExponentDomain("p-high", f"p={p} exceeds {p_plus}")
    inv_q = 1.0 / p - delta / d
    q = INF if inv_q == 0.0 else 1.0 / inv_q
    q0 = 1.0 / (1.0 - alpha)
    if not q > q0:
        raise ExponentDomain("q-low", f"q={q} must exceed {q0}")
    return ExponentQuad(alpha=alpha, beta=beta, p=float(p), q=q, d=d)


def k0_form1(alpha: float, beta: float, p: float) -> float:
    """First displayed closed form; coincides with the two-weight supremum
    for the power weights, so it is the certified lower constant."""
    delta = alpha - beta
    p0 = 1.0 / (1.0 - beta)
    p_plus = 1.0 / delta
    return ((1.0 - beta) ** (delta - 1.0)
            * (p - 1.0) ** (1.0 - 1.0 / p)
            * _xpow(delta, 1.0 / p - delta)
            * _xpow(p_plus - p, 1.0 / p - delta)
            / _xpow(p - p0, 1.0 - delta))


def k0_form2(alpha: float, beta: float, p: float) -> float:
    """Second displayed closed form; differs from the first by the sign of
    the exponent on (1 + p(beta - alpha))."""
    return ((1.0 - beta) ** (alpha - beta - 1.0)
            * (p - 1.0) ** (1.0 - 1.0 / p)
            * _xpow(p - 1.0 / (1.0 - beta), alpha - beta - 1.0)
            * _xpow(1.0 + p * (beta - alpha), alpha - beta - 1.0 / p))


def _lower_bound_224(alpha: float, beta: float, p: float, flipped: bool) -> float:
    base = (_xpow(1.0 / (p - 1.0 / (1.0 - beta)), 1.0 - alpha + beta)
            * (1.0 - beta) ** (alpha - beta - 1.0) * p)
    e = alpha - beta - 1.0 / p
    if flipped:
        e = -e
    return base / _xpow(1.0 - p * (alpha - beta), e)


@dataclass(frozen=True)
class K0Report:
    """Both printed closed forms (they disagree), the resulting upper
    value, and the printed lower bound under both sign readings."""

    form1: float
    form2: float
    k_plus: float
    lower_bound: float          # literal reading of the printed fraction
    lower_bound_flipped: float  # same expression with the exponent sign flipped
    form_ratio: float
    lower_to_kplus: float


def k0_family(eq: ExponentQuad) -> K0Report:
    f1 = k0_form1(eq.alpha, eq.beta, eq.p)
    f2 = k0_form2(eq.alpha, eq.beta, eq.p)
    kp = 2.0 * f1
    lb = _lower_bound_224(eq.alpha, eq.beta, eq.p, flipped=False)
    lbf = _lower_bound_224(eq.alpha, eq.beta, eq.p, flipped=True)
    return K0Report(form1=f1, form2=f2, k_plus=kp, lower_bound=lb,
                    lower_bound_flipped=lbf, form_ratio=f2 / f1,
                    lower_to_kplus=lb / kp)


def k_multi(alphas: Sequence[float], betas: Sequence[float],
            ps: Sequence[float]) -> ConstantReport:
    """Product of the per-axis constants; the upper value uses 2 * form1 per
    axis and the bracket's lower end the per-axis form1 product."""
    if not (len(alphas) == len(betas) == len(ps)):
        raise InvalidParameter("alpha, beta, p vectors must share a length")
    upper = 1.0
    lower = 1.0
    for j, (a, b, p) in enumerate(zip(alphas, betas, ps)):
        try:
            validate_exponents(a, b, p, d=1)
        except ExponentDomain as err:
            raise ExponentDomain(err.clause, f"axis {j}: {err}") from err
        f1 = k0_form1(a, b, p)
        upper *= 2.0 * f1
        lower *= f1
    return ConstantReport(upper, math.isfinite(upper), "multiaxis-product",
                          bracket=(lower, upper),
                          note=f"product over {len(ps)} axes of 2*form1")


# ---------------------------------------------------------------------------
# empirical operator constant and psi transforms
# ---------------------------------------------------------------------------

def estimate_KVH(V, family, quad: QuadratureConfig = DEFAULT_QUAD) -> ConstantReport:
    """Certified lower bound on the operator constant over decreasing
    inputs: the best ratio norm(H g)/norm(g) over the supplied family."""
    best = -INF
    best_label = None
    count = 0
    for label, g in family:
        count += 1
        denom = V.norm_of(g, quad).value
        if denom == 0.0 or denom == INF:
            raise ZeroNorm(f"family member {label!r} has norm {denom}")
        num = V.norm_of(hardy(g, quad).fn, quad).value
        ratio = num / denom
        if ratio > best:
            best, best_label = ratio, label
    if count == 0:
        raise EmptyFamily("no family members supplied")
    return ConstantReport(best, best < INF, "operator-ratio-max",
                          sup_achieved_at=best_label,
                          note=f"maximum over {count} decreasing inputs")


def build_nu_r(psi: PsiFunction, alphas, betas) -> PsiFunction:
    """Transform a psi function on the input exponents into the matching
    function on the output exponents, scaled by the per-axis upper constants."""
    scalar = np.ndim(alphas) == 0
    a_vec = (float(alphas),) if scalar else tuple(float(a) for a in alphas)
    b_vec = (float(betas),) if scalar else tuple(float(b) for b in betas)
    deltas = tuple(a - b for a, b in zip(a_vec, b_vec))
    if any(d <= 0 for d in deltas):
        raise ExponentDomain("order", "need alpha > beta on every axis")

    def q_of_p(p: float, dlt: float) -> float:
        inv = 1.0 / p - dlt
        return INF if inv <= 0.0 else 1.0 / inv

    def p_of_q(q: float, dlt: float) -> float:
        return 1.0 / (1.0 / q + dlt) if q != INF else 1.0 / dlt

    def kplus(p: float, a: float, b: float) -> float:
        return 2.0 * k0_form1(a, b, p)

    if scalar or len(a_vec) == 1:
        a, b, dlt = a_vec[0], b_vec[0], deltas[0]
        if psi.form == "dirac":
            p_r = float(psi.r) if np.ndim(psi.r) == 0 else float(psi.r[0])
            validate_exponents(a, b, p_r)
            q_r = q_of_p(p_r, dlt)
            base = PsiFunction.dirac(q_r)
            kp = kplus(p_r, a, b)
            return PsiFunction(support=base.support, form="parametric",
                               fn=lambda q: kp if q == q_r else INF)
        A, B = psi.support if np.ndim(psi.support[0]) == 0 else psi.support[0]
        p0 = 1.0 / (1.0 - b)
        if A < p0 - 1e-12 or B > 1.0 / dlt + 1e-12:
            raise ExponentDomain(
                "support", f"psi support ({A}, {B}) leaves the admissible "
                f"exponent interval ({p0}, {1.0 / dlt}]")
        qa, qb = q_of_p(A, dlt), q_of_p(B, dlt)

        def nu(q: float) -> float:
            p = p_of_q(q, dlt)
            val = psi(p)
            if val == INF:
                return INF
            return val * kplus(p, a, b)

        return PsiFunction(support=(qa, qb), form="parametric", fn=nu)

    # box version: per-axis interval mapping
    supports = []
    for (A, B), dlt in zip(psi.support, deltas):
        supports.append((q_of_p(A, dlt), q_of_p(B, dlt)))

    def nu_vec(qvec) -> float:
        pvec = tuple(p_of_q(float(qv), dlt) for qv, dlt in zip(qvec, deltas))
        val = psi.fn(pvec) if psi.form == "parametric" else psi(pvec)
        if val == INF:
            return INF
        for p, a, b in zip(pvec, a_vec, b_vec):
            val *= kplus(p, a, b)
        return val

    return PsiFunction(support=tuple(supports), form="parametric", fn=nu_vec)


@dataclass(frozen=True)
class RatioBounds:
    inf_ratio: float
    sup_ratio: float
    bounded: bool


def ratio_bounded(L, M, quad: QuadratureConfig = DEFAULT_QUAD,
                  grid=None) -> RatioBounds:
    """Numeric inf and sup of L/M over the truncated window; the flag says
    whether both are finite and positive."""
    xs = np.asarray(grid, dtype=float) if grid is not None else log_grid(
        quad.lower_cut, quad.upper_cut, 512)
    lf = L if callable(L) else (lambda x: float(L(x)))
    mf = M if callable(M) else (lambda x: float(M(x)))
    ratios = np.array([float(lf(float(x))) / float(mf(float(x))) for x in xs])
    lo, hi = float(ratios.min()), float(ratios.max())
    return RatioBounds(inf_ratio=lo, sup_ratio=hi,
                       bounded=bool(lo > 0.0 and math.isfinite(hi)))
