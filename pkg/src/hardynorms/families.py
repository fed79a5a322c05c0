"""Built-in test-function families.

Random families are driven by a caller-supplied numpy Generator so the
harness can record the PRNG and seed; everything else is deterministic.
"""

from __future__ import annotations

import math

import numpy as np

from .funcspace import INF, Piece, RealFn, indicator_fn, make_function, power_fn

__all__ = [
    "exp_decay",
    "log_power_extremal",
    "truncated_power",
    "truncated_power_family",
    "near_extremal_log",
    "random_decreasing_step",
    "random_step_functions",
    "random_test_functions",
    "canonical_decreasing",
]


def exp_decay(rate: float = 1.0, coeff: float = 1.0) -> RealFn:
    return make_function({"form": "exp", "rate": rate, "coeff": coeff})


def log_power_extremal(delta: float) -> RealFn:
    """x^{-1} (log x)^delta on (1, inf): the family whose averaging ratio
    climbs to the sharp constant as delta grows."""
    return make_function({"form": "power-log", "exponent": -1.0,
                          "log_exponent": float(delta), "support": (1.0, None)})


def truncated_power(p: float, depth: float) -> RealFn:
    """t^{-1/p} on [e^{-depth}, 1]: near-extremal decreasing input for the
    averaging operator on L_p; the ratio approaches p/(p-1) as depth grows."""
    a = math.exp(-depth)
    return RealFn(domain=(0.0, INF), form="power",
                  pieces=(Piece(1.0, -1.0 / p, 0.0, a, 1.0),),
                  monotone="nonincreasing")


def truncated_power_family(p: float, depths=(5.0, 20.0, 80.0, 200.0, 400.0)):
    return [(f"depth={d:g}", truncated_power(p, d)) for d in depths]


def near_extremal_log(nu: float, domain=(0.0, 1.0)) -> RealFn:
    """t^{-nu} / (1 + |log t|) on (0, 1)."""

    def fn(t):
        tv = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            v = np.where((tv > 0) & (tv < 1.0),
                         tv ** (-nu) / (1.0 + np.abs(np.log(np.maximum(tv, 1e-300)))),
                         0.0)
        return float(v) if np.ndim(t) == 0 else v

    return RealFn(domain=domain, form="composite", fn=fn,
                  monotone="nonincreasing" if nu >= 0 else None,
                  head=(-nu, 0.0))


def random_decreasing_step(rng: np.random.Generator, max_steps: int = 8,
                           domain=(0.0, 1.0)) -> RealFn:
    """Random nonincreasing step function on the unit interval."""
    k = int(rng.integers(2, max_steps + 1))
    cuts = np.sort(rng.uniform(0.05, 0.95, size=k - 1))
    brk = np.concatenate([[domain[0]], cuts * (domain[1] - domain[0]) + domain[0],
                          [domain[1]]])
    increments = rng.exponential(1.0, size=k)
    values = np.cumsum(increments[::-1])[::-1]  # strictly decreasing, positive
    pieces = tuple(Piece(float(values[i]), 0.0, 0.0, float(brk[i]), float(brk[i + 1]))
                   for i in range(k))
    return RealFn(domain=domain, form="piecewise-constant", pieces=pieces,
                  monotone="nonincreasing")


def random_step_functions(rng: np.random.Generator, n: int, **kw):
    return [(f"step#{i}", random_decreasing_step(rng, **kw)) for i in range(n)]


def random_test_functions(rng: np.random.Generator, n: int):
    """Mixed bag of positive functions on the half-line with finite L_p
    norms for every p > 1: truncated powers, bumps and step functions."""
    out = []
    for i in range(n):
        kind = i % 3
        if kind == 0:
            a = float(rng.uniform(0.05, 0.6))
            lo = float(rng.uniform(1e-4, 0.1))
            out.append((f"power#{i}",
                        RealFn(domain=(0.0, INF), form="power",
                               pieces=(Piece(1.0, -a, 0.0, lo, 1.0),),
                               monotone="nonincreasing")))
        elif kind == 1:
            lo = float(rng.uniform(0.01, 0.5))
            hi = lo + float(rng.uniform(0.1, 2.0))
            c = float(rng.uniform(0.2, 3.0))
            out.append((f"bump#{i}",
                        RealFn(domain=(0.0, INF), form="indicator",
                               pieces=(Piece(c, 0.0, 0.0, lo, hi),))))
        else:
            out.append((f"step#{i}", random_decreasing_step(rng, domain=(0.0, 1.0))))
    return out


def canonical_decreasing(mass: float = 1.0):
    """Deterministic nonincreasing functions supported in (0, mass), used
    as the shared family for equivalence and identity checks."""
    fam = [
        ("constant", power_fn(0.0, 1.0, (0.0, mass), (0.0, mass))),
        ("indicator-0.3", indicator_fn(0.0, 0.3 * mass, domain=(0.0, mass))),
        ("indicator-0.7", indicator_fn(0.0, 0.7 * mass, domain=(0.0, mass))),
        ("power--0.25", RealFn(domain=(0.0, mass), form="power",
                               pieces=(Piece(1.0, -0.25, 0.0, 0.0, mass),),
                               monotone="nonincreasing")),
        ("two-steps", RealFn(domain=(0.0, mass), form="piecewise-constant",
                             pieces=(Piece(2.0, 0.0, 0.0, 0.0, 0.25 * mass),
                                     Piece(0.5, 0.0, 0.0, 0.25 * mass, mass)),
                             monotone="nonincreasing")),
    ]
    if mass >= 1.0:
        fam.append(("exp", exp_decay()))
    return fam
