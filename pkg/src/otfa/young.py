"""Young and quasi-Young functions, convex conjugates, and order bookkeeping.

A Young function Phi0 is convex on [0, inf), vanishes at 0 and tends to
infinity.  A quasi-Young function of order r0 in (0, 1] is Phi(t) = Phi0(t**r0).
Infinite values are represented by IEEE inf, which every downstream reduction
(sums, max) propagates correctly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

__all__ = [
    "YoungFunction",
    "power",
    "indicator",
    "entropy",
    "cosh_minus_one",
    "exp_minus_one",
    "custom_young",
    "parse_young",
    "conjugate",
    "dominates_near_zero",
]

_BUILTIN_KINDS = ("power", "indicator", "entropy", "cosh", "expm1", "custom")


@dataclass(frozen=True)
class YoungFunction:
    """A quasi-Young function Phi(t) = Phi0(t**order).

    kind:   one of power | indicator | entropy | cosh | expm1 | custom
    param:  exponent p for power, threshold a for indicator
    coeff:  multiplicative scale, Phi(t) = coeff * base(t)  (power kind only)
    order:  the quasi-Young order r0 in (0, 1]
    fn:     evaluator of Phi itself, for the custom kind
    """

    kind: str
    param: float = 0.0
    coeff: float = 1.0
    order: float = 1.0
    fn: Optional[Callable] = field(default=None, compare=False)
    name: str = ""

    def __post_init__(self):
        if self.kind not in _BUILTIN_KINDS:
            raise ValueError(f"unknown Young function kind {self.kind!r}")
        if not 0.0 < self.order <= 1.0:
            raise ValueError("quasi-Young order must lie in (0, 1]")
        if self.kind == "power":
            if self.param <= 0 or self.coeff <= 0:
                raise ValueError("power kind needs positive exponent and coefficient")
            if self.param / self.order < 1.0 - 1e-12:
                raise ValueError(
                    f"power exponent p={self.param} with order r0={self.order} "
                    "gives a non-convex base (need p/r0 >= 1)"
                )
        if self.kind == "indicator" and self.param <= 0:
            raise ValueError("indicator kind needs a positive threshold")
        if self.kind == "custom" and self.fn is None:
            raise ValueError("custom kind needs an evaluator")

    # -- evaluation ---------------------------------------------------------

    def __call__(self, t):
        """Evaluate Phi(t) for t >= 0 (scalar or ndarray); may return inf."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0):
            raise ValueError("Young functions are defined on [0, inf) only")
        return self._eval_phi(t)

    def _eval_phi(self, t):
        k = self.kind
        with np.errstate(over="ignore"):
            if k == "power":
                return self.coeff * t**self.param
            if k == "indicator":
                return np.where(t <= self.param, 0.0, np.inf)
            if k == "entropy":
                return t * np.log1p(t)
            if k == "cosh":
                return np.cosh(t) - 1.0
            if k == "expm1":
                return np.expm1(t) - t
            return np.asarray(self.fn(t), dtype=float)

    def base(self, u):
        """Evaluate the Young function Phi0(u) = Phi(u**(1/order))."""
        u = np.asarray(u, dtype=float)
        if self.kind == "power":
            # exact exponent, avoids the (u**(1/r0))**p rounding chain
            with np.errstate(over="ignore"):
                return self.coeff * u ** (self.param / self.order)
        if self.kind == "indicator":
            return np.where(u <= self.param**self.order, 0.0, np.inf)
        if self.order == 1.0:
            return self._eval_phi(u)
        with np.errstate(invalid="ignore"):
            return self._eval_phi(u ** (1.0 / self.order))

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        if self.kind == "power":
            c = "" if self.coeff == 1.0 else f"{self.coeff:g}*"
            s = f"{c}power:{self.param:g}"
        elif self.kind == "indicator":
            s = f"indicator:{self.param:g}"
        else:
            s = self.kind
        return s if self.order == 1.0 else f"{s}@{self.order:g}"

    def with_order(self, order: float) -> "YoungFunction":
        return YoungFunction(self.kind, self.param, self.coeff, order, self.fn, self.name)


# -- constructors -----------------------------------------------------------


def power(p: float, order: float = None, coeff: float = 1.0) -> YoungFunction:
    """Phi(t) = coeff * t**p, declared order r0 (default min(p, 1))."""
    if order is None:
        order = min(p, 1.0)
    return YoungFunction("power", param=p, coeff=coeff, order=order)


def indicator(a: float = 1.0, order: float = 1.0) -> YoungFunction:
    """Phi(t) = 0 for t <= a, inf for t > a.  indicator(1) generates sup norms."""
    return YoungFunction("indicator", param=a, order=order)


def entropy(order: float = 1.0) -> YoungFunction:
    """Phi(t) = t * log(1 + t)."""
    return YoungFunction("entropy", order=order)


def cosh_minus_one(order: float = 1.0) -> YoungFunction:
    """Phi(t) = cosh(t) - 1."""
    return YoungFunction("cosh", order=order)


def exp_minus_one(order: float = 1.0) -> YoungFunction:
    """Phi(t) = exp(t) - t - 1."""
    return YoungFunction("expm1", order=order)


def custom_young(fn: Callable, order: float = 1.0, name: str = "custom",
                 t_max: float = 64.0, samples: int = 400) -> YoungFunction:
    """Wrap a user evaluator of Phi, sample-validating the implied Phi0.

    Checks on a log/linear sample grid of [0, t_max]: Phi0(0) = 0, Phi0
    nondecreasing, midpoint convexity, and growth at the right endpoint.
    Convexity is validated, not proven.
    """
    yf = YoungFunction("custom", order=order, fn=fn, name=name)
    grid = np.concatenate([[0.0], np.geomspace(1e-8, t_max, samples - 1)])
    vals = yf.base(grid)
    finite = np.isfinite(vals)
    if not (vals[0] == 0.0):
        raise ValueError(f"{name}: Phi0(0) must equal 0")
    dif = np.diff(vals[finite])
    if np.any(dif < -1e-12):
        raise ValueError(f"{name}: Phi0 must be nondecreasing")
    mid = 0.5 * (grid[:-2] + grid[2:])
    vmid = yf.base(mid)
    chord = 0.5 * (vals[:-2] + vals[2:])
    ok = np.isfinite(chord)
    if np.any(vmid[ok] > chord[ok] + 1e-10 * (1.0 + np.abs(chord[ok]))):
        raise ValueError(f"{name}: Phi0 fails midpoint convexity on the sample grid")
    tail = vals[finite][-1] if finite.any() else np.inf
    if finite.all() and tail < 1.0:
        raise ValueError(f"{name}: Phi0({t_max}) = {tail:.3g} does not grow "
                         "(a Young function must tend to infinity)")
    return yf


def parse_young(spec: str) -> YoungFunction:
    """Parse a textual kind spec: power:p, indicator:a, entropy, cosh, expm1,
    each optionally suffixed @r0 (e.g. power:0.5@0.5).  "inf" is shorthand
    for indicator:1 and "p:<x>" values are accepted as bare floats too.
    """
    s = spec.strip().lower()
    order = None
    if "@" in s:
        s, tail = s.split("@", 1)
        order = float(tail)
    if s in ("inf", "sup"):
        return indicator(1.0, order or 1.0)
    if ":" in s:
        head, val = s.split(":", 1)
        x = float(val)
        if head == "power":
            return power(x, order)
        if head == "indicator":
            return indicator(x, order or 1.0)
        raise ValueError(f"unknown Young spec {spec!r}")
    if s == "entropy":
        return entropy(order or 1.0)
    if s == "cosh":
        return cosh_minus_one(order or 1.0)
    if s == "expm1":
        return exp_minus_one(order or 1.0)
    try:
        return power(float(s), order)
    except ValueError:
        raise ValueError(f"unknown Young spec {spec!r}") from None


# -- convex conjugate -------------------------------------------------------


def _conjugate_numeric(phi: YoungFunction) -> Callable:
    """Evaluator of sup_t (s*t - Phi0(t)) by vectorized golden-section search
    over [0, T], with T doubled until the objective decreases at the right
    edge.  Concavity of t -> s*t - Phi0(t) makes the search sound; infinite
    Phi0 values enter as -inf objective and are handled by the comparisons."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0

    def star(s):
        s_arr = np.asarray(s, dtype=float)
        flat = s_arr.ravel()
        val = np.zeros_like(flat)
        pos = flat > 0
        if pos.any():
            sv = flat[pos]

            def f(t):
                return sv * t - phi.base(t)

            T = np.ones_like(sv)
            for _ in range(200):
                grow = f(T) > f(0.999 * T)
                if not grow.any():
                    break
                T[grow] *= 2.0
            a = np.zeros_like(sv)
            b = T
            for _ in range(90):
                lo = b - invphi * (b - a)
                hi = a + invphi * (b - a)
                left = f(lo) > f(hi)
                b = np.where(left, hi, b)
                a = np.where(left, a, lo)
            val[pos] = np.maximum(f(0.5 * (a + b)), 0.0)
        out = val.reshape(s_arr.shape)
        return out if out.shape else float(out)

    return star


def conjugate(phi: YoungFunction) -> YoungFunction:
    """Complementary Young function Phi0*(s) = sup_{t>=0} (s*t - Phi0(t)).

    Defined for Young functions only (order 1).  Closed forms for the power,
    indicator, cosh and expm1 kinds; numeric maximization otherwise.
    """
    if phi.order != 1.0:
        raise ValueError("conjugation is defined for Young functions (order 1) only")
    if phi.kind == "power":
        p, c = phi.param, phi.coeff
        if p == 1.0:
            return indicator(c)
        q = p / (p - 1.0)
        c2 = ((p - 1.0) / p) * (c * p) ** (-1.0 / (p - 1.0))
        return power(q, 1.0, coeff=c2)
    if phi.kind == "indicator":
        return power(1.0, 1.0, coeff=phi.param)
    if phi.kind == "cosh":
        return YoungFunction(
            "custom", order=1.0, name="cosh*",
            fn=lambda s: s * np.arcsinh(s) - np.sqrt(1.0 + np.asarray(s, float) ** 2) + 1.0,
        )
    if phi.kind == "expm1":
        return YoungFunction(
            "custom", order=1.0, name="expm1*",
            fn=lambda s: (1.0 + np.asarray(s, float)) * np.log1p(s) - s,
        )
    return YoungFunction("custom", order=1.0, name=f"{phi.label}*",
                         fn=_conjugate_numeric(phi))


# -- near-zero domination ---------------------------------------------------


def dominates_near_zero(psi: YoungFunction, phi: YoungFunction, t0: float = 1.0,
                        samples: int = 400):
    """Decide whether psi(t) <= C * phi(t) on (0, t0] from a log-spaced sample.

    Returns (bounded, C) where C is the sampled supremum of psi/phi with the
    convention 0/0 := 1 (and inf/inf := 1).  The verdict compares the deepest
    sampled decade against the rest: a ratio still growing as t -> 0 is
    reported unbounded.
    """
    if t0 <= 0:
        raise ValueError("t0 must be positive")
    if samples < 2:
        raise ValueError("need at least two samples")
    t = np.geomspace(t0 * 1e-12, t0, samples)
    pv, fv = psi(t), phi(t)
    ratio = np.empty_like(pv)
    both_zero = (pv == 0) & (fv == 0)
    both_inf = np.isinf(pv) & np.isinf(fv)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = pv / fv
    ratio[both_zero | both_inf] = 1.0
    if np.any(np.isinf(ratio)) or np.any(np.isnan(ratio)):
        return False, float("inf")
    deep = t <= t0 * 1e-11
    c_deep = ratio[deep].max() if deep.any() else 0.0
    c_rest = ratio[~deep].max()
    if c_deep > 2.0 * c_rest:
        return False, float(ratio.max())
    return True, float(ratio.max())
