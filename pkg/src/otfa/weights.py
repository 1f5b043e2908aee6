"""Moderate weight functions on symmetric grid representatives.

Weights live on R^d; the finite cyclic model evaluates them at the canonical
representatives of Z_L in [-L/2, L/2), never at periodized points, because
periodization would destroy moderateness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

__all__ = [
    "Weight",
    "one",
    "polynomial",
    "exponential",
    "product_weight",
    "custom_weight",
    "parse_weight",
    "symrep",
    "weight_on_grid",
    "weight_on_lattice",
    "moderateness_constant",
    "t_a_transform",
    "weight_triple_constant",
]


def symrep(n, L: int):
    """Canonical symmetric representative of n mod L, in [-L/2, L/2)."""
    n = np.asarray(n)
    return (n + L // 2) % L - L // 2


@dataclass(frozen=True)
class Weight:
    """A positive weight on R^dim.

    kind: one | poly | exp | prod | custom
      one:   1
      poly:  (1 + |x|)^param
      exp:   exp(param * |x|)
      prod:  product of component weights over a split of the coordinates
      custom: user evaluator on points of shape (..., dim)
    """

    kind: str
    param: float = 0.0
    dim: int = 1
    parts: Tuple["Weight", ...] = ()
    fn: Optional[Callable] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("one", "poly", "exp", "prod", "custom"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "prod":
            if not self.parts:
                raise ValueError("product weight needs components")
            if sum(p.dim for p in self.parts) != self.dim:
                raise ValueError("product weight dims must sum to the total dim")
        if self.kind == "custom" and self.fn is None:
            raise ValueError("custom weight needs an evaluator")

    def __call__(self, pts):
        """Evaluate at real points of shape (..., dim); returns shape (...)."""
        pts = np.atleast_1d(np.asarray(pts, dtype=float))
        if pts.shape[-1] != self.dim:
            raise ValueError(f"weight of dim {self.dim} evaluated at points "
                             f"with last axis {pts.shape[-1]}")
        if self.kind == "one":
            return np.ones(pts.shape[:-1])
        if self.kind == "prod":
            out = np.ones(pts.shape[:-1])
            k = 0
            for p in self.parts:
                out = out * p(pts[..., k:k + p.dim])
                k += p.dim
            return out
        if self.kind == "custom":
            return np.asarray(self.fn(pts), dtype=float)
        r = np.sqrt((pts * pts).sum(axis=-1))
        if self.kind == "poly":
            return (1.0 + r) ** self.param
        return np.exp(self.param * r)

    def reshaped(self, dim: int) -> "Weight":
        """The same radial law on a different number of coordinates."""
        if self.kind in ("prod", "custom"):
            raise ValueError("cannot reshape a product/custom weight")
        return Weight(self.kind, self.param, dim)

    @property
    def label(self) -> str:
        if self.kind == "one":
            return "one"
        if self.kind == "poly":
            return f"poly:{self.param:g}"
        if self.kind == "exp":
            return f"exp:{self.param:g}"
        if self.kind == "prod":
            return "prod:[" + ";".join(p.label for p in self.parts) + "]"
        return "custom"


def one(dim: int = 1) -> Weight:
    return Weight("one", dim=dim)


def polynomial(s: float, dim: int = 1) -> Weight:
    """(1 + |x|)^s; submultiplicative for s >= 0, poly-moderate for any s."""
    return Weight("poly", param=s, dim=dim)


def exponential(r: float, dim: int = 1) -> Weight:
    """exp(r |x|); submultiplicative for r >= 0."""
    return Weight("exp", param=r, dim=dim)


def product_weight(*parts: Weight) -> Weight:
    return Weight("prod", dim=sum(p.dim for p in parts), parts=tuple(parts))


def custom_weight(fn: Callable, dim: int = 1) -> Weight:
    return Weight("custom", dim=dim, fn=fn)


def parse_weight(spec: str, dim: int = 1) -> Weight:
    """Parse weight spec strings: one, poly:s, exp:r, prod:[w1;w2]."""
    s = spec.strip().lower()
    if s == "one":
        return one(dim)
    if s.startswith("poly:"):
        return polynomial(float(s[5:]), dim)
    if s.startswith("exp:"):
        return exponential(float(s[4:]), dim)
    if s.startswith("prod:[") and s.endswith("]"):
        parts = [parse_weight(p, 1) for p in s[6:-1].split(";")]
        return product_weight(*parts)
    raise ValueError(f"unknown weight spec {spec!r}")


# -- evaluation on grids and lattices ----------------------------------------


def weight_on_grid(w: Optional[Weight], shape, L: Optional[int] = None):
    """Weight values over a full cyclic grid, one axis per coordinate.

    shape gives the per-axis sizes; L defaults to the axis size, so index n on
    an axis of size L evaluates at symrep(n, L).  Returns None for w None.
    """
    if w is None:
        return None
    shape = tuple(shape)
    if w.dim != len(shape):
        raise ValueError(f"weight dim {w.dim} != grid rank {len(shape)}")
    axes = [symrep(np.arange(n), n if L is None else L).astype(float) for n in shape]
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    return w(pts)


def weight_on_lattice(w: Optional[Weight], L: int, steps, shape):
    """Weight values over a sublattice: index n on axis i is the point
    steps[i]*n reduced to its symmetric representative mod L."""
    if w is None:
        return None
    steps, shape = tuple(steps), tuple(shape)
    if w.dim != len(shape):
        raise ValueError(f"weight dim {w.dim} != lattice rank {len(shape)}")
    axes = [symrep(st * np.arange(n), L).astype(float) for st, n in zip(steps, shape)]
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    return w(pts)


# -- moderateness -------------------------------------------------------------


def moderateness_constant(w: Weight, v: Weight, L: int, cyclic: bool = False) -> float:
    """Grid constant sup w(x+y) / (w(x) v(y)) over symmetric representatives.

    With cyclic=False (the default) only pairs whose true sum x+y stays inside
    [-L/2, L/2)^d count, matching evaluation on R^d.  With cyclic=True the sum
    is reduced mod L, which is the constant governing cyclic translations.
    Only a lower bound on the continuum constant is observable on a grid.
    """
    if w.dim != v.dim:
        raise ValueError("weight dimensions disagree")
    d = w.dim
    reps = symrep(np.arange(L), L).astype(float)
    axes = np.meshgrid(*([reps] * d), indexing="ij")
    pts = np.stack(axes, axis=-1).reshape(-1, d)      # (L^d, d)
    wx = w(pts)
    vy = v(pts)
    s = pts[:, None, :] + pts[None, :, :]             # (L^d, L^d, d)
    if cyclic:
        s = symrep(s, L).astype(float)
        mask = np.ones(s.shape[:2], dtype=bool)
    else:
        mask = np.all((s >= -(L // 2)) & (s <= L // 2 - 1), axis=-1)
    ws = w(s)
    ratio = ws / (wx[:, None] * vy[None, :])
    return float(ratio[mask].max())


def t_a_transform(A, X, Y):
    """Phase-space coordinate change used by symbol-product weight conditions:
    maps (X, Y) with X=(x,xi), Y=(y,eta) in R^2d to
    (y + A(x-y), xi + A^T(eta-xi), eta-xi, x-y) in R^4d."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    d = X.shape[-1] // 2
    A = np.asarray(A, dtype=float)
    if A.ndim == 0:
        A = A * np.eye(d)
    x, xi = X[..., :d], X[..., d:]
    y, eta = Y[..., :d], Y[..., d:]
    out = np.concatenate([
        y + (x - y) @ A.T,
        xi + (eta - xi) @ A,
        eta - xi,
        x - y,
    ], axis=-1)
    return out


def weight_triple_constant(w, w1, w2, A, L: int, d: int = 1,
                           condition: str = "product",
                           n_samples: int = 10_000, seed: int = 0) -> float:
    """Empirical sup of a weight-compatibility ratio over sampled grid tuples.

    condition="product": sup over (X, Y, Z) of
        w(T_A(Z, X)) / (w1(T_A(Y, X)) * w2(T_A(Z, Y)))
    with w, w1, w2 on R^4d -- the admissibility condition for symbol products.

    condition="pseudo_cont": sup over (x,xi,y,eta) of
        w2(x,xi) / (w1(y,eta) * w(x+A(y-x), eta+A^T(xi-eta), xi-eta, y-x))
    with w1, w2 on R^2d and w on R^4d -- the operator-continuity condition.

    Tuples are sampled (seeded) from the symmetric representatives; an
    exhaustive scan over O(L^{8d}) tuples would be infeasible.  The value is a
    grid constant: a lower bound for the continuum supremum.
    """
    rng = np.random.default_rng(seed)
    half = L // 2

    def sample(n, k):
        return rng.integers(-half, half, size=(n, k)).astype(float)

    if condition == "product":
        X, Y, Z = (sample(n_samples, 2 * d) for _ in range(3))
        num = w(t_a_transform(A, Z, X))
        den = w1(t_a_transform(A, Y, X)) * w2(t_a_transform(A, Z, Y))
        return float((num / den).max())
    if condition == "pseudo_cont":
        XY = sample(n_samples, 4 * d)
        x, xi = XY[:, :d], XY[:, d:2 * d]
        y, eta = XY[:, 2 * d:3 * d], XY[:, 3 * d:]
        Amat = np.asarray(A, dtype=float)
        if Amat.ndim == 0:
            Amat = Amat * np.eye(d)
        arg = np.concatenate([
            x + (y - x) @ Amat.T,
            eta + (xi - eta) @ Amat,
            xi - eta,
            y - x,
        ], axis=-1)
        num = w2(np.concatenate([x, xi], axis=-1))
        den = w1(np.concatenate([y, eta], axis=-1)) * w(arg)
        return float((num / den).max())
    raise ValueError(f"unknown condition {condition!r}")
