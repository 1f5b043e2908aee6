"""Orlicz modulation quasi-norms through lattice Gabor coefficients.

The modulation quasi-norm of f is the weighted mixed Orlicz norm of the
lattice-sampled STFT, time axes inner and frequency axes outer.  The lattice
coefficients stand in for the continuum norm; exact Gabor reconstruction in
the finite model is what licenses the proxy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .gabor import GaborSystem
from .orlicz import luxemburg_norm, mixed_norm
from .weights import Weight, weight_on_lattice
from .young import YoungFunction, dominates_near_zero

__all__ = [
    "ModulationSpaceSpec",
    "mod_norm",
    "window_equivalence_band",
    "collapse_check",
    "inclusion_check",
]


@dataclass
class ModulationSpaceSpec:
    """Parameters of a modulation quasi-norm.

    phis:   Young functions, innermost block first
    groups: axes of the coefficient array per block; a prefix must cover
            exactly the time axes (the admissible splittings)
    weight: weight on the time-frequency plane (dim = number of axes)
    sys:    the Gabor system supplying the coefficients
    """

    sys: GaborSystem
    phis: Tuple[YoungFunction, ...]
    groups: Optional[Tuple[int, ...]] = None
    weight: Optional[Weight] = None
    _warr: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        self.phis = tuple(self.phis)
        D = self.sys.D
        if self.groups is None:
            if len(self.phis) != 2 * D:
                self.groups = (D, D) if len(self.phis) == 2 else None
            else:
                self.groups = (1,) * (2 * D)
        if self.groups is None or sum(self.groups) != 2 * D:
            raise ValueError(f"axis grouping must cover the {2 * D} coefficient axes")
        prefix = np.cumsum(self.groups)
        if D not in prefix:
            raise ValueError(f"no block prefix covers the {D} time axes "
                             f"(groups={self.groups})")
        orders = {phi.order for phi in self.phis}
        if len(orders) != 1:
            raise ValueError("all Young functions must share one declared order")
        if self.weight is not None and self.weight.dim != 2 * D:
            raise ValueError(f"weight dim {self.weight.dim} != {2 * D}")

    @property
    def order(self) -> float:
        return self.phis[0].order

    def weight_array(self):
        if self.weight is None:
            return None
        if self._warr is None:
            sys = self.sys
            self._warr = weight_on_lattice(
                self.weight, sys.L, sys.tsteps + sys.fsteps, sys.lat_shape)
        return self._warr


def mod_norm(f, spec: ModulationSpaceSpec, window=None) -> float:
    """Modulation quasi-norm: mixed Orlicz norm of the Gabor coefficients."""
    c = spec.sys.analysis(f, window=window)
    return mixed_norm(c, spec.phis, spec.groups, spec.weight_array())


def window_equivalence_band(f_batch, spec: ModulationSpaceSpec, phi2):
    """(min, max) over the batch of mod-norm ratios between the alternative
    window phi2 and the system window.  phi2 must itself generate a frame at
    the same lattice steps (checked via its dual)."""
    sys2 = GaborSystem(np.asarray(phi2, complex), spec.sys.tsteps, spec.sys.fsteps)
    sys2.dual_window  # raises for non-frames
    spec2 = ModulationSpaceSpec(sys2, spec.phis, spec.groups, spec.weight)
    ratios = []
    for f in f_batch:
        n1 = mod_norm(f, spec)
        n2 = mod_norm(f, spec2)
        if n1 > 0:
            ratios.append(n2 / n1)
    return float(min(ratios)), float(max(ratios))


def collapse_check(f_batch, phi: YoungFunction, weight: Optional[Weight],
                   sys: GaborSystem, n_fold: Optional[int] = None) -> dict:
    """Ratios of the N-fold norm with one repeated Phi against the flat
    single-Phi norm of the whole coefficient array.

    The collapse is exact for the power and indicator kinds; otherwise the
    report carries the empirical band.
    """
    D = sys.D
    n_fold = 2 * D if n_fold is None else n_fold
    if (2 * D) % n_fold:
        raise ValueError("n_fold must divide the number of coefficient axes")
    gsize = 2 * D // n_fold
    spec_fold = ModulationSpaceSpec(sys, (phi,) * n_fold, (gsize,) * n_fold, weight)
    ratios = []
    for f in f_batch:
        c = sys.analysis(f)
        flat = luxemburg_norm(c, phi, spec_fold.weight_array())
        fold = mixed_norm(c, spec_fold.phis, spec_fold.groups, spec_fold.weight_array())
        if flat > 0:
            ratios.append(fold / flat)
    ratios = np.asarray(ratios)
    exact = phi.kind in ("power", "indicator")
    return {
        "phi": phi.label,
        "exact_kind": exact,
        "band": (float(ratios.min()), float(ratios.max())),
        "max_dev_from_1": float(np.abs(ratios - 1.0).max()),
    }


def inclusion_check(phis: Sequence[YoungFunction], psis: Sequence[YoungFunction],
                    sys: GaborSystem, weight: Optional[Weight], f_batch,
                    t0: float = 1.0) -> dict:
    """Near-zero domination test for each (Psi_j, Phi_j) pair and, when it
    holds, the empirical constant of the implied norm inequality
    ||f||_{Psi-side} <= C ||f||_{Phi-side} over the batch."""
    doms = [dominates_near_zero(psi, phi, t0) for psi, phi in zip(psis, phis)]
    implied = all(b for b, _ in doms)
    out = {
        "domination": [{"psi": psi.label, "phi": phi.label,
                        "bounded": b, "constant": c}
                       for (psi, phi), (b, c) in zip(zip(psis, phis), doms)],
        "inclusion_implied": implied,
    }
    if not implied:
        out["verdict"] = "not implied"
        return out
    spec_phi = ModulationSpaceSpec(sys, tuple(phis), None, weight)
    spec_psi = ModulationSpaceSpec(sys, tuple(psis), None, weight)
    ratios = []
    for f in f_batch:
        d = mod_norm(f, spec_phi)
        if d > 0:
            ratios.append(mod_norm(f, spec_psi) / d)
    out["norm_ratio_max"] = float(max(ratios))
    out["verdict"] = "included" if np.isfinite(out["norm_ratio_max"]) else "violated"
    return out
