"""Finite-model short-time Fourier transform and Gabor frame machinery.

The model group is Z_L^D with the unitary DFT
    (F f)(xi) = L^{-D/2} sum_x f(x) e^{-2 pi i <x, xi> / L},
so the STFT with window phi is
    V_phi f(x, xi) = L^{-D/2} sum_y f(y) conj(phi(y - x)) e^{-2 pi i <y, xi>/L}.

A GaborSystem samples V on the separable lattice with translation steps
tsteps and modulation steps fsteps (each dividing L).  With

    analysis  C_phi f = { V_phi f(t, n) },
    synthesis D_psi c = sum c(t, n) e^{2 pi i <., n>/L} psi(. - t),

the frame operator S = D_phi C_phi is self-adjoint, commutes with lattice
time-frequency shifts, and the canonical dual psi = S^{-1} phi satisfies
D_psi C_phi = D_phi C_psi = identity exactly.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product as _iproduct

import numpy as np

__all__ = [
    "gauss_window",
    "boxcar_window",
    "stft",
    "GaborSystem",
]

_DENSE_LIMIT = 2**23  # refuse to materialize operator matrices beyond this


def gauss_window(L: int, d: int = 1):
    """Periodized Gaussian sum_k exp(-pi ((x + kL)/sqrt(L))^2), unit l2 norm.

    For d > 1 the window is the tensor power of the 1-d profile.
    """
    x = ((np.arange(L) + L // 2) % L) - L // 2
    g = np.zeros(L)
    for k in range(-4, 5):
        g += np.exp(-np.pi * (x + k * L) ** 2 / L)
    g /= np.linalg.norm(g)
    out = g
    for _ in range(d - 1):
        out = np.multiply.outer(out, g)
    return out.astype(complex)


def boxcar_window(L: int, width: int):
    """Flat window of the given width starting at 0, unit l2 norm."""
    if not 0 < width <= L:
        raise ValueError("boxcar width must lie in 1..L")
    g = np.zeros(L, dtype=complex)
    g[:width] = 1.0 / np.sqrt(width)
    return g


def stft(f, window):
    """Full-grid STFT V_window f on Z_L^D x Z_L^D.

    Inputs:
        f, window: complex arrays of identical shape (L,)*D, window nonzero
    Output: array of shape (L,)*2D indexed (x..., xi...).
    """
    f = np.asarray(f, dtype=complex)
    w = np.asarray(window, dtype=complex)
    if f.shape != w.shape:
        raise ValueError(f"signal and window shapes differ: {f.shape} vs {w.shape}")
    if not np.any(w):
        raise ValueError("zero window")
    sys = GaborSystem(w, (1,) * f.ndim, (1,) * f.ndim)
    return sys.analysis(f)


class GaborSystem:
    """Gabor frame on Z_L^D with per-axis lattice steps.

    Parameters
    ----------
    window : complex ndarray of shape (L,)*D
    tsteps : translation step per axis (each divides L)
    fsteps : modulation step per axis (each divides L); defaults to tsteps

    The coefficient array of `analysis` has one axis per translation lattice
    coordinate followed by one per modulation coordinate, i.e. shape
    (L/t_1, ..., L/t_D, L/f_1, ..., L/f_D).
    """

    def __init__(self, window, tsteps, fsteps=None):
        self.window = np.asarray(window, dtype=complex)
        if not np.any(self.window):
            raise ValueError("zero window")
        shape = self.window.shape
        if len(set(shape)) != 1:
            raise ValueError("expected a cube grid (L,)*D")
        self.L = shape[0]
        self.D = self.window.ndim
        if self.L % 2 or self.L < 8:
            raise ValueError("group order L must be even and at least 8")
        self.tsteps = tuple(int(t) for t in tsteps)
        self.fsteps = self.tsteps if fsteps is None else tuple(int(s) for s in fsteps)
        for s in self.tsteps + self.fsteps:
            if s < 1 or self.L % s:
                raise ValueError(f"lattice step {s} must divide L={self.L}")
        if len(self.tsteps) != self.D or len(self.fsteps) != self.D:
            raise ValueError("one lattice step per grid axis is required")
        self.Ntot = self.L**self.D
        self.tshape = tuple(self.L // t for t in self.tsteps)
        self.fshape = tuple(self.L // s for s in self.fsteps)
        self.lat_shape = self.tshape + self.fshape

    @classmethod
    def separable(cls, L: int, alpha: int, beta: int, window=None, d: int = 1):
        """Standard system: steps alpha in time and beta in frequency on every
        axis, periodized-Gaussian window by default."""
        if window is None:
            window = gauss_window(L, d)
        return cls(window, (alpha,) * d, (beta,) * d)

    # -- internal stacks -----------------------------------------------------

    def _shift_stack(self, window):
        """stack[t..., y...] = conj(window(y - t)) over the translation lattice."""
        w = np.asarray(window, dtype=complex)
        index_arrays = []
        for ax in range(self.D):
            t = self.tsteps[ax]
            pos = t * np.arange(self.L // t)
            y = np.arange(self.L)
            a = (y[None, :] - pos[:, None]) % self.L  # (tshape[ax], L)
            view = [1] * (2 * self.D)
            view[ax] = self.tshape[ax]
            view[self.D + ax] = self.L
            index_arrays.append(a.reshape(view))
        return np.conj(w[tuple(index_arrays)])

    @cached_property
    def _primal_stack(self):
        if np.prod(self.tshape) * self.Ntot > _DENSE_LIMIT:
            raise ValueError("system too large for dense window stack")
        return self._shift_stack(self.window)

    @cached_property
    def _dual_stack(self):
        return self._shift_stack(self.dual_window)

    def _stack_for(self, window):
        if window is None or (isinstance(window, str) and window == "primal"):
            return self._primal_stack
        if isinstance(window, str) and window == "dual":
            return self._dual_stack
        return self._shift_stack(window)

    # -- analysis / synthesis -------------------------------------------------

    def analysis(self, f, window=None):
        """Lattice-sampled STFT coefficients of f.

        window may be None/"primal", "dual" (canonical dual), or an explicit
        array.  Output shape is self.lat_shape.
        """
        f = np.asarray(f, dtype=complex)
        if f.shape != self.window.shape:
            raise ValueError(f"signal shape {f.shape} != grid {self.window.shape}")
        stack = self._stack_for(window)
        grid_axes = tuple(range(self.D, 2 * self.D))
        full = np.fft.fftn(stack * f[(None,) * self.D], axes=grid_axes, norm="ortho")
        sl = (slice(None),) * self.D + tuple(slice(None, None, s) for s in self.fsteps)
        return full[sl]

    def synthesis(self, c, window=None):
        """Adjoint-style synthesis sum_{t,n} c(t,n) e^{2 pi i <., n.f>/L} w(.-t)."""
        c = np.asarray(c, dtype=complex)
        if c.shape != self.lat_shape:
            raise ValueError(f"coefficient shape {c.shape} != lattice {self.lat_shape}")
        stack = self._stack_for(window)
        grid_axes = tuple(range(self.D, 2 * self.D))
        full = np.zeros(self.tshape + (self.L,) * self.D, dtype=complex)
        sl = (slice(None),) * self.D + tuple(slice(None, None, s) for s in self.fsteps)
        full[sl] = c
        mods = np.fft.ifftn(full, axes=grid_axes, norm="ortho") * self.Ntot**0.5
        return np.einsum(mods, list(range(2 * self.D)),
                         np.conj(stack), list(range(2 * self.D)),
                         list(range(self.D, 2 * self.D)))

    def reconstruct(self, f):
        """D_phi C_psi f; equals f exactly when the system is a frame."""
        return self.synthesis(self.analysis(f, window="dual"))

    # -- frame operator and dual ----------------------------------------------

    @cached_property
    def frame_operator(self):
        """Dense matrix of S = D_phi C_phi on the L^D grid (Walnut form).

        S couples x only to x - u for u in the annihilator of the modulation
        lattice, so it has prod(fsteps) shifted diagonals:
        S(x, x-u) = Ntot^{-1/2} * |M| * sum_{t in lattice} w(x-t) conj(w(x-u-t)).
        """
        if self.Ntot**2 > _DENSE_LIMIT:
            raise ValueError("system too large for a dense frame operator")
        L, D = self.L, self.D
        Msize = int(np.prod(self.fshape))
        S = np.zeros((self.Ntot, self.Ntot), dtype=complex)
        grid = np.indices((L,) * D)
        flat_x = np.ravel_multi_index([g.ravel() for g in grid], (L,) * D)
        for u in _iproduct(*[[(L // s) * k for k in range(s)] for s in self.fsteps]):
            wsh = self.window
            for ax, ui in enumerate(u):
                wsh = np.roll(wsh, ui, axis=ax)
            H = self.window * np.conj(wsh)
            # periodize H over the translation lattice -> period tsteps[ax]
            G = H
            for ax, t in enumerate(self.tsteps):
                sh = G.shape
                G = G.reshape(sh[:ax] + (sh[ax] // t, t) + sh[ax + 1:]).sum(axis=ax)
                G = np.concatenate([G] * (sh[ax] // t), axis=ax)
            flat_y = np.ravel_multi_index(
                [((grid[ax] - u[ax]) % L).ravel() for ax in range(D)], (L,) * D)
            S[flat_x, flat_y] += Msize * G.ravel()
        return S * self.Ntot**-0.5

    @cached_property
    def frame_bounds(self):
        """(A, B) with A ||f||^2 <= ||analysis(f)||^2 <= B ||f||^2 exactly;
        the eigenvalue range of C_phi^* C_phi = Ntot^{-1/2} S."""
        ev = np.linalg.eigvalsh(self.frame_operator) * self.Ntot**-0.5
        return float(ev[0]), float(ev[-1])

    @cached_property
    def dual_window(self):
        """Canonical dual psi solving S psi = phi; raises for non-frames."""
        S = self.frame_operator
        ev = np.linalg.eigvalsh(S).real
        if ev[0] <= 1e-10 * max(ev[-1], 1e-300):
            raise ValueError(
                f"not a frame at these lattice steps (tsteps={self.tsteps}, "
                f"fsteps={self.fsteps}): frame operator is singular")
        return np.linalg.solve(S, self.window.ravel()).reshape(self.window.shape)

    # -- dense operator views (small systems only) ------------------------------

    def analysis_matrix(self, window=None):
        """C as a dense (lattice, grid) matrix; small systems only."""
        nlat = int(np.prod(self.lat_shape))
        if nlat * self.Ntot > _DENSE_LIMIT:
            raise ValueError("system too large for a dense analysis matrix")
        eye = np.eye(self.Ntot, dtype=complex)
        cols = [self.analysis(eye[:, i].reshape(self.window.shape), window=window).ravel()
                for i in range(self.Ntot)]
        return np.stack(cols, axis=1)

    def synthesis_matrix(self, window=None):
        """D as a dense (grid, lattice) matrix: D = Ntot^{1/2} C^H."""
        return self.Ntot**0.5 * self.analysis_matrix(window=window).conj().T
