"""A-quantized pseudo-differential operators on Z_L^d.

A symbol is a complex array on Z_L^{2d} with the d position axes first and
the d frequency axes last.  The distribution kernel of Op_A(a) is

    K(x, y) = L^{-d/2} sum_xi a(x - A(x-y), xi) e^{2 pi i <x-y, xi> / L},

i.e. the unitary inverse DFT of a in its frequency slots, evaluated in the
sheared coordinates (x - A(x-y), x-y).  The symbol <-> kernel map is a
composition of a unitary transform and a coordinate bijection, so it is
unitary; for that reason the rank-one law and the Wigner duality link hold in
this model with constant exactly 1, and the constant symbol quantizes to
L^{d/2} times the identity.

A itself must map the grid into itself (integral entries) for the kernel
path; arbitrary real A (e.g. the Weyl choice A = I/2) is reached through the
calculus-transfer multiplier, a pure phase on the mixed (DFT-in-x,
inverse-DFT-in-xi) transform of the symbol.  Frequency and displacement
representatives in that phase are centered; the A1=0 <-> A2=I
operator-equality test pins the convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .gabor import GaborSystem, gauss_window
from .orlicz import mixed_norm
from .young import YoungFunction, indicator, power

__all__ = [
    "Quantization",
    "kernel_from_symbol",
    "symbol_from_kernel",
    "apply_op",
    "calculus_transfer",
    "wigner",
    "rank_one_constant",
    "duality_link_constant",
    "duality_link_residual",
    "GaborPair",
    "GaborMatrix",
    "u_norm",
    "u_norm_pq",
    "matrix_apply",
    "compose",
    "sharp_product",
]


def _as_matrix(A, d: int) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim == 0:
        A = A * np.eye(d)
    if A.shape != (d, d):
        raise ValueError(f"quantization matrix must be {d}x{d}, got {A.shape}")
    return A


def _is_integral(A) -> bool:
    return bool(np.allclose(A, np.round(A), atol=1e-12))


@dataclass(frozen=True)
class Quantization:
    """Quantization parameter: a d x d real matrix.

    integral AA means A maps Z_L^d into itself, which admits the kernel path;
    otherwise only the transfer path applies.
    """

    A: np.ndarray

    @property
    def integral(self) -> bool:
        return _is_integral(self.A)


def _split_shape(a) -> tuple[int, int]:
    a = np.asarray(a)
    if a.ndim % 2:
        raise ValueError("a symbol needs an even number of axes (x..., xi...)")
    d = a.ndim // 2
    L = a.shape[0]
    if a.shape != (L,) * 2 * d:
        raise ValueError(f"symbol must live on a cube grid, got shape {a.shape}")
    return L, d


def _grid_points(L: int, d: int) -> np.ndarray:
    """(L^d, d) integer array of all grid points in index order."""
    return np.stack([g.ravel() for g in np.indices((L,) * d)], axis=-1)


def kernel_from_symbol(a, A=None) -> np.ndarray:
    """Kernel matrix (L^d x L^d) of Op_A(a) for integral A (default 0)."""
    a = np.asarray(a, dtype=complex)
    L, d = _split_shape(a)
    Amat = _as_matrix(0.0 if A is None else A, d)
    if not _is_integral(Amat):
        raise ValueError("non-integral quantization matrix: use the transfer path")
    Aint = np.round(Amat).astype(int)
    b = np.fft.ifftn(a, axes=tuple(range(d, 2 * d)), norm="ortho")
    X = _grid_points(L, d)
    Z = (X[:, None, :] - X[None, :, :])            # x - y, true integers
    U = (X[:, None, :] - Z @ Aint.T) % L
    Z = Z % L
    flat = np.ravel_multi_index(
        tuple(U[..., i] for i in range(d)) + tuple(Z[..., i] for i in range(d)),
        (L,) * 2 * d)
    return b.ravel()[flat]


def symbol_from_kernel(K, A=None, d: int = 1) -> np.ndarray:
    """Exact inverse of kernel_from_symbol for the same integral A."""
    K = np.asarray(K, dtype=complex)
    n = K.shape[0]
    if K.shape != (n, n):
        raise ValueError("kernel must be a square matrix")
    L = round(n ** (1.0 / d))
    if L**d != n:
        raise ValueError(f"kernel size {n} is not L^d for d={d}")
    Amat = _as_matrix(0.0 if A is None else A, d)
    if not _is_integral(Amat):
        raise ValueError("non-integral quantization matrix: use the transfer path")
    Aint = np.round(Amat).astype(int)
    U = _grid_points(L, d)
    Z = _grid_points(L, d)
    Xi = (U[:, None, :] + Z[None, :, :] @ Aint.T) % L
    Yi = (U[:, None, :] + Z[None, :, :] @ (Aint - np.eye(d, dtype=int)).T) % L
    rows = np.ravel_multi_index(tuple(Xi[..., i] for i in range(d)), (L,) * d)
    cols = np.ravel_multi_index(tuple(Yi[..., i] for i in range(d)), (L,) * d)
    G = K[rows, cols].reshape((L,) * d + (L,) * d)
    return np.fft.fftn(G, axes=tuple(range(d, 2 * d)), norm="ortho")


def apply_op(a, A, f) -> np.ndarray:
    """Apply Op_A(a) to f; transfers to A = 0 first when A is not integral."""
    a = np.asarray(a, dtype=complex)
    L, d = _split_shape(a)
    f = np.asarray(f, dtype=complex)
    if f.shape != (L,) * d:
        raise ValueError(f"operand shape {f.shape} != grid {(L,) * d}")
    Amat = _as_matrix(A, d)
    if not _is_integral(Amat):
        a = calculus_transfer(a, Amat, 0.0)
        Amat = np.zeros((d, d))
    K = kernel_from_symbol(a, Amat)
    return (K @ f.ravel()).reshape((L,) * d)


def calculus_transfer(a, A1, A2) -> np.ndarray:
    """Symbol a2 with Op_{A2}(a2) = Op_{A1}(a).

    Realized as the pure phase e^{2 pi i <(A2-A1) z, eta> / L} on the mixed
    transform of the symbol (forward DFT in the position slots -> eta,
    inverse DFT in the frequency slots -> z), with centered representatives
    for eta and z.  Exact inverse of the reverse transfer for any real A.
    """
    a = np.asarray(a, dtype=complex)
    L, d = _split_shape(a)
    B = _as_matrix(A2, d) - _as_matrix(A1, d)
    if not np.any(B):
        return a.copy()
    pos_axes = tuple(range(d))
    freq_axes = tuple(range(d, 2 * d))
    c = np.fft.fftn(np.fft.ifftn(a, axes=freq_axes, norm="ortho"),
                    axes=pos_axes, norm="ortho")
    rep = np.fft.fftfreq(L, 1.0 / L)  # centered representatives in fft order
    eta = np.stack(np.meshgrid(*([rep] * d), indexing="ij"), axis=-1)
    z = np.stack(np.meshgrid(*([rep] * d), indexing="ij"), axis=-1)
    expo = np.tensordot(z @ B.T, eta, axes=([-1], [-1]))  # (z..., eta...)
    expo = np.moveaxis(expo, range(d), range(d, 2 * d))   # -> (eta..., z...)
    c *= np.exp(2j * np.pi * expo / L)
    return np.fft.fftn(np.fft.ifftn(c, axes=pos_axes, norm="ortho"),
                       axes=freq_axes, norm="ortho")


def wigner(f1, f2, A) -> np.ndarray:
    """A-Wigner distribution of the pair (f1, f2) on Z_L^{2d}:

        W(x, xi) = L^{-d/2} sum_y f1(x + A y) conj(f2(x + (A-I) y))
                   e^{-2 pi i <y, xi>/L}.

    Requires integral A so that x + A y stays on the grid.
    """
    f1 = np.asarray(f1, dtype=complex)
    f2 = np.asarray(f2, dtype=complex)
    if f1.shape != f2.shape:
        raise ValueError("the two factors must share a grid")
    d = f1.ndim
    L = f1.shape[0]
    Amat = _as_matrix(A, d)
    if not _is_integral(Amat):
        raise ValueError("the Wigner kernel path needs an integral matrix")
    Aint = np.round(Amat).astype(int)
    X = _grid_points(L, d)
    Y = _grid_points(L, d)
    P1 = (X[:, None, :] + Y[None, :, :] @ Aint.T) % L
    P2 = (X[:, None, :] + Y[None, :, :] @ (Aint - np.eye(d, dtype=int)).T) % L
    i1 = np.ravel_multi_index(tuple(P1[..., i] for i in range(d)), (L,) * d)
    i2 = np.ravel_multi_index(tuple(P2[..., i] for i in range(d)), (L,) * d)
    g = (f1.ravel()[i1] * np.conj(f2.ravel()[i2])).reshape((L,) * d + (L,) * d)
    return np.fft.fftn(g, axes=tuple(range(d, 2 * d)), norm="ortho")


def rank_one_constant(L: int = 8, A=0) -> float:
    """Model constant c with Op_A(c W^A_{f1,f2}) g = (g, f2) f1, calibrated on
    a delta-window instance and reused everywhere (it is 1 in this model)."""
    f1 = np.zeros(L, dtype=complex)
    f1[0] = 1.0
    K_w = kernel_from_symbol(wigner(f1, f1, A), A)
    K_r = np.outer(f1, np.conj(f1))
    return float(np.real(np.vdot(K_w, K_r) / np.vdot(K_w, K_w)))


def duality_link_constant(L: int = 8, A=0) -> float:
    """Model constant c in (Op_A(a) f, g) = c (a, W^A_{g,f}); equals 1 here."""
    rng = np.random.default_rng(7)
    a = rng.standard_normal((L, L)) + 1j * rng.standard_normal((L, L))
    f = rng.standard_normal(L) + 1j * rng.standard_normal(L)
    g = rng.standard_normal(L) + 1j * rng.standard_normal(L)
    lhs = np.vdot(g, apply_op(a, A, f))
    rhs = np.vdot(wigner(g, f, A), a)
    return float(np.real(lhs / rhs))


def duality_link_residual(a, A, f, g, c: float = None) -> float:
    """|(Op_A(a) f, g) - c (a, W^A_{g,f})| with the calibrated constant."""
    if c is None:
        c = 1.0
    lhs = np.vdot(g, apply_op(a, A, f))
    rhs = np.vdot(wigner(g, f, A), a)
    return float(abs(lhs - c * rhs))


# -- Gabor matrices of operators ---------------------------------------------


@dataclass
class GaborMatrix:
    """Matrix of Op_0(a) between time-frequency atoms.

    entries has axes (mj, nj, mk, nk): row lattice point j = (alpha mj, beta nj),
    column k = (alpha mk, beta nk).  The entries are

        L^{1/2} (V_Psi a)(j, kappa, iota - kappa, k - j) e^{2 pi i (k-j) kappa / L}

    where Psi is the canonical dual of the composite window of the pair; the
    L^{1/2} model factor makes Op_0(a) = D_{phi1} A_a C_{phi2} hold exactly.
    """

    entries: np.ndarray
    L: int
    alpha: int
    beta: int

    def as2d(self) -> np.ndarray:
        n = self.entries.shape[0] * self.entries.shape[1]
        return self.entries.reshape(n, n)

    @property
    def lat_shape(self):
        return self.entries.shape[:2]


class GaborPair:
    """Window pair (phi1, phi2) on Z_L with lattice steps (alpha, beta),
    providing the operator factorization Op_0(a) = D_{phi1} A_a C_{phi2}.

    The Gabor matrix A_a is read off a 2-d Gabor analysis of the symbol with
    the composite window

        PHI(x, xi) = phi1(x) conj(F phi2)(xi) e^{-2 pi i x xi / L},

    sampled on the product lattice with translation steps (alpha, beta) and
    modulation steps (beta, alpha), using the canonical dual of PHI.
    """

    def __init__(self, L: int, alpha: int, beta: int, phi1=None, phi2=None):
        self.L, self.alpha, self.beta = L, alpha, beta
        self.phi1 = gauss_window(L) if phi1 is None else np.asarray(phi1, complex)
        self.phi2 = self.phi1 if phi2 is None else np.asarray(phi2, complex)
        x = np.arange(L)
        phi2_hat = np.fft.fft(self.phi2, norm="ortho")
        self.composite = (self.phi1[:, None] * np.conj(phi2_hat)[None, :]
                          * np.exp(-2j * np.pi * np.outer(x, x) / L))
        self.symbol_system = GaborSystem(self.composite, (alpha, beta), (beta, alpha))
        self.signal_system = GaborSystem.separable(L, alpha, beta, window=self.phi1)

    @cached_property
    def analysis_matrix(self) -> np.ndarray:
        """C_{phi2} as a dense (lattice, L) matrix."""
        sys2 = GaborSystem.separable(self.L, self.alpha, self.beta, window=self.phi2)
        return sys2.analysis_matrix()

    @cached_property
    def synthesis_matrix(self) -> np.ndarray:
        """D_{phi1} as a dense (L, lattice) matrix."""
        return self.signal_system.synthesis_matrix()

    @cached_property
    def gram(self) -> np.ndarray:
        """C = C_{phi2} D_{phi1} on coefficient space (the cross Gramian)."""
        return self.analysis_matrix @ self.synthesis_matrix

    def gabor_matrix(self, a) -> GaborMatrix:
        """Gabor matrix A_a of Op_0(a) for a symbol a on Z_L^2."""
        a = np.asarray(a, dtype=complex)
        L, alpha, beta = self.L, self.alpha, self.beta
        if a.shape != (L, L):
            raise ValueError(f"symbol shape {a.shape} != {(L, L)}")
        Ma, Mb = L // alpha, L // beta
        # coeff axes: (p1/alpha, p2/beta, q1/beta, q2/alpha)
        coeff = self.symbol_system.analysis(a, window="dual")
        mj = np.arange(Ma)[:, None, None, None]
        nj = np.arange(Mb)[None, :, None, None]
        mk = np.arange(Ma)[None, None, :, None]
        nk = np.arange(Mb)[None, None, None, :]
        q1 = (nj - nk) % Mb          # iota - kappa, in beta-steps
        q2 = (mk - mj) % Ma          # k - j, in alpha-steps
        ent = coeff[mj, nk, q1, q2]
        phase = np.exp(2j * np.pi * (alpha * (mk - mj)) * (beta * nk) / L)
        return GaborMatrix(np.sqrt(L) * ent * phase, L, alpha, beta)

    def factorize(self, M: GaborMatrix) -> np.ndarray:
        """D_{phi1} M C_{phi2} as an (L, L) operator matrix."""
        return self.synthesis_matrix @ M.as2d() @ self.analysis_matrix


# -- U-type matrix classes -----------------------------------------------------


def _rearrange(M: np.ndarray) -> np.ndarray:
    """(T M)(j, k) = M(j, j - k) with cyclic per-axis index arithmetic;
    M has axes (j..., k...) with matching halves."""
    M = np.asarray(M)
    if M.ndim % 2:
        raise ValueError("a lattice matrix needs an even number of axes")
    h = M.ndim // 2
    if M.shape[:h] != M.shape[h:]:
        raise ValueError("row and column lattices must agree")
    idx = []
    for ax in range(h):
        n = M.shape[ax]
        j = np.arange(n)
        k = np.arange(n)
        a = (j[:, None] - k[None, :]) % n  # j - k
        view = [1] * M.ndim
        view[ax] = n
        view[h + ax] = n
        idx.append(a.reshape(view))
    jdx = []
    for ax in range(h):
        n = M.shape[ax]
        view = [1] * M.ndim
        view[ax] = n
        jdx.append(np.arange(n).reshape(view))
    return M[tuple(jdx) + tuple(idx)]


def u_norm(M, phi_row: YoungFunction, phi_diff: YoungFunction, weight=None) -> float:
    """U-class norm || T(M . weight) ||_{l^{Phi_row, Phi_diff}}.

    After the rearrangement (j, k) -> (j, j-k), the row block j is normed
    first (inner) and the difference block second (outer); for the pair
    (indicator(1), power(r0)) this is sup_j inside and l^{r0} outside,
    the operator-norm majorant h(k) = sup_j |M(j, j-k)|.
    """
    M = np.asarray(M)
    h = M.ndim // 2
    if weight is not None:
        M = M * np.asarray(weight)
    T = _rearrange(M)
    return mixed_norm(T, [phi_row, phi_diff], (h, h))


def u_norm_pq(M, p: float, q: float, weight=None) -> float:
    """U-norm with Lebesgue exponents; p or q may be inf."""
    r0 = min(1.0, *(e for e in (p, q) if not np.isinf(e))) if not (
        np.isinf(p) and np.isinf(q)) else 1.0
    phi_row = indicator(1.0, r0) if np.isinf(p) else power(p, r0)
    phi_diff = indicator(1.0, r0) if np.isinf(q) else power(q, r0)
    return u_norm(M, phi_row, phi_diff, weight)


def matrix_apply(M, f) -> np.ndarray:
    """Lattice matrix times lattice vector: contract the k-axes of M with f."""
    M = np.asarray(M)
    f = np.asarray(f)
    h = M.ndim // 2
    if M.shape[h:] != f.shape:
        raise ValueError(f"matrix column lattice {M.shape[h:]} != vector {f.shape}")
    return np.tensordot(M, f, axes=h)


def compose(M1, M2) -> np.ndarray:
    """Composition of lattice matrices (tensordot over the shared lattice)."""
    M1 = np.asarray(M1)
    M2 = np.asarray(M2)
    h = M1.ndim // 2
    if M1.shape[h:] != M2.shape[:h]:
        raise ValueError("inner lattices do not match")
    return np.tensordot(M1, M2, axes=h)


def sharp_product(a1, a2, A=0) -> np.ndarray:
    """Symbol of Op_A(a1) Op_A(a2): exact since a -> K is a bijection.

    Non-integral A is routed through the transfer to A = 0 and back.
    """
    a1 = np.asarray(a1, dtype=complex)
    a2 = np.asarray(a2, dtype=complex)
    L, d = _split_shape(a1)
    if a2.shape != a1.shape:
        raise ValueError("symbols must share a grid")
    Amat = _as_matrix(A, d)
    if _is_integral(Amat):
        K = kernel_from_symbol(a1, Amat) @ kernel_from_symbol(a2, Amat)
        return symbol_from_kernel(K, Amat, d)
    b1 = calculus_transfer(a1, Amat, 0.0)
    b2 = calculus_transfer(a2, Amat, 0.0)
    K = kernel_from_symbol(b1, 0.0) @ kernel_from_symbol(b2, 0.0)
    return calculus_transfer(symbol_from_kernel(K, 0.0, d), 0.0, Amat)
