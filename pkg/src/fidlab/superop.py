# src/fidlab/superop.py
#
# Linear transforms on operator space: the Lyapunov operator S_Z solving
# X = S Z + Z S, its dim^2 x dim^2 matrix representation (column-stacking
# vectorization), the spectrum of the composition S_{L0} o S_{L1}, and a
# PSD-cone power iteration for its leading eigenvector.

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.linalg as npl

from .errors import NoConvergence, SingularPair
from .linalg_core import (
    Spectrum,
    as_square,
    check_pd,
    check_psd,
    hermitianize,
    rank_tol,
)

__all__ = [
    "vec",
    "unvec",
    "SuperOperator",
    "lyapunov_solve",
    "lyapunov_superop",
    "composed_lyapunov_spectrum",
    "positive_fixed_point",
]


def vec(X: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(X, dtype=complex).flatten(order="F")


def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of vec for a dim x dim matrix."""
    return np.asarray(v, dtype=complex).reshape((dim, dim), order="F")


@dataclass(frozen=True)
class SuperOperator:
    """A linear map on dim x dim operators, stored as a dim^2 x dim^2 matrix."""

    dim: int
    matrix: np.ndarray

    def apply(self, H: np.ndarray) -> np.ndarray:
        H = as_square(H)
        return unvec(self.matrix @ vec(H), self.dim)


def lyapunov_solve(Z: np.ndarray, X: np.ndarray) -> np.ndarray:
    """
    Solve S Z + Z S = X for Hermitian X and PSD Z.

    In the eigenbasis of Z the solution is entrywise division by
    (lambda_i + lambda_j). Entries with vanishing denominator must have a
    vanishing right-hand side, otherwise the equation is unsolvable.
    """
    Z = hermitianize(as_square(Z))
    X = hermitianize(as_square(X))
    check_psd(Z, "Z")
    w, V = npl.eigh(Z)
    Xt = V.conj().T @ X @ V
    denom = w[:, None] + w[None, :]
    tol = rank_tol(Z)
    singular = denom <= tol
    if np.any(singular & (np.abs(Xt) > rank_tol(X))):
        raise SingularPair("X has weight on the kernel block of S_Z")
    St = np.where(singular, 0.0, Xt / np.where(singular, 1.0, denom))
    return hermitianize(V @ St @ V.conj().T)


def lyapunov_superop(Z: np.ndarray) -> SuperOperator:
    """Matrix representation of S_Z for strictly positive Z."""
    Z = hermitianize(as_square(Z))
    check_pd(Z, "Z")
    w, V = npl.eigh(Z)
    dim = Z.shape[0]
    # weight for the (i, j) matrix unit, column-stacking order: index j*dim + i
    weights = 1.0 / (w[:, None] + w[None, :])
    d = weights.flatten(order="F")
    basis = np.kron(V.conj(), V)
    M = (basis * d) @ basis.conj().T
    return SuperOperator(dim=dim, matrix=hermitianize(M))


def composed_lyapunov_spectrum(L0: np.ndarray, L1: np.ndarray) -> Spectrum:
    """
    All dim^2 eigenvalues of S_{L0} o S_{L1}, via the similar Hermitian form
    S_{L1}^{1/2} S_{L0} S_{L1}^{1/2}. Every eigenvalue is strictly positive.
    """
    M0 = lyapunov_superop(L0).matrix
    M1 = lyapunov_superop(L1).matrix
    w1, V1 = npl.eigh(hermitianize(M1))
    M1h = (V1 * np.sqrt(np.maximum(w1, 0.0))) @ V1.conj().T
    sym = hermitianize(M1h @ M0 @ M1h)
    w, V = npl.eigh(sym)
    return Spectrum(eigenvalues=w, eigenvectors=V)


def positive_fixed_point(
    L0: np.ndarray,
    L1: np.ndarray,
    max_iter: int = 10000,
    tol: float = 1e-10,
) -> tuple[np.ndarray, float]:
    """
    Power iteration for S_{L0} o S_{L1} restricted to the PSD cone.

    Starts at I/dim and renormalizes by trace each step, so iterates stay in
    the state simplex. Returns (A*, alpha*) with
    S_{L0}(S_{L1}(A*)) = alpha* A* up to residual tol in Frobenius norm.
    """
    check_pd(L0, "L0")
    check_pd(L1, "L1")
    dim = as_square(L0).shape[0]
    A = np.eye(dim, dtype=complex) / dim
    alpha = 0.0
    residual = np.inf
    for _ in range(max_iter):
        B = lyapunov_solve(L0, lyapunov_solve(L1, A))
        alpha = float(np.trace(B).real)
        residual = float(npl.norm(B - alpha * A))
        if alpha <= 0:
            raise NoConvergence("iterate left the positive cone")
        A = B / alpha
        if residual < tol:
            return hermitianize(A), alpha
    raise NoConvergence(
        f"positive_fixed_point: residual {residual:.3e} after {max_iter} steps"
    )
