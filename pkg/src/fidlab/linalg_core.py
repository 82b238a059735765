# src/fidlab/linalg_core.py

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.linalg as npl

from .errors import DimensionMismatch, NotPositiveDefinite, NotPsd

__all__ = [
    "herm_tol",
    "psd_tol",
    "rank_tol",
    "hermitianize",
    "opnorm",
    "as_square",
    "Spectrum",
    "spectrum",
    "psd_sqrt",
    "psd_inv_sqrt",
    "pinv",
    "support_projector",
    "schur_reduce",
    "pinch",
    "check_psd",
    "check_pd",
    "OperatorPair",
]


def hermitianize(A: np.ndarray) -> np.ndarray:
    """Return the Hermitian part (A + A^*) / 2."""
    return (A + A.conj().T) / 2


def as_square(A: np.ndarray) -> np.ndarray:
    """Coerce to a complex square 2-d array or raise DimensionMismatch."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    return A


def opnorm(H: np.ndarray) -> float:
    """Operator (spectral) norm."""
    if H.size == 0:
        return 0.0
    return float(npl.norm(H, 2))


def herm_tol(H: np.ndarray) -> float:
    """Hermiticity tolerance 1e-12 * (1 + max-abs-entry)."""
    m = float(np.max(np.abs(H))) if H.size else 0.0
    return 1e-12 * (1.0 + m)


def psd_tol(H: np.ndarray) -> float:
    """Positivity tolerance 1e-10 * (1 + operator norm)."""
    return 1e-10 * (1.0 + opnorm(H))


def rank_tol(H: np.ndarray) -> float:
    """Numerical-rank tolerance 1e-10 * (1 + operator norm)."""
    return 1e-10 * (1.0 + opnorm(H))


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return hermitianize((V * self.eigenvalues) @ V.conj().T)


def spectrum(H: np.ndarray) -> Spectrum:
    """Hermitian eigendecomposition (symmetrizes the input first)."""
    H = hermitianize(as_square(H))
    w, V = npl.eigh(H)
    return Spectrum(eigenvalues=w, eigenvectors=V)


def check_psd(H: np.ndarray, name: str = "operator") -> np.ndarray:
    """Symmetrize and verify positivity within PSD_TOL; returns eigenvalues."""
    H = hermitianize(as_square(H))
    w = npl.eigvalsh(H)
    if w.size and w[0] < -psd_tol(H):
        raise NotPsd(f"{name} has eigenvalue {w[0]:.3e} below -PSD_TOL")
    return w


def check_pd(H: np.ndarray, name: str = "operator") -> np.ndarray:
    """Verify strict positivity: all eigenvalues above RANK_TOL."""
    H = hermitianize(as_square(H))
    w = npl.eigvalsh(H)
    if not w.size or w[0] <= rank_tol(H):
        raise NotPositiveDefinite(f"{name} is not strictly positive definite")
    return w


def _herm_fun(H: np.ndarray, fun) -> np.ndarray:
    w, V = npl.eigh(hermitianize(as_square(H)))
    return hermitianize((V * fun(w)) @ V.conj().T)


def psd_sqrt(H: np.ndarray) -> np.ndarray:
    """
    Matrix square root of a PSD matrix via eigendecomposition.
    Eigenvalues in [-PSD_TOL, 0) are clamped to 0; anything lower raises NotPsd.
    """
    H = hermitianize(as_square(H))
    w, V = npl.eigh(H)
    if w.size and w[0] < -psd_tol(H):
        raise NotPsd(f"cannot take psd_sqrt: eigenvalue {w[0]:.3e}")
    w = np.maximum(w, 0.0)
    return hermitianize((V * np.sqrt(w)) @ V.conj().T)


def psd_inv_sqrt(H: np.ndarray) -> np.ndarray:
    """H^(-1/2) for strictly positive definite H."""
    check_pd(H)
    return _herm_fun(H, lambda w: 1.0 / np.sqrt(w))


def pinv(H: np.ndarray) -> np.ndarray:
    """
    Moore-Penrose inverse of a Hermitian matrix via eigendecomposition.
    Eigenvalues with |lambda| <= RANK_TOL are sent to 0.
    """
    H = hermitianize(as_square(H))
    w, V = npl.eigh(H)
    tol = rank_tol(H)
    inv = np.where(np.abs(w) > tol, 1.0 / np.where(np.abs(w) > tol, w, 1.0), 0.0)
    return hermitianize((V * inv) @ V.conj().T)


def support_projector(H: np.ndarray) -> np.ndarray:
    """Orthogonal projector onto the support (range) of a PSD matrix."""
    H = hermitianize(as_square(H))
    w, V = npl.eigh(H)
    if w.size and w[0] < -psd_tol(H):
        raise NotPsd(f"support_projector: eigenvalue {w[0]:.3e}")
    keep = V[:, w > rank_tol(H)]
    return hermitianize(keep @ keep.conj().T)


def schur_reduce(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """
    Reduce X onto the support of Y by a Schur complement:
    X11 - X12 X22^{-1} X21 in the block decomposition induced by supp Y.
    If supp X is already contained in supp Y, X is returned unchanged.
    """
    X = hermitianize(as_square(X))
    Y = hermitianize(as_square(Y))
    if X.shape != Y.shape:
        raise DimensionMismatch("schur_reduce needs operators of equal dimension")
    check_psd(X, "X")
    check_psd(Y, "Y")
    pi = support_projector(Y)
    comp = np.eye(X.shape[0]) - pi
    off_support = comp @ X @ comp
    if opnorm(off_support) <= rank_tol(X):
        return X
    X11 = pi @ X @ pi
    X12 = pi @ X @ comp
    reduced = X11 - X12 @ pinv(off_support) @ X12.conj().T
    return hermitianize(pi @ reduced @ pi)


def pinch(X: np.ndarray) -> np.ndarray:
    """Delete off-diagonal entries in the standard basis."""
    X = as_square(X)
    return np.diag(np.diag(X))


@dataclass(frozen=True)
class OperatorPair:
    """An ordered pair of PSD Hermitian matrices of equal dimension."""

    first: np.ndarray
    second: np.ndarray

    def __post_init__(self) -> None:
        a = hermitianize(as_square(self.first))
        b = hermitianize(as_square(self.second))
        if a.shape != b.shape:
            raise DimensionMismatch("pair members have different dimensions")
        check_psd(a, "first")
        check_psd(b, "second")
        object.__setattr__(self, "first", a)
        object.__setattr__(self, "second", b)

    @property
    def dim(self) -> int:
        return self.first.shape[0]
