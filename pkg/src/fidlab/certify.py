# src/fidlab/certify.py
#
# SDP-style feasibility and optimality certificates: block positivity via
# the support/Schur-complement criterion, dual-body membership for the max
# kind, and zero-duality-gap certificates pairing analytic primal
# optimizers with the derivative dual optimizers. No external SDP solver
# is used anywhere.

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.linalg as npl

from .channels import random_psd, rng_for
from .errors import DimensionMismatch
from .fidelity import dual_optimizers, fidelity
from .linalg_core import (
    as_square,
    check_pd,
    hermitianize,
    opnorm,
    pinv,
    psd_inv_sqrt,
    psd_sqrt,
    psd_tol,
    support_projector,
)

__all__ = ["Certificate", "block_psd", "mfmax_membership", "duality_certificate"]


@dataclass(frozen=True)
class Certificate:
    """A primal/dual pair of values with feasibility flags and their gap."""

    kind: str
    primal_value: float
    dual_value: float
    primal_feasible: bool
    dual_feasible: bool
    gap: float

    @property
    def is_valid(self) -> bool:
        return (
            self.primal_feasible
            and self.dual_feasible
            and self.gap <= 1e-7 * (1.0 + abs(self.primal_value))
        )


def block_psd(X: np.ndarray, C: np.ndarray, Y: np.ndarray) -> bool:
    """
    Positivity of the block matrix [[X, C], [C^dagger, Y]] via the support
    conditions (I - pi_X) C = 0, C (I - pi_Y) = 0 and the generalized Schur
    complement X - C Y^{-1} C^dagger >= 0.
    """
    X = hermitianize(as_square(X))
    Y = hermitianize(as_square(Y))
    C = np.asarray(C, dtype=complex)
    if C.shape != (X.shape[0], Y.shape[0]):
        raise DimensionMismatch("C has incompatible shape")
    pi_x = support_projector(X)
    pi_y = support_projector(Y)
    tol = 1e-9 * (1.0 + opnorm(C))
    if opnorm((np.eye(X.shape[0]) - pi_x) @ C) > tol:
        return False
    if opnorm(C @ (np.eye(Y.shape[0]) - pi_y)) > tol:
        return False
    gap = hermitianize(X - C @ pinv(Y) @ C.conj().T)
    return bool(npl.eigvalsh(gap)[0] >= -psd_tol(gap))


def mfmax_membership(L0: np.ndarray, L1: np.ndarray) -> bool:
    """Direct eigenvalue test of [[2 L0, -I], [-I, 2 L1]] >= 0."""
    L0 = hermitianize(as_square(L0))
    L1 = hermitianize(as_square(L1))
    if L0.shape != L1.shape:
        raise DimensionMismatch("pair members differ in dimension")
    k = L0.shape[0]
    eye = np.eye(k)
    block = np.block([[2.0 * L0, -eye], [-eye, 2.0 * L1]])
    return bool(npl.eigvalsh(block)[0] >= -psd_tol(block))


def _dual_feasible_sampled(
    kind: str, L0: np.ndarray, L1: np.ndarray, seed: int, n_samples: int = 100
) -> bool:
    """
    Probabilistic dual feasibility: the linear functional must dominate the
    fidelity on sampled PSD pairs and on commuting diagonal probes.
    """
    dim = L0.shape[0]
    probes: list[tuple[np.ndarray, np.ndarray]] = []
    for t in range(n_samples):
        rng = rng_for(seed, t)
        probes.append((random_psd(dim, rng), random_psd(dim, rng)))
    rng = rng_for(seed, n_samples)
    for _ in range(10):
        probes.append((np.diag(rng.random(dim)), np.diag(rng.random(dim))))
    for Xp, Yp in probes:
        lhs = float((np.trace(L0 @ Xp) + np.trace(L1 @ Yp)).real)
        if lhs < fidelity(kind, Xp, Yp) - 1e-7:
            return False
    return True


def duality_certificate(
    kind: str, X: np.ndarray, Y: np.ndarray, seed: int = 0
) -> Certificate:
    """
    Analytic primal optimizer + analytic dual optimizer + feasibility
    checks + duality gap for the chosen fidelity kind.
    """
    X = hermitianize(as_square(X))
    Y = hermitianize(as_square(Y))
    check_pd(X, "X")
    check_pd(Y, "Y")
    sX = psd_sqrt(X)
    sY = psd_sqrt(Y)
    if kind == "max":
        # C* = sqrt(X) W^dagger sqrt(Y), W the unitary polar factor of sqrt(Y) sqrt(X)
        U, _s, Vh = npl.svd(sY @ sX)
        W = U @ Vh
        C = sX @ W.conj().T @ sY
        primal_value = float(0.5 * (np.trace(C) + np.trace(C.conj().T)).real)
        primal_feasible = block_psd(X, C, Y)
    elif kind == "min":
        iY = psd_inv_sqrt(Y)
        C = hermitianize(sY @ psd_sqrt(hermitianize(iY @ X @ iY)) @ sY)
        primal_value = float(np.trace(C).real)
        primal_feasible = block_psd(X, C, Y)
    elif kind == "half":
        primal_value = fidelity(kind, X, Y)
        primal_feasible = True
    else:
        raise ValueError(f"unknown certificate kind {kind!r}")
    pair = dual_optimizers(kind, X, Y)
    dual_value = float((np.trace(pair.first @ X) + np.trace(pair.second @ Y)).real)
    dual_feasible = _dual_feasible_sampled(kind, pair.first, pair.second, seed)
    return Certificate(
        kind=kind,
        primal_value=primal_value,
        dual_value=dual_value,
        primal_feasible=primal_feasible,
        dual_feasible=dual_feasible,
        gap=abs(primal_value - dual_value),
    )
