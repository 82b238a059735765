# src/fidlab/polar.py
#
# Polar functionals of the three fidelities: closed spectral forms for the
# max and half kinds, exact pure-state minimization for the min kind, the
# membership semantics (polar >= 1 <=> dual-body membership), and a
# randomized POVM-decomposition lower bound for the max polar.

from __future__ import annotations

import numpy as np
import numpy.linalg as npl
from scipy.linalg import null_space
from scipy.optimize import linprog, minimize, nnls

from .channels import rng_for
from .errors import DecompositionInfeasible, LengthMismatch, NegativeEntry
from .fidelity import _weights
from .linalg_core import as_square, check_psd, hermitianize, psd_sqrt, rank_tol
from .superop import composed_lyapunov_spectrum, vec
from .qubit_geom import polar_min_qubit

__all__ = [
    "polar_classical",
    "polar_max",
    "polar_min",
    "polar_half",
    "polar",
    "polar_membership",
    "povm_lower_bound",
]


def polar_classical(l0, l1) -> float:
    """min over i of 2 sqrt(l0_i l1_i)."""
    l0, l1 = _weights(l0, l1)
    if l0.size == 0:
        raise LengthMismatch("empty weight vectors")
    return float(np.min(2.0 * np.sqrt(l0 * l1)))


def _is_singular(L: np.ndarray) -> bool:
    w = npl.eigvalsh(hermitianize(L))
    return bool(w[0] <= rank_tol(L))


def polar_max(L0: np.ndarray, L1: np.ndarray) -> float:
    """2 sqrt( lambda_min( sqrt(L1) L0 sqrt(L1) ) ); 0 on singular inputs."""
    L0 = hermitianize(as_square(L0))
    L1 = hermitianize(as_square(L1))
    check_psd(L0, "L0")
    check_psd(L1, "L1")
    if _is_singular(L0) or _is_singular(L1):
        return 0.0
    s1 = psd_sqrt(L1)
    lam_min = float(npl.eigvalsh(hermitianize(s1 @ L0 @ s1))[0])
    return 2.0 * float(np.sqrt(max(lam_min, 0.0)))


def _min_product_pure_state(
    L0: np.ndarray, L1: np.ndarray, restarts: int, seed: int
) -> float:
    """
    Minimize <psi|L0|psi><psi|L1|psi> over unit vectors.

    Uses the self-consistent iteration psi <- bottom eigenvector of
    (b L0 + a L1) with a = <L0>, b = <L1>, which decreases the product
    monotonically (AM-GM), plus multiple starts.
    """
    dim = L0.shape[0]
    starts: list[np.ndarray] = []
    for M in (L0, L1, L0 + L1):
        _, V = npl.eigh(M)
        starts.extend(V[:, j] for j in range(dim))
    rng = rng_for(seed)
    for _ in range(max(restarts, 1)):
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        starts.append(v / npl.norm(v))
    best = np.inf
    for psi in starts:
        psi = psi / npl.norm(psi)
        val = np.inf
        for _ in range(200):
            a = float((psi.conj() @ L0 @ psi).real)
            b = float((psi.conj() @ L1 @ psi).real)
            new_val = a * b
            if new_val >= val - 1e-15:
                val = min(val, new_val)
                break
            val = new_val
            _, V = npl.eigh(b * L0 + a * L1)
            psi = V[:, 0]
        best = min(best, val)
    return float(max(best, 0.0))


def polar_min(L0: np.ndarray, L1: np.ndarray, restarts: int = 20, seed: int = 0) -> float:
    """
    min over unit vectors psi of 2 sqrt(<psi|L0|psi> <psi|L1|psi>); the
    minimum over states sits at a pure state by concavity. Dim-2 inputs are
    routed to the exact qubit closed form.
    """
    L0 = hermitianize(as_square(L0))
    L1 = hermitianize(as_square(L1))
    check_psd(L0, "L0")
    check_psd(L1, "L1")
    if L0.shape[0] == 2:
        return polar_min_qubit(L0, L1)
    return 2.0 * float(np.sqrt(_min_product_pure_state(L0, L1, restarts, seed)))


def polar_half(L0: np.ndarray, L1: np.ndarray) -> float:
    """
    ( max eigenvalue of S_{L0} o S_{L1} )^{-1/2}, via the Hermitian
    symmetrization of the composed Lyapunov operator; 0 on singular inputs
    (continuity of the polar).
    """
    L0 = hermitianize(as_square(L0))
    L1 = hermitianize(as_square(L1))
    check_psd(L0, "L0")
    check_psd(L1, "L1")
    if _is_singular(L0) or _is_singular(L1):
        return 0.0
    top = float(composed_lyapunov_spectrum(L0, L1).eigenvalues[-1])
    return float(top ** -0.5)


def polar(kind: str, L0: np.ndarray, L1: np.ndarray, restarts: int = 20, seed: int = 0) -> float:
    """Dispatch by kind in {max, min, half}."""
    if kind == "max":
        return polar_max(L0, L1)
    if kind == "min":
        return polar_min(L0, L1, restarts=restarts, seed=seed)
    if kind == "half":
        return polar_half(L0, L1)
    raise ValueError(f"unknown polar kind {kind!r}")


def polar_membership(kind: str, L0: np.ndarray, L1: np.ndarray) -> bool:
    """True iff the pair lies in the dual body: polar value >= 1 - 1e-9."""
    return polar(kind, L0, L1) >= 1.0 - 1e-9


def _real_embed(H: np.ndarray) -> np.ndarray:
    v = vec(H)
    return np.concatenate([v.real, v.imag])


def _povm_from_vectors(G: np.ndarray) -> list[np.ndarray] | None:
    """Rank-1 POVM S^{-1/2} g_i g_i^dagger S^{-1/2} from a vector family."""
    raw = [np.outer(g, g.conj()) for g in G]
    S = hermitianize(sum(raw))
    w, V = npl.eigh(S)
    if w[0] <= 1e-10 * (1.0 + w[-1]):
        return None
    Sih = (V * (1.0 / np.sqrt(w))) @ V.conj().T
    return [hermitianize(Sih @ A @ Sih) for A in raw]


def _decomposition_value(
    elements: list[np.ndarray], L0: np.ndarray, L1: np.ndarray, strict: bool
) -> float | None:
    """
    hat-F^C of the best coefficients found for this POVM, or None.

    NNLS gives a vertex of each coefficient polytope; when the POVM spans
    more than the Hermitian space, the leftover affine freedom is used by
    a concave epigraph program maximizing min_i (log l0_i + log l1_i).
    In strict mode any fit with residual above 1e-8 is rejected so the
    returned value is a true lower bound.
    """
    live = [M for M in elements if npl.norm(M) > 1e-12]
    if not live:
        return None
    n = len(live)
    A = np.column_stack([_real_embed(M) for M in live])
    c0, r0 = nnls(A, _real_embed(L0))
    c1, r1 = nnls(A, _real_embed(L1))
    if r0 > 1e-8 or r1 > 1e-8:
        if strict:
            return None
        # soft penalty so direction refinement can walk toward feasibility
        return float(np.min(2.0 * np.sqrt(np.maximum(c0 * c1, 0.0)))) - 50.0 * (r0 + r1)
    base = float(np.min(2.0 * np.sqrt(np.maximum(c0 * c1, 0.0))))
    N = null_space(A)
    k = N.shape[1]
    if k == 0 or not strict:
        return base

    def interior(c: np.ndarray) -> np.ndarray | None:
        # strictly positive point of {c + N xi >= 0} via max-min LP
        res = linprog(
            c=np.r_[np.zeros(k), -1.0],
            A_ub=np.c_[-N, np.ones(n)],
            b_ub=c,
            bounds=[(None, None)] * (k + 1),
            method="highs",
        )
        if not res.success or -res.fun <= 1e-12:
            return None
        return c + N @ res.x[:k]

    l0 = interior(c0)
    l1 = interior(c1)
    if l0 is None or l1 is None:
        return base

    def l_of(x):
        return l0 + N @ x[:k], l1 + N @ x[k : 2 * k]

    def cons_f(x):
        a, b = l_of(x)
        return (
            np.log(np.maximum(a, 1e-300))
            + np.log(np.maximum(b, 1e-300))
            - x[-1]
        )

    def cons_jac(x):
        a, b = l_of(x)
        J = np.zeros((n, 2 * k + 1))
        J[:, :k] = N / np.maximum(a, 1e-300)[:, None]
        J[:, k : 2 * k] = N / np.maximum(b, 1e-300)[:, None]
        J[:, -1] = -1.0
        return J

    t0 = float(np.min(np.log(np.maximum(l0, 1e-300)) + np.log(np.maximum(l1, 1e-300))))
    res = minimize(
        lambda x: -x[-1],
        np.r_[np.zeros(2 * k), t0],
        jac=lambda x: np.r_[np.zeros(2 * k), -1.0],
        method="SLSQP",
        constraints=[{"type": "ineq", "fun": cons_f, "jac": cons_jac}],
        options={"maxiter": 500, "ftol": 1e-14},
    )
    base = max(base, 2.0 * float(np.exp(t0 / 2.0)))
    if res.x is None or not np.all(np.isfinite(res.x)):
        return base
    a, b = l_of(res.x)
    if a.min() < -1e-12 or b.min() < -1e-12:
        return base
    prods = np.maximum(a, 0.0) * np.maximum(b, 0.0)
    return max(base, float(np.min(2.0 * np.sqrt(prods))))


def povm_lower_bound(
    L0: np.ndarray,
    L1: np.ndarray,
    n_outcomes: int,
    trials: int = 100,
    seed: int = 0,
) -> float:
    """
    Best classical polar over sampled POVM decompositions
    L_theta = sum_i l_{theta, i} M_i.

    Random rank-1 POVMs are sampled, coefficients fitted by nonnegative
    least squares, and the most promising direction sets refined by a
    derivative-free local search. Only decompositions with fit residual
    below 1e-8 contribute, so the result is a true lower bound for the max
    polar.
    """
    L0 = hermitianize(as_square(L0))
    L1 = hermitianize(as_square(L1))
    check_psd(L0, "L0")
    check_psd(L1, "L1")
    dim = L0.shape[0]
    if n_outcomes < dim * dim:
        raise ValueError("n_outcomes must be at least dim^2")
    best = None
    # joint eigenbasis: exact for commuting pairs
    _, V = npl.eigh(L0 + L1)
    eig_els = [np.outer(V[:, i], V[:, i].conj()) for i in range(dim)]
    cand = _decomposition_value(eig_els, L0, L1, strict=True)
    if cand is not None:
        best = cand

    def vectors_value(flat: np.ndarray, strict: bool) -> float | None:
        G = (
            flat[: n_outcomes * dim] + 1j * flat[n_outcomes * dim :]
        ).reshape(n_outcomes, dim)
        els = _povm_from_vectors(G)
        if els is None:
            return None if strict else -100.0
        return _decomposition_value(els, L0, L1, strict=strict)

    starts: list[tuple[float, np.ndarray]] = []
    for t in range(trials):
        rng = rng_for(seed, t)
        flat = rng.standard_normal(2 * n_outcomes * dim)
        v = vectors_value(flat, strict=False)
        if v is not None:
            starts.append((v, flat))
        v_strict = vectors_value(flat, strict=True)
        if v_strict is not None:
            best = v_strict if best is None else max(best, v_strict)
    starts.sort(key=lambda sv: -sv[0])
    for _, flat in starts[: min(8, len(starts))]:
        res = minimize(
            lambda x: -(vectors_value(x, strict=False) or -100.0),
            flat,
            method="Nelder-Mead",
            options={"maxiter": 2000, "fatol": 1e-12, "xatol": 1e-9},
        )
        v = vectors_value(res.x, strict=True)
        if v is not None:
            best = v if best is None else max(best, v)
    if best is None:
        raise DecompositionInfeasible(
            f"no nonnegative decomposition found in {trials} trials"
        )
    return float(best)
