# src/fidlab/qubit_geom.py
#
# Exact dim-2 geometry: the convex body M0(M) with its quartic discriminant
# boundary, the induced membership test for the min-fidelity dual body,
# closed forms for both qubit polars, and the necessary conditions for
# unital convertibility of dual pairs.

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.linalg as npl
from scipy.optimize import minimize_scalar

from .errors import (
    DegenerateFrame,
    DegenerateZ,
    DimensionMismatch,
    RootAmbiguity,
    SOutOfRange,
)
from .linalg_core import (
    as_square,
    check_pd,
    check_psd,
    hermitianize,
    psd_tol,
    rank_tol,
)

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "QubitDualPoint",
    "M0Frame",
    "frame_from_operator",
    "f1",
    "f2",
    "discriminant_D",
    "unique_root_w",
    "w2_min_oracle",
    "m0_membership",
    "m0_extreme_points",
    "mfmin_qubit_membership",
    "polar_max_qubit",
    "polar_min_qubit",
    "convertibility_necessary",
]

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

FRAME_TOL = 1e-10


@dataclass(frozen=True)
class QubitDualPoint:
    """Coefficients of sigma_x, sigma_y, sigma_z, I in a fixed frame."""

    x: float
    y: float
    z: float
    w: float

    def to_operator(self) -> np.ndarray:
        return (
            self.x * SIGMA_X + self.y * SIGMA_Y + self.z * SIGMA_Z
            + self.w * np.eye(2, dtype=complex)
        )

    @staticmethod
    def from_operator(H: np.ndarray) -> "QubitDualPoint":
        H = hermitianize(as_square(H))
        if H.shape != (2, 2):
            raise DimensionMismatch("QubitDualPoint needs a 2x2 operator")
        return QubitDualPoint(
            x=float(np.trace(SIGMA_X @ H).real / 2),
            y=float(np.trace(SIGMA_Y @ H).real / 2),
            z=float(np.trace(SIGMA_Z @ H).real / 2),
            w=float(np.trace(H).real / 2),
        )


@dataclass(frozen=True)
class M0Frame:
    """Parameters of M = l sigma_z + m I plus the rotation aligning to it."""

    l: float
    m: float
    rotation: np.ndarray

    def __post_init__(self) -> None:
        if abs(self.l) <= FRAME_TOL:
            raise DegenerateFrame("frame parameter l vanishes")


def frame_from_operator(M: np.ndarray) -> M0Frame:
    """Diagonalize a Hermitian qubit M into the form l sigma_z + m I, l > 0."""
    M = hermitianize(as_square(M))
    if M.shape != (2, 2):
        raise DimensionMismatch("frame_from_operator needs a 2x2 operator")
    w, V = npl.eigh(M)
    # eigh returns ascending order; put the larger eigenvalue on sigma_z's +1 axis
    U = np.column_stack([V[:, 1], V[:, 0]])
    l = float((w[1] - w[0]) / 2)
    m = float((w[1] + w[0]) / 2)
    return M0Frame(l=l, m=m, rotation=U)


def f1(x: float) -> float:
    """|x| - 1 for |x| >= 2, else x^2 / 4."""
    x = float(x)
    return abs(x) - 1.0 if abs(x) >= 2.0 else x * x / 4.0


def f2(x: float, z: float) -> float:
    """Radial analog of f1: depends on sqrt(x^2 + z^2) only."""
    r2 = float(x) ** 2 + float(z) ** 2
    return np.sqrt(r2) - 1.0 if r2 >= 4.0 else r2 / 4.0


def discriminant_D(x: float, z: float, w: float) -> float:
    """The quartic-in-w boundary polynomial, evaluated as printed."""
    x2 = float(x) ** 2
    z2 = float(z) ** 2
    w = float(w)
    c4 = 16.0
    c3 = -8.0 * x2 + 8.0 * z2 + 32.0
    c2 = x2 * x2 + 2.0 * x2 * z2 - 32.0 * x2 + z2 * z2 - 8.0 * z2 + 16.0
    c1 = 10.0 * x2 * x2 + 2.0 * x2 * z2 - 8.0 * x2 - 8.0 * z2 * z2 - 32.0 * z2
    c0 = (
        x2 * x2
        - 3.0 * x2 * x2 * z2
        - x2 * x2 * x2
        - 3.0 * x2 * z2 * z2
        + 20.0 * x2 * z2
        - z2 * z2 * z2
        - 8.0 * z2 * z2
        - 16.0 * z2
    )
    return ((c4 * w + c3) * w + c2) * w * w + c1 * w + c0


def unique_root_w(x: float, z: float) -> float:
    """
    The unique real root of D(x, z, .) in [f2(x, z), infinity), via the
    companion matrix of the quartic. Raises RootAmbiguity if filtering does
    not isolate exactly one root.
    """
    if abs(z) <= 1e-12:
        raise DegenerateZ("z = 0: use the f1 branch instead")
    x2 = float(x) ** 2
    z2 = float(z) ** 2
    coeffs = [
        16.0,
        -8.0 * x2 + 8.0 * z2 + 32.0,
        x2 * x2 + 2.0 * x2 * z2 - 32.0 * x2 + z2 * z2 - 8.0 * z2 + 16.0,
        10.0 * x2 * x2 + 2.0 * x2 * z2 - 8.0 * x2 - 8.0 * z2 * z2 - 32.0 * z2,
        x2 * x2
        - 3.0 * x2 * x2 * z2
        - x2 * x2 * x2
        - 3.0 * x2 * z2 * z2
        + 20.0 * x2 * z2
        - z2 * z2 * z2
        - 8.0 * z2 * z2
        - 16.0 * z2,
    ]
    roots = np.roots(coeffs)
    floor = f2(x, z)
    scale = 1.0 + max(abs(x), abs(z))
    real = [
        float(r.real)
        for r in roots
        if abs(r.imag) <= 1e-7 * scale and r.real >= floor - 1e-9
    ]
    # collapse numerically coincident roots before counting
    real.sort()
    distinct: list[float] = []
    for r in real:
        if not distinct or r - distinct[-1] > 1e-9 * scale:
            distinct.append(r)
    if len(distinct) != 1:
        raise RootAmbiguity(
            f"expected one admissible root at (x={x}, z={z}), found {distinct}"
        )
    return distinct[0]


def w2_min_oracle(x_prime: float, z: float) -> float:
    """
    Independent boundary oracle: global minimum over real s of
    w2(s) = s^2/4 + sqrt((x' - s)^2 + z^2), by dense grid plus refinement.
    """
    x_prime = float(x_prime)
    z = float(z)

    def w2(s):
        return s * s / 4.0 + np.sqrt((x_prime - s) ** 2 + z * z)

    half = abs(x_prime) + 4.0
    grid = np.arange(-half, half + 1e-4, 1e-4)
    vals = w2(grid)
    i = int(np.argmin(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(w2, bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    return float(min(vals[i], res.fun))


def m0_membership(frame: M0Frame, p: QubitDualPoint) -> bool:
    """
    Decide whether the operator with frame coordinates p lies in M0(M).
    The boundary conditions apply to the coordinates divided by l^2.
    """
    l2 = frame.l * frame.l
    x = p.x / l2
    y = p.y / l2
    z = p.z / l2
    w = p.w / l2
    x_prime = float(np.hypot(x, y))
    if abs(z) <= 1e-12:
        return w >= f1(x_prime) - 1e-9
    return (w >= f2(x_prime, z) - 1e-9) and (
        discriminant_D(x_prime, z, w) >= -1e-7
    )


def m0_extreme_points(frame: M0Frame, s: float, alpha: float) -> QubitDualPoint:
    """
    The extreme point l^2 (s (cos a sigma_x + sin a sigma_y) + s^2/4 I),
    with the l^2 factor already included in the returned coordinates.
    """
    s = float(s)
    if not -2.0 <= s <= 2.0:
        raise SOutOfRange(f"s = {s} outside [-2, 2]")
    l2 = frame.l * frame.l
    return QubitDualPoint(
        x=l2 * s * float(np.cos(alpha)),
        y=l2 * s * float(np.sin(alpha)),
        z=0.0,
        w=l2 * s * s / 4.0,
    )


def mfmin_qubit_membership(L0: np.ndarray, L1: np.ndarray) -> bool:
    """
    Exact membership of a qubit pair in the min-fidelity dual body:
    4 L1 = L0^{-1} + sqrt(L0) K sqrt(L0) must have
    K = 4 L0^{-1/2} L1 L0^{-1/2} - L0^{-2} inside M0(L0^{-1}).
    L0 proportional to I falls back to the commuting test L1 >= (1/4) L0^{-1}.
    """
    L0 = hermitianize(as_square(L0))
    L1 = hermitianize(as_square(L1))
    if L0.shape != (2, 2) or L1.shape != (2, 2):
        raise DimensionMismatch("mfmin_qubit_membership is dim-2 only")
    check_pd(L0, "L0")
    w0, V0 = npl.eigh(L0)
    M = (V0 * (1.0 / w0)) @ V0.conj().T          # L0^{-1}
    L0_inv_h = (V0 * (1.0 / np.sqrt(w0))) @ V0.conj().T
    mu = 1.0 / w0
    if (mu.max() - mu.min()) / 2.0 <= FRAME_TOL * (1.0 + mu.max()):
        gap = hermitianize(L1 - 0.25 * M)
        return bool(npl.eigvalsh(gap)[0] >= -psd_tol(gap))
    K = hermitianize(4.0 * L0_inv_h @ L1 @ L0_inv_h - M @ M)
    frame = frame_from_operator(M)
    U = frame.rotation
    K_rot = hermitianize(U.conj().T @ K @ U)
    return m0_membership(frame, QubitDualPoint.from_operator(K_rot))


def polar_max_qubit(L0: np.ndarray, L1: np.ndarray) -> float:
    """
    Closed form for the max-fidelity polar of a qubit pair:
    2 sqrt( (tr L0 L1 - sqrt((tr L0 L1)^2 - 4 det L0 det L1)) / 2 ).
    """
    L0 = hermitianize(as_square(L0))
    L1 = hermitianize(as_square(L1))
    if L0.shape != (2, 2) or L1.shape != (2, 2):
        raise DimensionMismatch("polar_max_qubit is dim-2 only")
    check_psd(L0, "L0")
    check_psd(L1, "L1")
    t = float(np.trace(L0 @ L1).real)
    d = float(npl.det(L0).real * npl.det(L1).real)
    disc = max(t * t - 4.0 * d, 0.0)
    lam_min = (t - np.sqrt(disc)) / 2.0
    return 2.0 * float(np.sqrt(max(lam_min, 0.0)))


def _bloch_split(L: np.ndarray) -> tuple[float, np.ndarray]:
    """Trace part c and Bloch vector u with L = c I + u . sigma."""
    c = float(np.trace(L).real / 2)
    u = np.array(
        [
            np.trace(SIGMA_X @ L).real / 2,
            np.trace(SIGMA_Y @ L).real / 2,
            np.trace(SIGMA_Z @ L).real / 2,
        ]
    )
    return c, u


def polar_min_qubit(L0: np.ndarray, L1: np.ndarray) -> float:
    """
    Exact min-fidelity polar of a qubit pair.

    After scaling both operators to trace 2 the pair fits the normalized
    frame L0 = I + a sigma_x + b sigma_z, L1 = I + a sigma_x - b sigma_z
    exactly when the Bloch radii agree, and the piecewise closed form
    applies; otherwise the minimum of (tr L0 rho)(tr L1 rho) over pure
    states reduces to a one-parameter trigonometric minimization on the
    circle spanned by the two traceless parts.
    """
    L0 = hermitianize(as_square(L0))
    L1 = hermitianize(as_square(L1))
    if L0.shape != (2, 2) or L1.shape != (2, 2):
        raise DimensionMismatch("polar_min_qubit is dim-2 only")
    check_psd(L0, "L0")
    check_psd(L1, "L1")
    c0, u = _bloch_split(L0)
    c1, v = _bloch_split(L1)
    if c0 <= rank_tol(L0) or c1 <= rank_tol(L1):
        return 0.0
    un = u / c0
    vn = v / c1
    scale = float(np.sqrt(c0 * c1))
    r0 = float(npl.norm(un))
    r1 = float(npl.norm(vn))
    if abs(r0 - r1) <= 1e-12:
        a = float(npl.norm(un + vn)) / 2.0
        r2 = (r0 * r0 + r1 * r1) / 2.0
        if r2 < 1e-30:
            return 2.0 * scale
        if r2 >= a:
            inner = (1.0 - r2) * (1.0 - a * a / r2)
            return 2.0 * scale * float(np.sqrt(max(inner, 0.0)))
        return 2.0 * scale * (1.0 - a)
    return 2.0 * float(np.sqrt(max(_circle_min(c0, u, c1, v), 0.0)))


def _circle_min(c0: float, u: np.ndarray, c1: float, v: np.ndarray) -> float:
    """Minimize (c0 + u.n)(c1 + v.n) over unit Bloch vectors n."""
    nu = npl.norm(u)
    nv = npl.norm(v)
    if nu < 1e-15 and nv < 1e-15:
        return c0 * c1
    e1 = u / nu if nu >= nv else v / nv
    other = v if nu >= nv else u
    perp = other - (other @ e1) * e1
    if npl.norm(perp) > 1e-14:
        e2 = perp / npl.norm(perp)
    else:
        # collinear traceless parts: any orthogonal direction is neutral
        trial = np.eye(3)[int(np.argmin(np.abs(e1)))]
        perp = trial - (trial @ e1) * e1
        e2 = perp / npl.norm(perp)
    a0, b0 = float(u @ e1), float(u @ e2)
    a1, b1 = float(v @ e1), float(v @ e2)

    def g(theta):
        ct, st = np.cos(theta), np.sin(theta)
        return np.maximum(c0 + a0 * ct + b0 * st, 0.0) * np.maximum(
            c1 + a1 * ct + b1 * st, 0.0
        )

    grid = np.linspace(0.0, 2.0 * np.pi, 4097)
    vals = g(grid)
    i = int(np.argmin(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(g, bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-13})
    return float(min(vals[i], res.fun))


def _rank(L: np.ndarray) -> int:
    w = npl.eigvalsh(hermitianize(L))
    return int(np.sum(np.abs(w) > rank_tol(L)))


def convertibility_necessary(
    L0: np.ndarray, L1: np.ndarray, L0p: np.ndarray, L1p: np.ndarray
) -> bool:
    """
    Necessary conditions for a unital CP map sending (L0, L1) to (L0p, L1p):
    both polars must not decrease, traces are preserved, the operator norm
    of the difference must not increase, and a rank-1 source forces a
    rank-1 target.
    """
    mats = [hermitianize(as_square(L)) for L in (L0, L1, L0p, L1p)]
    for L in mats:
        if L.shape != (2, 2):
            raise DimensionMismatch("convertibility_necessary is dim-2 only")
    L0, L1, L0p, L1p = mats
    if polar_max_qubit(L0, L1) > polar_max_qubit(L0p, L1p) + 1e-9:
        return False
    if polar_min_qubit(L0, L1) > polar_min_qubit(L0p, L1p) + 1e-9:
        return False
    if abs(np.trace(L0).real - np.trace(L0p).real) > 1e-9:
        return False
    if abs(np.trace(L1).real - np.trace(L1p).real) > 1e-9:
        return False
    if npl.norm(L0 - L1, 2) < npl.norm(L0p - L1p, 2) - 1e-9:
        return False
    if min(_rank(L0), _rank(L1)) == 1 and min(_rank(L0p), _rank(L1p)) != 1:
        return False
    return True
