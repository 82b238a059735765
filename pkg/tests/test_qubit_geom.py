import numpy as np
import numpy.linalg as npl
import pytest

from fidlab.channels import random_pd, rng_for
from fidlab.errors import DegenerateFrame, DegenerateZ, SOutOfRange
from fidlab.linalg_core import hermitianize
from fidlab.qubit_geom import (
    SIGMA_X,
    SIGMA_Z,
    M0Frame,
    QubitDualPoint,
    convertibility_necessary,
    discriminant_D,
    f1,
    f2,
    frame_from_operator,
    m0_extreme_points,
    m0_membership,
    mfmin_qubit_membership,
    polar_max_qubit,
    polar_min_qubit,
    unique_root_w,
    w2_min_oracle,
)

I2 = np.eye(2, dtype=complex)
FRAME = M0Frame(l=1.0, m=0.0, rotation=I2.copy())


def _pd_inverse(H):
    w, V = npl.eigh(hermitianize(H))
    return hermitianize((V * (1.0 / w)) @ V.conj().T)


def test_f1_values():
    assert f1(3) == pytest.approx(2.0)
    assert f1(1) == pytest.approx(0.25)
    assert f1(2) == pytest.approx(1.0)
    assert f1(-2) == pytest.approx(1.0)


def test_f2_values():
    assert f2(0, 1) == pytest.approx(0.25)
    assert f2(3, 4) == pytest.approx(4.0)


def test_discriminant_frozen_values():
    assert discriminant_D(0, 1, 1) == pytest.approx(0.0, abs=1e-12)
    assert discriminant_D(0, 1, 2) == pytest.approx(507.0, abs=1e-9)


def test_unique_root_values():
    assert unique_root_w(0, 1) == pytest.approx(1.0, abs=1e-9)
    assert unique_root_w(0, 0.3) == pytest.approx(0.3, abs=1e-9)
    assert unique_root_w(1, 1) == pytest.approx(w2_min_oracle(1, 1), abs=1e-6)


def test_unique_root_rejects_z_zero():
    with pytest.raises(DegenerateZ):
        unique_root_w(1.0, 0.0)


def test_w2_oracle_values():
    assert w2_min_oracle(1, 0) == pytest.approx(0.25, abs=1e-9)
    assert w2_min_oracle(3, 0) == pytest.approx(2.0, abs=1e-9)
    assert w2_min_oracle(0, 1) == pytest.approx(1.0, abs=1e-9)


def test_m0_membership_boundary_points():
    assert m0_membership(FRAME, QubitDualPoint(x=1, y=0, z=0, w=0.25))
    assert not m0_membership(FRAME, QubitDualPoint(x=0, y=0, z=1, w=0.999))
    assert m0_membership(FRAME, QubitDualPoint(x=0, y=0, z=1, w=1.0))


def test_m0_extreme_points():
    origin = m0_extreme_points(FRAME, 0.0, 0.7)
    assert (origin.x, origin.y, origin.z, origin.w) == (0.0, 0.0, 0.0, 0.0)
    p = m0_extreme_points(FRAME, 2.0, 0.0)
    assert (p.x, p.y, p.z, p.w) == pytest.approx((2.0, 0.0, 0.0, 1.0))
    with pytest.raises(SOutOfRange):
        m0_extreme_points(FRAME, 3.0, 0.0)


def test_frame_degeneracy():
    with pytest.raises(DegenerateFrame):
        M0Frame(l=0.0, m=1.0, rotation=I2.copy())


def test_frame_from_operator():
    fr = frame_from_operator(2.0 * SIGMA_Z + 0.5 * I2)
    assert fr.l == pytest.approx(2.0)
    assert fr.m == pytest.approx(0.5)
    M = fr.rotation @ (fr.l * SIGMA_Z + fr.m * I2) @ fr.rotation.conj().T
    assert np.allclose(M, 2.0 * SIGMA_Z + 0.5 * I2, atol=1e-12)


def test_mfmin_membership_extreme():
    rng = rng_for(40)
    L0 = random_pd(2, rng)
    L1 = 0.25 * _pd_inverse(L0)
    assert mfmin_qubit_membership(L0, L1)
    assert not mfmin_qubit_membership(L0, L1 - 1e-3 * I2)


def test_mfmin_membership_commuting_fallback():
    assert mfmin_qubit_membership(2 * I2, I2)
    assert not mfmin_qubit_membership(I2 / 4, I2 / 4)


def test_polar_max_qubit_values():
    assert polar_max_qubit(I2, I2) == pytest.approx(2.0, abs=1e-12)
    assert polar_max_qubit(I2 + 0.6 * SIGMA_Z, I2 - 0.6 * SIGMA_Z) == pytest.approx(
        1.6, abs=1e-9
    )


def test_polar_min_qubit_values():
    assert polar_min_qubit(I2 + 0.6 * SIGMA_Z, I2 - 0.6 * SIGMA_Z) == pytest.approx(
        1.6, abs=1e-9
    )
    assert polar_min_qubit(I2 + 0.6 * SIGMA_X, I2 + 0.6 * SIGMA_X) == pytest.approx(
        0.8, abs=1e-9
    )


def test_qubit_dual_point_roundtrip():
    p = QubitDualPoint(x=0.3, y=-0.2, z=0.7, w=1.1)
    q = QubitDualPoint.from_operator(p.to_operator())
    assert (q.x, q.y, q.z, q.w) == pytest.approx((p.x, p.y, p.z, p.w), abs=1e-12)


def test_convertibility_identical_pairs():
    rng = rng_for(41)
    L0 = random_pd(2, rng)
    L1 = random_pd(2, rng)
    assert convertibility_necessary(L0, L1, L0, L1)


def test_convertibility_overlap_direction():
    # same trace and purity, larger overlap: polars drop, so conversion
    # toward larger tr L0 L1 is ruled out by the polar conditions
    r = 0.7
    a_lo, a_hi = 0.1, 0.6

    def pair(a):
        b = np.sqrt(r * r - a * a)
        return I2 + a * SIGMA_X + b * SIGMA_Z, I2 + a * SIGMA_X - b * SIGMA_Z

    src = pair(a_lo)
    dst = pair(a_hi)
    assert not convertibility_necessary(*src, *dst)


def test_convertibility_rank_one_source():
    rank1 = np.array([[2.0, 0.0], [0.0, 0.0]], dtype=complex)
    full0 = np.diag([1.5, 0.5]).astype(complex)
    full1 = np.diag([0.5, 0.5]).astype(complex)
    assert not convertibility_necessary(rank1, np.diag([1.0, 0.0]).astype(complex),
                                        full0, full1)
