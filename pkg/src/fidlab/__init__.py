# src/fidlab/__init__.py

"""
Quantum fidelities, their polar duals, convex-programming certificates,
and exact qubit dual-body geometry.
"""

from .certify import Certificate, block_psd, duality_certificate, mfmax_membership
from .channels import (
    KrausChannel,
    Povm,
    adjoint,
    apply,
    measurement_channel,
    preparation_channel,
    random_cptp,
    random_povm,
)
from .fidelity import (
    ReverseTest,
    classical_fidelity,
    dual_optimizers,
    fidelity,
    fidelity_half,
    fidelity_max,
    fidelity_min,
    fidelity_min_via_twist,
    optimal_measurement,
    optimal_reverse_test,
)
from .linalg_core import (
    OperatorPair,
    Spectrum,
    pinch,
    pinv,
    psd_sqrt,
    schur_reduce,
    spectrum,
    support_projector,
)
from .polar import (
    polar,
    polar_classical,
    polar_half,
    polar_max,
    polar_membership,
    polar_min,
    povm_lower_bound,
)
from .qubit_geom import (
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
from .superop import (
    SuperOperator,
    composed_lyapunov_spectrum,
    lyapunov_solve,
    lyapunov_superop,
    positive_fixed_point,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "KrausChannel",
    "M0Frame",
    "OperatorPair",
    "Povm",
    "QubitDualPoint",
    "ReverseTest",
    "Spectrum",
    "SuperOperator",
    "adjoint",
    "apply",
    "block_psd",
    "classical_fidelity",
    "composed_lyapunov_spectrum",
    "convertibility_necessary",
    "discriminant_D",
    "dual_optimizers",
    "duality_certificate",
    "f1",
    "f2",
    "fidelity",
    "fidelity_half",
    "fidelity_max",
    "fidelity_min",
    "fidelity_min_via_twist",
    "frame_from_operator",
    "lyapunov_solve",
    "lyapunov_superop",
    "m0_extreme_points",
    "m0_membership",
    "measurement_channel",
    "mfmax_membership",
    "mfmin_qubit_membership",
    "optimal_measurement",
    "optimal_reverse_test",
    "pinch",
    "pinv",
    "polar",
    "polar_classical",
    "polar_half",
    "polar_max",
    "polar_max_qubit",
    "polar_membership",
    "polar_min",
    "polar_min_qubit",
    "positive_fixed_point",
    "povm_lower_bound",
    "preparation_channel",
    "psd_sqrt",
    "random_cptp",
    "random_povm",
    "schur_reduce",
    "spectrum",
    "support_projector",
    "unique_root_w",
    "w2_min_oracle",
]
