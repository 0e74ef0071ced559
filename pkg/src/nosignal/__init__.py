"""Quantum state and channel simulation for testing superluminal-signaling proposals."""
from .channels import (
    ChannelReport,
    KrausChannel,
    apply_deterministic,
    apply_selective,
    choi_matrix,
    complete_to_deterministic,
    greenberger_T,
    is_completely_positive,
    linearity_test,
    validate_channel,
)
from .nosig import TargetTransform, fuzz_no_signaling, marginal_obstruction
from .optics import propagate_network, reference_input, reference_network
from .scenarios import (
    ScenarioReport,
    run_epr_bohm,
    run_erasure,
    run_greenberger,
    run_stern_gerlach,
)
from .states import (
    DensityOperator,
    PureState,
    greenberger_initial,
    greenberger_predetector,
    measurement_probabilities,
    pure_to_density,
    reduced_state,
    singlet,
)
from .tensor import DimensionSpec, adjoint, hermitian_eigenvalues, kron, partial_trace

__version__ = "0.1.0"
