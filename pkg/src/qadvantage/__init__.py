"""Two-qubit discord, super discord and encoding advantage toolkit."""

from qadvantage.qmat import (
    DensityError,
    EigSystem,
    herm_eig,
    kron,
    partial_trace,
    validate_density,
)
from qadvantage.states import (
    BlochBasis,
    bell_diagonal,
    bloch_projectors,
    pure_schmidt,
    werner,
)
from qadvantage.measure import (
    MeasurementOutcome,
    WeakStrength,
    lift_to_b,
    measure_on_a,
    measure_on_b,
    weak_pair,
)
from qadvantage.correlate import (
    CorrelationReport,
    Scheme,
    classical_corr,
    cond_entropy,
    discord,
    minimize_over_basis,
    mutual_info,
    vn_entropy,
)
from qadvantage.encode import (
    AdvantageReport,
    EncodingEnsemble,
    advantage,
    apply_encoding,
    gen_pauli,
    pauli_ensemble,
    sandwich_check,
)

__version__ = "0.1.0"
