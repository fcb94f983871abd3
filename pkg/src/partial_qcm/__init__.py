"""Symmetric "partial" quantum cloning of two-partite qubit states and of mixed qubit states."""

from .errors import DomainError, ObjectiveError, QCMError, UsageError
from .qstate import (
    Amplitudes2Q,
    BlochPoint,
    QubitDensity,
    alt_purify,
    bloch_to_density,
    density_to_bloch,
    fidelity,
    hs_dist_sq,
    purify,
    reduce_first,
)
from .qcm import (
    AncillaFrame,
    ClonerParams,
    apply_qcm,
    build_ancilla_frame,
    joint_output,
    single_output,
    w_closed,
    w_oracle,
)
from .ensemble import (
    AveragingScheme,
    ObjectiveEstimate,
    PureParam,
    g_mixed,
    g_pure,
    measure_selfcheck,
    pure_param_to_state,
)
from .search import SearchResult, minimize

__version__ = "0.1.0"
