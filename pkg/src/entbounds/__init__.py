"""Concurrence bounds, fidelity and super-fidelity, and numerical checks of the
fidelity argument that links them."""

from .bounds import (
    BoundsReport,
    ChainReport,
    chain_check,
    lower_bound,
    proof_chain_check,
    sandwich_check,
    upper_bound,
)
from .decompositions import (
    Decomposition,
    SearchConfig,
    eigen_ensemble,
    from_isometry,
    minimize_average_concurrence,
)
from .ensembles import Isometry, SeedSpec, haar_pure, random_density, random_isometry
from .measures import (
    average_concurrence,
    concurrence_pure,
    concurrence_two_qubit,
    fidelity,
    super_fidelity,
)
from .states import (
    BipartiteSplit,
    PureState,
    QuantumState,
    density_from_pure,
    overlap,
    partial_trace,
    purify,
    purity,
    tensor,
    validate_density,
)

__version__ = "0.1.0"
