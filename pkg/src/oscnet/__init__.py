"""Entanglement entropy of Gaussian oscillator networks on graphs.

The package computes bipartite ground-state entanglement of quadratic
oscillator networks whose couplings follow a graph: the ground state is the
Gaussian exp(-1/2 x^T M x) with M built from the graph's potential matrix
V = I + 2gL, and the entropy of any vertex bipartition follows from the
singular values of the normalized off-diagonal block of M.

Main entry points:

* :func:`build_hamming` / :func:`build_from_edges` -- adjacency matrices,
* :func:`bipartite_entropy` -- entropy of one bipartition (any graph),
* :func:`reduce_chain` / :mod:`oscnet.schur` -- exact tridiagonal reduction,
* :mod:`oscnet.strata` -- Hamming-graph ladder blocks and closed-form
  gamma families with oracle verification,
* :func:`oscnet.scan.scan` -- exhaustive equal-size bipartition scans,
* :mod:`oscnet.cli` -- the ``oscnet`` command-line tool.
"""

from .errors import (
    CapacityError,
    CheckFailure,
    NumericalError,
    OscnetError,
    SchemeError,
    ValidationError,
)
from .gaussian import (
    CONVENTIONS,
    LITERAL_V,
    SQRT_V,
    Bipartition,
    EntropyResult,
    GammaSpectrum,
    ModeEntropy,
    bipartite_entropy,
    entropy_from_gammas,
    exponent_matrix,
    gamma_spectrum,
    hermite_functions,
    mehler_check,
    mode_entropy,
    nu_from_gamma,
    schmidt_coefficients,
)
from .netgraph import (
    HammingSpec,
    SchemeTensor,
    build_distance_k,
    build_from_edge_file,
    build_from_edges,
    build_hamming,
    distance_matrix,
    graph_distance_relations,
    hamming_relations,
    hamming_specs_within,
    laplacian,
    potential_matrix,
    read_edge_list,
    verify_scheme,
)
from .schur import (
    EffectiveTwoByTwo,
    TridiagonalChain,
    continued_fraction,
    gamma_scalar,
    reduce_chain,
    schur_eliminate,
)
from .scan import (
    EntropyClassReport,
    ScanClass,
    ScanConfig,
    enumerate_bipartitions,
    scan,
)
from .strata import (
    AnalyticReport,
    StratumBlock,
    StrataBasis,
    adjacency_halves_bipartition,
    adjacency_halves_gammas,
    adjhalves_report,
    analytic_report,
    block_chain,
    block_multiplicities,
    evenodd_bipartition,
    evenodd_gammas,
    evenodd_report,
    halfhalf_bipartition,
    halfhalf_gammas,
    halfhalf_report,
    state_count_terms,
    strata_bipartition,
    stratification_basis,
)

__version__ = "0.1.0"

__all__ = [
    "OscnetError",
    "ValidationError",
    "CapacityError",
    "NumericalError",
    "SchemeError",
    "CheckFailure",
    "LITERAL_V",
    "SQRT_V",
    "CONVENTIONS",
    "Bipartition",
    "GammaSpectrum",
    "ModeEntropy",
    "EntropyResult",
    "bipartite_entropy",
    "entropy_from_gammas",
    "exponent_matrix",
    "gamma_spectrum",
    "mode_entropy",
    "nu_from_gamma",
    "schmidt_coefficients",
    "hermite_functions",
    "mehler_check",
    "HammingSpec",
    "SchemeTensor",
    "build_hamming",
    "build_distance_k",
    "build_from_edges",
    "build_from_edge_file",
    "read_edge_list",
    "distance_matrix",
    "hamming_relations",
    "hamming_specs_within",
    "graph_distance_relations",
    "laplacian",
    "potential_matrix",
    "verify_scheme",
    "TridiagonalChain",
    "EffectiveTwoByTwo",
    "schur_eliminate",
    "continued_fraction",
    "reduce_chain",
    "gamma_scalar",
    "ScanConfig",
    "ScanClass",
    "EntropyClassReport",
    "enumerate_bipartitions",
    "scan",
    "StratumBlock",
    "StrataBasis",
    "AnalyticReport",
    "block_chain",
    "block_multiplicities",
    "state_count_terms",
    "stratification_basis",
    "strata_bipartition",
    "halfhalf_bipartition",
    "evenodd_bipartition",
    "adjacency_halves_bipartition",
    "halfhalf_gammas",
    "evenodd_gammas",
    "adjacency_halves_gammas",
    "halfhalf_report",
    "evenodd_report",
    "adjhalves_report",
    "analytic_report",
    "__version__",
]
