"""Discrimination bounds and one-bit data hiding for two-party ensembles.

The package is organized around one module per concern:

- :mod:`qhide.linalg` - dense Hermitian operator algebra on bipartite
  spaces (regrouped tensor products, partial transposition, trace norms).
- :mod:`qhide.ensembles` - two-state ensembles, parity coarse-graining,
  and the closed-form two-qubit separable family.
- :mod:`qhide.bounds` - certificate-based upper bounds and their
  exponential decay in the number of copies.
- :mod:`qhide.solver` - exact PPT-restricted values by convex trace-norm
  minimization.
- :mod:`qhide.protocol` - seeded Monte Carlo simulation of the one-bit
  hiding scheme.
- :mod:`qhide.cli` - the ``qhide`` command-line tool.
"""

from .errors import (
    DegenerateBranch,
    DimensionTooLarge,
    HypothesisViolated,
    InvalidStrategy,
    NonConvergence,
    NotPTInvariant,
    QhideError,
    ResidualTooLarge,
    ThetaOutOfRange,
)
from .linalg import (
    BipartiteDims,
    BipartiteOperator,
    frobenius_distance,
    hermitian_eigenvalues,
    identity,
    is_psd,
    partial_transpose,
    tensor_bipartite,
    tensor_power,
    trace,
    trace_norm,
)
from .ensembles import (
    THETA_MAX,
    TwoStateEnsemble,
    closed_form_residuals,
    coarse_grain,
    f0,
    f1,
    helstrom_operator,
    is_pt_invariant,
    rotated_bell_basis,
    two_copy_basis,
    two_copy_certificate,
    two_copy_certificate_pt,
    two_copy_coefficients,
    two_qubit_separable_ensemble,
)
from .bounds import (
    BoundReport,
    bound_report,
    certificate_upper_bound,
    decay_bound,
    decay_bound_k1,
    helstrom_value,
    pt_placement_sum,
    symmetrized_bound,
    symmetrized_certificate,
)
from .solver import SolverConfig, SolverResult, monotonicity_scan, solve_ppt
from .protocol import (
    HidingInstance,
    SimReport,
    Strategy,
    best_local_strategy,
    blind_strategy,
    computational_strategy,
    local_strategy_catalog,
    rotated_projector_strategy,
    run_protocol,
    strategy_success_probability,
)

__version__ = "0.1.0"
