"""Entanglement as extremal quantum uncertainty of declared basic observables.

Fixing which Hermitian operators count as measurable (an orthogonal
Lie-algebra basis, the system's dynamic symmetry) fixes what entanglement
means: completely entangled states maximize the summed variance of those
observables, coherent states minimize it, and the normalized excess is a
measure that coincides with the concurrence where both are defined.  The same
three-dimensional state is unentangled under the full su(3) observable set
and can be entangled under the three spin-1 operators alone.
"""

from .entanglement import (
    EntanglementAssessment,
    EntropyCounterexample,
    assess,
    binary_entropy_bits,
    compute_variance_range,
    concurrence_qutrit,
    concurrence_two_qubit,
    entropy_counterexample,
    is_completely_entangled,
    maximize_total_variance,
    measure_qutrit,
    minimize_total_variance,
    slocc_apply,
    three_tangle,
    von_neumann_entropy,
)
from .errors import (
    BadSubsystem,
    Collapse,
    DimensionMismatch,
    EntvarError,
    FullyAntisymmetric,
    NoConvergence,
    NotHermitian,
    NotOrthogonal,
    NotPositive,
    OutOfRange,
    UnknownRange,
    ZeroCoupling,
)
from .linalg import (
    DensityOperator,
    StateVector,
    general_eigenvalues,
    hermitian_eigendecomposition,
    matrix_exp,
    matrix_sqrt_psd,
    partial_trace,
    tensor_product,
)
from .observables import (
    CasimirValue,
    ObservableBasis,
    basis_by_name,
    casimir,
    correlation_function,
    expectation,
    gell_mann_basis,
    pauli_basis,
    skew_information,
    spin1_basis,
    total_variance,
    variance,
)
from .pentagram import (
    Pentagram,
    PentagramReport,
    classical_cycle_minimum,
    from_vector_rep,
    optimize_pentagram,
    pentagram_value,
    r_operator,
    regular_pentagram,
    spin_projection_vector_rep,
    to_vector_rep,
)
from .states import (
    SqueezingReport,
    atom_field_state,
    basis_state,
    bi_state,
    coherent_state,
    embed_symmetric,
    ghz_state,
    ghz_type_state,
    haar_random_state,
    lambda_hamiltonian,
    project_symmetric,
    squeezed_state,
    squeezing_report,
    w_state,
    werner_qutrit,
    werner_two_qubit,
)

__version__ = "0.1.0"
