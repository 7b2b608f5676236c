"""One-command reproduction of every closed-form number the package targets.

Each criterion is a self-contained check returning a CriterionResult; the CLI
`repro` subcommand prints one PASS/FAIL line per criterion and the acceptance
test suite asserts each one.  Tolerances are pinned here and nowhere else.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cos, pi, sqrt

import numpy as np

from .entanglement import (
    binary_entropy_bits,
    concurrence_two_qubit,
    entropy_counterexample,
    is_completely_entangled,
    measure_qutrit,
    maximize_total_variance,
    qutrit_flip_spectrum,
    three_tangle,
    two_qubit_flip_spectrum,
)
from .linalg import DensityOperator, StateVector, partial_trace, tensor_product
from .observables import PAULI_Y, gell_mann_basis, pauli_basis, spin1_basis, total_variance
from .pentagram import (
    classical_cycle_minimum,
    optimize_pentagram,
    pentagram_value,
    regular_pentagram,
    to_vector_rep,
)
from .states import (
    atom_field_state,
    basis_state,
    coherent_state,
    embed_symmetric,
    ghz_state,
    ghz_type_state,
    haar_random_state,
    lambda_hamiltonian,
    squeezed_state,
    squeezing_report,
    w_state,
    bi_state,
    werner_qutrit,
    werner_two_qubit,
)

_EMBED_FLIP_REF = np.array([[0, 0, -1], [0, 1, 0], [-1, 0, 0]], dtype=complex)

PENTAGRAM_RESTARTS = 6


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str


def _ce_states():
    s = 1.0 / sqrt(2.0)
    return (
        basis_state((3,), 1),
        StateVector((3,), np.array([s, 0.0, s])),
        StateVector((3,), np.array([s, 0.0, -s])),
    )


def criterion_complete_entanglement() -> CriterionResult:
    basis = spin1_basis()
    mu_err = 0.0
    residual = 0.0
    for psi in _ce_states():
        mu_err = max(mu_err, abs(measure_qutrit(psi) - 1.0))
        residual = max(residual, is_completely_entangled(psi, basis)[1])
    passed = mu_err <= 1e-9 and residual < 1e-10
    return CriterionResult(
        "complete-entanglement values",
        passed,
        f"max |mu - 1| = {mu_err:.3g}, max residual = {residual:.3g}",
    )


def criterion_coherent_nullity() -> CriterionResult:
    rng = np.random.default_rng(1201)
    mu_max = 0.0
    var_err = 0.0
    for _ in range(200):
        alpha = complex(rng.normal(0.0, 1.2), rng.normal(0.0, 1.2))
        psi = coherent_state(alpha)
        mu_max = max(mu_max, measure_qutrit(psi))
        var_err = max(var_err, abs(squeezing_report(psi).min_transverse_variance - 0.5))
    passed = mu_max <= 1e-10 and var_err <= 1e-9
    return CriterionResult(
        "coherent-state nullity",
        passed,
        f"max mu = {mu_max:.3g}, max |V_min - 1/2| = {var_err:.3g}",
    )


def criterion_squeezed_curve() -> CriterionResult:
    err = 0.0
    for r in np.linspace(0.0, pi / 2.0, 100):
        err = max(err, abs(measure_qutrit(squeezed_state(r)) - abs(np.sin(2.0 * r))))
    psi = squeezed_state(pi / 4.0)
    target = StateVector((3,), np.array([1.0, 0.0, -1.0]) / sqrt(2.0))
    overlap_defect = abs(1.0 - abs(np.vdot(target.amplitudes, psi.amplitudes)))
    passed = err <= 1e-9 and overlap_defect <= 1e-9
    return CriterionResult(
        "squeezed-state curve",
        passed,
        f"max |mu - |sin 2xi|| = {err:.3g}, phase-free overlap defect = {overlap_defect:.3g}",
    )


def criterion_total_variance_extremes() -> CriterionResult:
    _, v_spin, _ = maximize_total_variance(spin1_basis(), restarts=32, seed=0)
    _, v_pauli, _ = maximize_total_variance(pauli_basis(2), restarts=32, seed=0)
    su3 = gell_mann_basis()
    rng = np.random.default_rng(1204)
    const_err = max(
        abs(total_variance(su3, haar_random_state((3,), rng)) - 4.0) for _ in range(1000)
    )
    passed = abs(v_spin - 2.0) <= 1e-7 and abs(v_pauli - 6.0) <= 1e-7 and const_err <= 1e-9
    return CriterionResult(
        "total-variance extremes",
        passed,
        f"spin-1 max = {v_spin!r}, pauli-2 max = {v_pauli!r}, su3 spread = {const_err:.3g}",
    )


def criterion_skew_information() -> CriterionResult:
    from .observables import skew_information, variance

    basis = spin1_basis()
    rng = np.random.default_rng(1205)
    err = 0.0
    for _ in range(100):
        psi = haar_random_state((3,), rng)
        rho = DensityOperator.from_state(psi)
        for X in basis.operators:
            err = max(err, abs(skew_information(X, rho) - variance(X, psi)))
    passed = err <= 1e-9
    return CriterionResult(
        "skew information equals variance on pure states",
        passed,
        f"max |I_WY - V| = {err:.3g}",
    )


def criterion_symmetric_embedding() -> CriterionResult:
    rng = np.random.default_rng(1206)
    err = 0.0
    for _ in range(1000):
        psi = haar_random_state((3,), rng)
        emb = embed_symmetric(psi)
        err = max(
            err, abs(measure_qutrit(psi) - concurrence_two_qubit(DensityOperator.from_state(emb)))
        )
    embed_cols = np.column_stack(
        [embed_symmetric(basis_state((3,), i)).amplitudes for i in range(3)]
    )
    conj = embed_cols.conj().T @ tensor_product(PAULI_Y, PAULI_Y) @ embed_cols
    flip_err = float(np.abs(conj - _EMBED_FLIP_REF).max())
    passed = err <= 1e-9 and flip_err <= 1e-12
    return CriterionResult(
        "symmetric embedding matches two-qubit concurrence",
        passed,
        f"max |mu - C| = {err:.3g}, flip-matrix defect = {flip_err:.3g}",
    )


def criterion_three_qubit_table() -> CriterionResult:
    tau_err = max(
        abs(three_tangle(ghz_state()) - 1.0),
        abs(three_tangle(w_state())),
        abs(three_tangle(bi_state())),
    )
    grid_err = max(
        abs(three_tangle(ghz_type_state(x)) - 4.0 * x * x * (1.0 - x * x))
        for x in np.linspace(0.02, 0.98, 33)
    )
    pairs = ((0, 1), (0, 2), (1, 2))
    rho_ghz = DensityOperator.from_state(ghz_state())
    ghz_pair = max(concurrence_two_qubit(partial_trace(rho_ghz, keep=p)) for p in pairs)
    rho_w = DensityOperator.from_state(w_state())
    w_pairs = [concurrence_two_qubit(partial_trace(rho_w, keep=p)) for p in pairs]
    w_spread = max(w_pairs) - min(w_pairs)
    passed = (
        tau_err <= 1e-10
        and grid_err <= 1e-9
        and ghz_pair <= 1e-10
        and w_spread <= 1e-10
        and min(w_pairs) > 0.0
    )
    return CriterionResult(
        "three-qubit tangle and pair concurrences",
        passed,
        f"tau defect = {tau_err:.3g}, grid defect = {grid_err:.3g}, "
        f"GHZ pairs <= {ghz_pair:.3g}, W pairs = {w_pairs[0]:.6f} (spread {w_spread:.3g})",
    )


def _bisect_crossing(f, lo, hi, iters=80):
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0.0) == (flo > 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def criterion_werner_thresholds() -> CriterionResult:
    grid_err = 0.0
    from .entanglement import concurrence_qutrit

    for x in np.linspace(0.0, 1.0, 41):
        grid_err = max(
            grid_err,
            abs(concurrence_qutrit(werner_qutrit(x)) - max(0.0, 1.0 - 4.0 * x / 3.0)),
            abs(concurrence_two_qubit(werner_two_qubit(x)) - max(0.0, 1.0 - 1.5 * x)),
        )

    def raw3(x):
        lam = qutrit_flip_spectrum(werner_qutrit(x))
        return lam[0] - lam[1] - lam[2]

    def raw4(x):
        lam = two_qubit_flip_spectrum(werner_two_qubit(x))
        return lam[0] - lam[1] - lam[2] - lam[3]

    x3 = _bisect_crossing(raw3, 0.5, 0.95)
    x4 = _bisect_crossing(raw4, 0.4, 0.9)
    passed = grid_err <= 1e-9 and abs(x3 - 0.75) <= 1e-9 and abs(x4 - 2.0 / 3.0) <= 1e-9
    return CriterionResult(
        "Werner concurrence thresholds",
        passed,
        f"curve defect = {grid_err:.3g}, crossings = {x3!r}, {x4!r}",
    )


def criterion_regular_pentagram() -> CriterionResult:
    axis = np.array([0.0, 0.0, 1.0])
    report = pentagram_value(regular_pentagram(axis), axis.astype(complex))
    value_err = abs(report.geometric_value - 2.2360680)
    classical_ok = classical_cycle_minimum() + 3 >= 0
    passed = value_err <= 1e-6 and report.bell_lhs < 0.0 and report.violated and classical_ok
    return CriterionResult(
        "regular pentagram violation",
        passed,
        f"value = {report.geometric_value!r}, bell_lhs = {report.bell_lhs:.6f}, "
        f"classical minimum + 3 = {classical_cycle_minimum() + 3}",
    )


def criterion_pentagram_optimizer() -> CriterionResult:
    rng = np.random.default_rng(1210)
    entangled = []
    while len(entangled) < 100:
        psi = haar_random_state((3,), rng)
        if measure_qutrit(psi) > 0.3:
            entangled.append(psi)
    worst_entangled = np.inf
    for i, psi in enumerate(entangled):
        _, report = optimize_pentagram(
            to_vector_rep(psi), restarts=PENTAGRAM_RESTARTS, seed=1000 + i
        )
        worst_entangled = min(worst_entangled, report.geometric_value)
    best_coherent = -np.inf
    for i in range(100):
        alpha = complex(rng.normal(0.0, 1.2), rng.normal(0.0, 1.2))
        _, report = optimize_pentagram(
            to_vector_rep(coherent_state(alpha)), restarts=PENTAGRAM_RESTARTS, seed=2000 + i
        )
        best_coherent = max(best_coherent, report.geometric_value)
    passed = worst_entangled > 2.0 + 1e-6 and best_coherent <= 2.0 + 1e-6
    return CriterionResult(
        "pentagram optimizer separates entangled from coherent",
        passed,
        f"worst entangled value = {worst_entangled!r}, best coherent value = {best_coherent!r}",
    )


def criterion_atom_field() -> CriterionResult:
    conc_err = 0.0
    parallel_err = 0.0
    for g1 in np.linspace(0.2, 2.0, 10):
        for g2 in np.linspace(0.2, 2.0, 10):
            psi = atom_field_state(g1, g2)
            conc = concurrence_two_qubit(DensityOperator.from_state(psi))
            conc_err = max(conc_err, abs(conc - 2.0 * abs(g1 * g2) / (g1 * g1 + g2 * g2)))
            out = lambda_hamiltonian(g1, g2) @ np.array([1.0, 0.0, 0.0], dtype=complex)
            parallel_err = max(
                parallel_err,
                abs(out[0]),
                abs(out[1] * g2 - out[2] * g1),
            )
    passed = conc_err <= 1e-12 and parallel_err <= 1e-12
    return CriterionResult(
        "atom-field concurrence 2|g1 g2|/(g1^2+g2^2)",
        passed,
        f"max concurrence defect = {conc_err:.3g}, max parallelism defect = {parallel_err:.3g}",
    )


def criterion_entropy_counterexample() -> CriterionResult:
    rep = entropy_counterexample(0.6)
    h_ref = binary_entropy_bits(0.36)
    tau_err = abs(rep.tau - 0.9216)
    ent_err = max(abs(rep.entropy_two_qubit - h_ref), abs(rep.entropy_one_qubit - h_ref))
    passed = tau_err <= 1e-9 and rep.pair_concurrence <= 1e-10 and ent_err <= 1e-9
    return CriterionResult(
        "entropy counterexample at x = 0.6",
        passed,
        f"tau = {rep.tau!r}, pair concurrence = {rep.pair_concurrence:.3g}, "
        f"entropy defect = {ent_err:.3g}",
    )


ALL_CRITERIA = (
    ("1. complete-entanglement values", criterion_complete_entanglement),
    ("2. coherent-state nullity", criterion_coherent_nullity),
    ("3. squeezed-state curve", criterion_squeezed_curve),
    ("4. total-variance extremes", criterion_total_variance_extremes),
    ("5. skew information on pure states", criterion_skew_information),
    ("6. symmetric embedding", criterion_symmetric_embedding),
    ("7. three-qubit table", criterion_three_qubit_table),
    ("8. Werner thresholds", criterion_werner_thresholds),
    ("9. regular pentagram", criterion_regular_pentagram),
    ("10. pentagram optimizer", criterion_pentagram_optimizer),
    ("11. atom-field example", criterion_atom_field),
    ("12. entropy counterexample", criterion_entropy_counterexample),
)


def run_all():
    return [crit() for _, crit in ALL_CRITERIA]
