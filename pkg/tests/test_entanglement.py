import numpy as np
import pytest

from entvar.entanglement import (
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
    qutrit_flip_spectrum,
    slocc_apply,
    three_tangle,
    von_neumann_entropy,
)
from entvar.errors import Collapse, DimensionMismatch, UnknownRange
from entvar.linalg import DensityOperator, StateVector, partial_trace, tensor_product
from entvar.observables import (
    ObservableBasis,
    PAULI_Y,
    casimir,
    gell_mann_basis,
    pauli_basis,
    spin1_basis,
)
from entvar.states import (
    basis_state,
    bi_state,
    coherent_state,
    embed_symmetric,
    ghz_state,
    ghz_type_state,
    haar_random_state,
    w_state,
    werner_qutrit,
    werner_two_qubit,
)


def random_unitary(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def pure_concurrence_oracle(psi4):
    """Pure-state Wootters concurrence |<psi|sigma_y x sigma_y|psi*>|."""
    flip = tensor_product(PAULI_Y, PAULI_Y)
    return abs(psi4.amplitudes @ flip @ psi4.amplitudes)


class TestAssess:
    def test_complete_entanglement(self):
        result = assess(basis_state((3,), 1), spin1_basis())
        assert result.total_variance == pytest.approx(2.0, abs=1e-12)
        assert result.mu == pytest.approx(1.0, abs=1e-9)
        assert result.completely_entangled
        assert result.residual < 1e-12

    def test_lowest_state(self):
        result = assess(basis_state((3,), 2), spin1_basis())
        assert result.total_variance == pytest.approx(1.0, abs=1e-12)
        assert result.mu == pytest.approx(0.0, abs=1e-9)
        assert not result.completely_entangled

    def test_gell_mann_always_zero(self):
        rng = np.random.default_rng(41)
        for _ in range(100):
            result = assess(haar_random_state((3,), rng), gell_mann_basis())
            assert result.mu == 0.0
            assert result.total_variance == pytest.approx(4.0, abs=1e-9)

    def test_spin_measure_identity(self):
        # mu = sqrt(V - s) / s at s = 1.
        rng = np.random.default_rng(42)
        for _ in range(100):
            psi = haar_random_state((3,), rng)
            result = assess(psi, spin1_basis())
            assert result.mu == pytest.approx(
                np.sqrt(max(0.0, result.total_variance - 1.0)), abs=1e-9
            )

    def test_mixed_state_has_no_mu(self):
        result = assess(werner_qutrit(0.5), spin1_basis())
        assert result.mu is None
        assert result.total_variance > 0.0

    def test_unknown_range(self):
        free = ObservableBasis(name="unlisted", dim=3, operators=spin1_basis().operators)
        with pytest.raises(UnknownRange):
            assess(basis_state((3,), 1), free)
        result = assess(basis_state((3,), 1), free, v_range=(1.0, 2.0))
        assert result.mu == pytest.approx(1.0, abs=1e-9)

    def test_computed_range_feeds_assess(self):
        free = ObservableBasis(name="spin1-alias", dim=3, operators=spin1_basis().operators)
        vmin, vmax = compute_variance_range(free, restarts=8, seed=3)
        assert vmin == pytest.approx(1.0, abs=1e-7)
        assert vmax == pytest.approx(2.0, abs=1e-7)
        assert assess(basis_state((3,), 1), free).mu == pytest.approx(1.0, abs=1e-6)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            assess(basis_state((2,), 0), spin1_basis())


class TestMeasureQutrit:
    def test_named_states(self):
        assert measure_qutrit(basis_state((3,), 1)) == pytest.approx(1.0, abs=1e-12)
        for sign in (+1.0, -1.0):
            psi = StateVector((3,), np.array([1.0, 0.0, sign]) / np.sqrt(2.0))
            assert measure_qutrit(psi) == pytest.approx(1.0, abs=1e-12)

    def test_coherent_states_vanish(self):
        rng = np.random.default_rng(43)
        for _ in range(100):
            alpha = complex(rng.normal(), rng.normal())
            assert measure_qutrit(coherent_state(alpha)) < 1e-10

    def test_agrees_with_assess(self):
        rng = np.random.default_rng(44)
        basis = spin1_basis()
        for _ in range(1000):
            psi = haar_random_state((3,), rng)
            assert measure_qutrit(psi) == pytest.approx(assess(psi, basis).mu, abs=1e-9)


class TestCompleteEntanglementCondition:
    def test_spin_qutrit_admits_solutions(self):
        flag, residual = is_completely_entangled(basis_state((3,), 1), spin1_basis())
        assert flag and residual < 1e-12

    def test_single_qubit_never(self):
        rng = np.random.default_rng(45)
        basis = pauli_basis(1)
        for _ in range(100):
            flag, residual = is_completely_entangled(haar_random_state((2,), rng), basis)
            assert not flag
            assert residual > 0.5  # Bloch vector always has unit length

    def test_true_qutrit_never(self):
        rng = np.random.default_rng(46)
        basis = gell_mann_basis()
        for _ in range(100):
            flag, residual = is_completely_entangled(haar_random_state((3,), rng), basis)
            assert not flag
            assert residual > 0.1


class TestVarianceOptimizer:
    def test_spin1_maximum(self):
        psi, value, residual = maximize_total_variance(spin1_basis(), restarts=16, seed=0)
        assert value == pytest.approx(2.0, abs=1e-7)
        assert residual < 1e-7
        assert measure_qutrit(psi) == pytest.approx(1.0, abs=1e-6)

    def test_two_qubit_maximum_is_bell_like(self):
        psi, value, residual = maximize_total_variance(pauli_basis(2), restarts=16, seed=0)
        assert value == pytest.approx(6.0, abs=1e-7)
        assert residual < 1e-7
        conc = concurrence_two_qubit(DensityOperator.from_state(psi))
        assert conc == pytest.approx(1.0, abs=1e-6)

    def test_gell_mann_has_no_ce_state(self):
        _, value, residual = maximize_total_variance(gell_mann_basis(), restarts=16, seed=0)
        assert value == pytest.approx(4.0, abs=1e-7)
        assert residual > 0.3

    def test_minima(self):
        _, vmin = minimize_total_variance(spin1_basis(), restarts=16, seed=0)
        assert vmin == pytest.approx(1.0, abs=1e-7)
        _, vmin4 = minimize_total_variance(pauli_basis(2), restarts=16, seed=0)
        assert vmin4 == pytest.approx(4.0, abs=1e-7)

    def test_deterministic_given_seed(self):
        a = maximize_total_variance(spin1_basis(), restarts=8, seed=11)
        b = maximize_total_variance(spin1_basis(), restarts=8, seed=11)
        assert a[1] == b[1]
        assert np.array_equal(a[0].amplitudes, b[0].amplitudes)

    def test_never_exceeds_casimir_bound(self):
        for basis in (spin1_basis(), pauli_basis(2)):
            _, value, _ = maximize_total_variance(basis, restarts=8, seed=1)
            assert value <= casimir(basis).value + 1e-9


class TestSloccAction:
    def test_zero_coefficients_identity(self):
        rng = np.random.default_rng(47)
        psi = haar_random_state((3,), rng)
        out = slocc_apply(np.zeros(3), psi, spin1_basis())
        assert np.abs(out.amplitudes - psi.amplitudes).max() < 1e-12

    def test_unitary_subgroup_preserves_measure(self):
        rng = np.random.default_rng(48)
        basis = spin1_basis()
        for _ in range(100):
            psi = haar_random_state((3,), rng)
            c = 1j * rng.standard_normal(3)
            out = slocc_apply(c, psi, basis)
            assert measure_qutrit(out) == pytest.approx(measure_qutrit(psi), abs=1e-9)

    def test_preserves_zero_and_nonzero_measure(self):
        rng = np.random.default_rng(49)
        basis = spin1_basis()
        for _ in range(100):
            c = 0.5 * (rng.standard_normal(3) + 1j * rng.standard_normal(3))
            coherent = coherent_state(complex(rng.normal(), rng.normal()))
            assert measure_qutrit(slocc_apply(c, coherent, basis)) < 1e-9
            entangled = haar_random_state((3,), rng)
            if measure_qutrit(entangled) > 1e-6:
                assert measure_qutrit(slocc_apply(c, entangled, basis)) > 1e-12

    def test_collapse(self):
        psi = basis_state((3,), 2)
        with pytest.raises(Collapse):
            slocc_apply(np.array([0.0, 0.0, 40.0]), psi, spin1_basis())

    def test_coefficient_count_checked(self):
        with pytest.raises(DimensionMismatch):
            slocc_apply(np.zeros(2), basis_state((3,), 1), spin1_basis())


class TestThreeTangle:
    def test_class_representatives(self):
        assert three_tangle(ghz_state()) == pytest.approx(1.0, abs=1e-10)
        assert three_tangle(w_state()) == pytest.approx(0.0, abs=1e-10)
        assert three_tangle(bi_state()) == pytest.approx(0.0, abs=1e-10)

    def test_ghz_family_curve(self):
        for x in np.linspace(0.05, 0.95, 19):
            expected = 4.0 * x * x * (1.0 - x * x)
            assert three_tangle(ghz_type_state(float(x))) == pytest.approx(expected, abs=1e-9)

    def test_local_unitary_invariance(self):
        rng = np.random.default_rng(50)
        for _ in range(100):
            psi = haar_random_state((2, 2, 2), rng)
            U = tensor_product(
                tensor_product(random_unitary(rng, 2), random_unitary(rng, 2)),
                random_unitary(rng, 2),
            )
            rotated = StateVector((2, 2, 2), U @ psi.amplitudes)
            assert three_tangle(rotated) == pytest.approx(three_tangle(psi), abs=1e-9)

    def test_range(self):
        rng = np.random.default_rng(51)
        for _ in range(200):
            tau = three_tangle(haar_random_state((2, 2, 2), rng))
            assert 0.0 <= tau <= 1.0


class TestTwoQubitConcurrence:
    def test_bell_projector(self):
        bell = StateVector((2, 2), np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2.0))
        assert concurrence_two_qubit(DensityOperator.from_state(bell)) == pytest.approx(1.0, abs=1e-10)

    def test_reduced_ghz_pairs_unentangled(self):
        rho = DensityOperator.from_state(ghz_state())
        for keep in ((0, 1), (0, 2), (1, 2)):
            assert concurrence_two_qubit(partial_trace(rho, keep)) == pytest.approx(0.0, abs=1e-10)

    def test_reduced_w_pairs(self):
        # Oracle for this rank-2 X-shaped state: C = 2 max(0, |rho_23| - sqrt(rho_11 rho_44)).
        rho = DensityOperator.from_state(w_state())
        for keep in ((0, 1), (0, 2), (1, 2)):
            red = partial_trace(rho, keep).matrix
            oracle = 2.0 * max(0.0, abs(red[1, 2]) - np.sqrt(abs(red[0, 0] * red[3, 3])))
            got = concurrence_two_qubit(partial_trace(rho, keep))
            assert got == pytest.approx(oracle, abs=1e-10)
            assert got == pytest.approx(2.0 / 3.0, abs=1e-10)

    def test_pure_state_formula_oracle(self):
        rng = np.random.default_rng(52)
        for _ in range(300):
            psi = haar_random_state((2, 2), rng)
            got = concurrence_two_qubit(DensityOperator.from_state(psi))
            assert got == pytest.approx(pure_concurrence_oracle(psi), abs=1e-9)

    def test_werner_curve(self):
        for x in np.linspace(0.0, 1.0, 21):
            expected = max(0.0, 1.0 - 1.5 * x)
            got = concurrence_two_qubit(werner_two_qubit(float(x)))
            assert got == pytest.approx(expected, abs=1e-9)


class TestQutritConcurrence:
    def test_ce_projector(self):
        rho = DensityOperator.from_state(basis_state((3,), 1))
        assert concurrence_qutrit(rho) == pytest.approx(1.0, abs=1e-10)

    def test_werner_curve(self):
        for x in np.linspace(0.0, 1.0, 21):
            expected = max(0.0, 1.0 - 4.0 * x / 3.0)
            assert concurrence_qutrit(werner_qutrit(float(x))) == pytest.approx(expected, abs=1e-9)

    def test_maximally_mixed(self):
        rho = DensityOperator((3,), np.eye(3, dtype=complex) / 3.0)
        assert concurrence_qutrit(rho) == pytest.approx(0.0, abs=1e-10)
        lam = qutrit_flip_spectrum(rho)
        assert np.allclose(lam, [1.0 / 3.0] * 3, atol=1e-10)

    def test_agrees_with_pure_measure(self):
        rng = np.random.default_rng(53)
        for _ in range(1000):
            psi = haar_random_state((3,), rng)
            got = concurrence_qutrit(DensityOperator.from_state(psi))
            assert got == pytest.approx(measure_qutrit(psi), abs=1e-9)

    def test_embedding_consistency(self):
        rng = np.random.default_rng(54)
        for _ in range(200):
            psi = haar_random_state((3,), rng)
            emb = embed_symmetric(psi)
            assert measure_qutrit(psi) == pytest.approx(
                concurrence_two_qubit(DensityOperator.from_state(emb)), abs=1e-9
            )

    def test_flip_matrix_is_conjugated_two_qubit_flip(self):
        from entvar.entanglement import FLIP_QUTRIT

        embed_cols = np.column_stack(
            [embed_symmetric(basis_state((3,), i)).amplitudes for i in range(3)]
        )
        conj = embed_cols.conj().T @ tensor_product(PAULI_Y, PAULI_Y) @ embed_cols
        assert np.abs(conj - FLIP_QUTRIT).max() < 1e-12


class TestEntropy:
    def test_pure_state(self):
        assert von_neumann_entropy(DensityOperator.from_state(ghz_state())) == pytest.approx(
            0.0, abs=1e-10
        )

    def test_maximally_mixed_qubit(self):
        rho = DensityOperator((2,), np.eye(2, dtype=complex) / 2.0)
        assert von_neumann_entropy(rho) == pytest.approx(1.0, abs=1e-12)

    def test_reduced_ghz_family(self):
        for x in (0.3, 0.6, 1.0 / np.sqrt(2.0)):
            rho = DensityOperator.from_state(ghz_type_state(x))
            reduced = partial_trace(rho, keep=(1, 2))
            assert von_neumann_entropy(reduced) == pytest.approx(
                binary_entropy_bits(x * x), abs=1e-10
            )


class TestEntropyCounterexample:
    def test_balanced_point(self):
        rep = entropy_counterexample(1.0 / np.sqrt(2.0))
        assert rep.tau == pytest.approx(1.0, abs=1e-10)
        assert rep.pair_concurrence == pytest.approx(0.0, abs=1e-10)
        assert rep.entropy_two_qubit == pytest.approx(1.0, abs=1e-10)
        assert rep.entropy_one_qubit == pytest.approx(1.0, abs=1e-10)

    def test_at_0p6(self):
        rep = entropy_counterexample(0.6)
        assert rep.tau == pytest.approx(0.9216, abs=1e-9)
        assert rep.pair_concurrence == pytest.approx(0.0, abs=1e-10)
        assert rep.entropy_two_qubit == pytest.approx(rep.entropy_one_qubit, abs=1e-10)

    def test_product_limit(self):
        rep = entropy_counterexample(0.01)
        assert rep.tau < 1e-3
        assert rep.entropy_two_qubit < 2e-3

    def test_domain(self):
        from entvar.errors import OutOfRange

        with pytest.raises(OutOfRange):
            entropy_counterexample(0.0)
        with pytest.raises(OutOfRange):
            entropy_counterexample(1.0)
