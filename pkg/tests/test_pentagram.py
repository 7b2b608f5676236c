import numpy as np
import pytest

from entvar.errors import DimensionMismatch, NotOrthogonal
from entvar.linalg import StateVector
from entvar.observables import SPIN1_X, SPIN1_Y, SPIN1_Z
from entvar.pentagram import (
    Pentagram,
    _angles_from_vertices,
    _vertices_from_angles,
    classical_cycle_minimum,
    clean_pentagram,
    from_vector_rep,
    optimize_pentagram,
    pentagram_value,
    r_operator,
    regular_pentagram,
    spin_projection_vector_rep,
    to_vector_rep,
)
from entvar.states import basis_state, coherent_state, haar_random_state
from entvar.entanglement import measure_qutrit

SQRT5 = np.sqrt(5.0)
Z_AXIS = np.array([0.0, 0.0, 1.0])


def random_rotation(rng):
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diagonal(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_pentagram(rng):
    angles = np.concatenate(
        ([np.arccos(rng.uniform(-1, 1))], rng.uniform(0, 2 * np.pi, size=5))
    )
    return Pentagram(_vertices_from_angles(angles, project_closure=True))


class TestVectorRepresentation:
    def test_dictionary(self):
        assert np.allclose(to_vector_rep(basis_state((3,), 1)), [0.0, 0.0, 1.0])
        plus = to_vector_rep(basis_state((3,), 0))
        assert np.abs(plus - np.array([-1.0, -1j, 0.0]) / np.sqrt(2.0)).max() < 1e-12

    def test_round_trip(self):
        rng = np.random.default_rng(61)
        for _ in range(100):
            psi = haar_random_state((3,), rng)
            back = from_vector_rep(to_vector_rep(psi))
            assert np.abs(back.amplitudes - psi.amplitudes).max() < 1e-12

    def test_norm_preserved(self):
        rng = np.random.default_rng(62)
        for _ in range(50):
            v = to_vector_rep(haar_random_state((3,), rng))
            assert abs(np.linalg.norm(v) - 1.0) < 1e-12

    def test_spin _projection_eigenstates(self):
        # along z: the real vector z has eigenvalue 0, (x +- iy)/sqrt(2) have -+1... sign fixed below
        zero = spin_projection_vector_rep(Z_AXIS, np.array([0, 0, 1.0], dtype=complex))
        assert np.abs(zero).max() < 1e-15

    def test_intertwining_with_matrix_action(self):
        rng = np.random.default_rng(63)
        axes = (np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([0, 0, 1.0]))
        for _ in range(100):
            psi = haar_random_state((3,), rng)
            v = to_vector_rep(psi)
            for S, axis in zip((SPIN1_X, SPIN1_Y, SPIN1_Z), axes):
                image = S @ psi.amplitudes
                lhs = np.array(
                    [
                        (image[2] - image[0]) / np.sqrt(2.0),
                        -1j * (image[0] + image[2]) / np.sqrt(2.0),
                        image[1],
                    ]
                )
                rhs = spin_projection_vector_rep(axis, v)
                assert np.abs(lhs - rhs).max() < 1e-10

    def test_plus_state_is_sz_eigenvector(self):
        v = to_vector_rep(basis_state((3,), 0))
        assert np.abs(spin_projection_vector_rep(Z_AXIS, v) - v).max() < 1e-12
        w = to_vector_rep(basis_state((3,), 2))
        assert np.abs(spin_projection_vector_rep(Z_AXIS, w) + w).max() < 1e-12


class TestROperator:
    def test_projector_and_spin_forms_agree(self):
        rng = np.random.default_rng(64)
        for _ in range(50):
            ell = rng.standard_normal(3)
            ell /= np.linalg.norm(ell)
            R = r_operator(ell)
            S = np.column_stack(
                [spin_projection_vector_rep(ell, e) for e in np.eye(3, dtype=complex)]
            )
            assert np.abs(R - (2.0 * S @ S - np.eye(3))).max() < 1e-12

    def test_spectrum_and_involution(self):
        ell = np.array([0.6, 0.0, 0.8])
        R = r_operator(ell)
        assert np.allclose(np.sort(np.linalg.eigvalsh(R)), [-1.0, 1.0, 1.0], atol=1e-12)
        assert np.abs(R @ R - np.eye(3)).max() < 1e-12
        assert np.trace(R).real == pytest.approx(1.0, abs=1e-12)

    def test_z_axis_matrix(self):
        assert np.abs(r_operator(Z_AXIS) - np.diag([1.0, 1.0, -1.0])).max() < 1e-12

    def test_commute_iff_orthogonal(self):
        a = np.array([1.0, 0.0, 0.0])
        b = np.array([0.0, 1.0, 0.0])
        Ra, Rb = r_operator(a), r_operator(b)
        assert np.abs(Ra @ Rb - Rb @ Ra).max() < 1e-12
        c = np.array([0.6, 0.8, 0.0])
        Rc = r_operator(c)
        assert np.abs(Ra @ Rc - Rc @ Ra).max() > 1e-3


class TestRegularPentagram:
    def test_cyclic_orthogonality(self):
        V = regular_pentagram(Z_AXIS).vertices
        for i in range(5):
            assert abs(V[i] @ V[(i + 1) % 5]) < 1e-10
            assert abs(np.linalg.norm(V[i]) - 1.0) < 1e-12

    def test_axis_value_is_sqrt5(self):
        report = pentagram_value(regular_pentagram(Z_AXIS), Z_AXIS.astype(complex))
        c = np.cos(np.pi / 5.0)
        assert report.geometric_value == pytest.approx(5.0 * c / (1.0 + c), abs=1e-12)
        assert report.geometric_value == pytest.approx(SQRT5, abs=1e-12)
        assert report.violated

    def test_equal_latitudes(self):
        V = regular_pentagram(Z_AXIS).vertices
        dots = V @ Z_AXIS
        assert np.abs(dots - dots[0]).max() < 1e-12

    def test_arbitrary_axis(self):
        axis = np.array([1.0, -2.0, 0.5])
        axis /= np.linalg.norm(axis)
        report = pentagram_value(regular_pentagram(axis), axis.astype(complex))
        assert report.geometric_value == pytest.approx(SQRT5, abs=1e-12)


class TestPentagramValue:
    def test_bell_lhs_relation(self):
        # R_i = 1 - 2 P_i with orthogonal neighbors gives
        # sum <R_i R_{i+1}> + 3 = 8 - 4 * sum |<l_i, psi>|^2.
        rng = np.random.default_rng(65)
        for _ in range(20):
            pent = random_pentagram(rng)
            psi = to_vector_rep(haar_random_state((3,), rng))
            report = pentagram_value(pent, psi)
            assert report.bell_lhs == pytest.approx(
                8.0 - 4.0 * report.geometric_value, abs=1e-9
            )
            assert report.violated == (report.geometric_value > 2.0 + 1e-9)

    def test_accepts_state_vector_inputs(self):
        pent = regular_pentagram(Z_AXIS)
        report = pentagram_value(pent, basis_state((3,), 1))
        assert report.geometric_value == pytest.approx(SQRT5, abs=1e-12)

    def test_global_phase_invariance(self):
        pent = regular_pentagram(Z_AXIS)
        a = pentagram_value(pent, Z_AXIS.astype(complex))
        b = pentagram_value(pent, 1j * Z_AXIS.astype(complex))
        assert a.geometric_value == pytest.approx(b.geometric_value, abs=1e-12)

    def test_global_rotation_covariance(self):
        rng = np.random.default_rng(66)
        for _ in range(20):
            pent = random_pentagram(rng)
            psi = to_vector_rep(haar_random_state((3,), rng))
            R = random_rotation(rng)
            rotated = Pentagram(pent.vertices @ R.T)
            a = pentagram_value(pent, psi)
            b = pentagram_value(rotated, R @ psi)
            assert a.geometric_value == pytest.approx(b.geometric_value, abs=1e-10)

    def test_coherent_states_never_violate(self):
        rng = np.random.default_rng(67)
        for _ in range(50):
            pent = random_pentagram(rng)
            alpha = complex(rng.normal(), rng.normal())
            psi = to_vector_rep(coherent_state(alpha))
            assert pentagram_value(pent, psi).geometric_value <= 2.0 + 1e-9

    def test_rejects_broken_pentagram(self):
        with pytest.raises(NotOrthogonal):
            Pentagram(np.array([Z_AXIS, Z_AXIS, Z_AXIS, Z_AXIS, Z_AXIS]))

    def test_rejects_bad_state_shape(self):
        with pytest.raises(DimensionMismatch):
            pentagram_value(regular_pentagram(Z_AXIS), np.array([1.0, 0.0]))


class TestClassicalBound:
    def test_minimum_saturates_at_minus_three(self):
        assert classical_cycle_minimum() == -3

    def test_bound_holds_for_all_assignments(self):
        assert classical_cycle_minimum() + 3 >= 0


class TestAngleParametrization:
    def test_round_trip(self):
        rng = np.random.default_rng(68)
        for _ in range(50):
            pent = random_pentagram(rng)
            angles = _angles_from_vertices(pent.vertices)
            rebuilt = _vertices_from_angles(angles, project_closure=True)
            assert np.abs(rebuilt - pent.vertices).max() < 1e-9

    def test_chain_is_always_orthogonal(self):
        rng = np.random.default_rng(69)
        for _ in range(100):
            angles = np.concatenate(
                ([np.arccos(rng.uniform(-1, 1))], rng.uniform(0, 2 * np.pi, size=5))
            )
            V = _vertices_from_angles(angles, project_closure=True)
            for i in range(5):
                assert abs(V[i] @ V[(i + 1) % 5]) < 1e-12


class TestOptimizer:
    def test_real_state_reaches_sqrt5(self):
        _, report = optimize_pentagram(to_vector_rep(basis_state((3,), 1)), restarts=4, seed=0)
        assert report.geometric_value >= SQRT5 - 1e-6

    def test_coherent_states_capped_at_two(self):
        rng = np.random.default_rng(70)
        for i in range(5):
            alpha = complex(rng.normal(), rng.normal())
            _, report = optimize_pentagram(
                to_vector_rep(coherent_state(alpha)), restarts=4, seed=i
            )
            assert report.geometric_value <= 2.0 + 1e-6

    def test_entangled_states_violate(self):
        rng = np.random.default_rng(71)
        found = 0
        while found < 5:
            psi = haar_random_state((3,), rng)
            if measure_qutrit(psi) > 0.3:
                _, report = optimize_pentagram(to_vector_rep(psi), restarts=4, seed=found)
                assert report.geometric_value > 2.0 + 1e-6
                assert report.violated
                found += 1

    def test_deterministic(self):
        v = to_vector_rep(basis_state((3,), 1))
        p1, r1 = optimize_pentagram(v, restarts=4, seed=9)
        p2, r2 = optimize_pentagram(v, restarts=4, seed=9)
        assert np.array_equal(p1.vertices, p2.vertices)
        assert r1.geometric_value == r2.geometric_value

    def test_returns_valid_pentagram(self):
        rng = np.random.default_rng(72)
        psi = to_vector_rep(haar_random_state((3,), rng))
        pent, _ = optimize_pentagram(psi, restarts=4, seed=0)
        V = pent.vertices
        for i in range(5):
            assert abs(V[i] @ V[(i + 1) % 5]) < 1e-10


class TestCleanPentagram:
    def test_accepts_exact_input(self):
        V = regular_pentagram(Z_AXIS).vertices
        cleaned = clean_pentagram(V.copy())
        assert np.abs(cleaned.vertices - V).max() < 1e-12

    def test_repairs_small_defects_with_warning(self):
        rng = np.random.default_rng(73)
        V = regular_pentagram(Z_AXIS).vertices + 2e-7 * rng.standard_normal((5, 3))
        with pytest.warns(UserWarning):
            cleaned = clean_pentagram(V)
        W = cleaned.vertices
        for i in range(5):
            assert abs(W[i] @ W[(i + 1) % 5]) < 1e-9

    def test_rejects_large_defects(self):
        V = regular_pentagram(Z_AXIS).vertices.copy()
        V[1] = (V[1] + 0.01 * V[0]) / np.linalg.norm(V[1] + 0.01 * V[0])
        with pytest.raises(NotOrthogonal):
            clean_pentagram(V)
