"""Factories and classifiers for the named states used throughout the package.

Spin-coherent and spin-squeezed qutrits, the symmetric two-qubit embedding,
GHZ/W/biseparable three-qubit states, Werner mixtures, and the static
atom-plus-two-mode example states.  Qutrit amplitudes are always ordered
(|+1>, |0>, |-1>); qubits use |0> = spin-up.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import cos, sin, sqrt

import numpy as np

from .errors import DimensionMismatch, FullyAntisymmetric, OutOfRange, ZeroCoupling
from .linalg import DensityOperator, StateVector, matrix_exp
from .observables import SPIN1_X, SPIN1_Y, SPIN1_Z, expectation

SPIN1_PLUS = SPIN1_X + 1j * SPIN1_Y
SPIN1_MINUS = SPIN1_X - 1j * SPIN1_Y

# Columns: images of (|+1>, |0>, |-1>) in the two-qubit symmetric triplet.
_EMBED = np.array(
    [
        [1.0, 0.0, 0.0],
        [0.0, 1.0 / sqrt(2.0), 0.0],
        [0.0, 1.0 / sqrt(2.0), 0.0],
        [0.0, 0.0, 1.0],
    ],
    dtype=complex,
)

_SINGLET = np.array([0, 1, -1, 0], dtype=complex) / sqrt(2.0)


def basis_state(dims, index: int) -> StateVector:
    """Computational basis ket |index> for the given subsystem dimensions."""
    dims = tuple(int(d) for d in dims)
    amp = np.zeros(int(np.prod(dims)), dtype=complex)
    amp[index] = 1.0
    return StateVector(dims, amp)


def haar_random_state(dims, rng) -> StateVector:
    """Normalized state with isotropically random amplitudes."""
    dims = tuple(int(d) for d in dims)
    n = int(np.prod(dims))
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return StateVector(dims, z / np.linalg.norm(z))


def coherent_state(alpha: complex) -> StateVector:
    """Spin-1 coherent state: the displacement exp(alpha*S+ - conj(alpha)*S-) of |-1>.

    Closed form with t = 2|alpha| and phi = arg(alpha):
    (e^{2i phi}(1-cos t)/2,  e^{i phi} sin(t)/sqrt(2),  (1+cos t)/2).
    """
    alpha = complex(alpha)
    if not cmath.isfinite(alpha):
        raise ValueError("alpha must be finite")
    t = 2.0 * abs(alpha)
    phi = cmath.phase(alpha)
    amp = np.array(
        [
            cmath.exp(2j * phi) * (1.0 - cos(t)) / 2.0,
            cmath.exp(1j * phi) * sin(t) / sqrt(2.0),
            (1.0 + cos(t)) / 2.0,
        ],
        dtype=complex,
    )
    return StateVector((3,), amp)


def displacement_applied(alpha: complex) -> StateVector:
    """Coherent state built the long way, by exponentiating the displacement generator."""
    alpha = complex(alpha)
    G = alpha * SPIN1_PLUS - alpha.conjugate() * SPIN1_MINUS
    amp = matrix_exp(G) @ np.array([0, 0, 1], dtype=complex)
    return StateVector((3,), amp / np.linalg.norm(amp))


def squeezed_state(xi: complex) -> StateVector:
    """Spin-1 squeezed state exp[(conj(xi) S-^2 - xi S+^2)/2] |-1>.

    Closed form: -e^{i arg(xi)} sin|xi| |+1> + cos|xi| |-1>.
    """
    xi = complex(xi)
    if not cmath.isfinite(xi):
        raise ValueError("xi must be finite")
    r = abs(xi)
    phi = cmath.phase(xi)
    amp = np.array([-cmath.exp(1j * phi) * sin(r), 0.0, cos(r)], dtype=complex)
    return StateVector((3,), amp)


def squeezing_applied(xi: complex) -> StateVector:
    """Squeezed state built by exponentiating the two-photon-like generator."""
    xi = complex(xi)
    G = (xi.conjugate() * (SPIN1_MINUS @ SPIN1_MINUS) - xi * (SPIN1_PLUS @ SPIN1_PLUS)) / 2.0
    amp = matrix_exp(G) @ np.array([0, 0, 1], dtype=complex)
    return StateVector((3,), amp / np.linalg.norm(amp))


@dataclass(frozen=True)
class SqueezingReport:
    """Kitagawa-Ueda squeezing data for a spin-1 state.

    min_transverse_variance is the smallest spin variance over unit directions
    orthogonal to the mean spin; when the mean spin vanishes the whole unit
    sphere is searched, since the orthogonality constraint is then vacuous.
    transverse_sum is V_x + V_y in the frame with z along the mean spin (lab
    frame when the mean spin vanishes).
    """

    mean_spin: np.ndarray
    min_transverse_variance: float
    is_squeezed: bool
    transverse_sum: float


def _spin_covariance(psi: StateVector):
    ops = (SPIN1_X, SPIN1_Y, SPIN1_Z)
    mean = np.array([expectation(S, psi) for S in ops])
    C = np.empty((3, 3))
    for a in range(3):
        for b in range(a, 3):
            sym = 0.5 * (ops[a] @ ops[b] + ops[b] @ ops[a])
            C[a, b] = C[b, a] = expectation(sym, psi) - mean[a] * mean[b]
    return mean, C


def _frame_orthogonal_to(n):
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(n)))] = 1.0
    u = np.cross(n, axis)
    u /= np.linalg.norm(u)
    return u, np.cross(n, u)


def squeezing_report(psi: StateVector) -> SqueezingReport:
    """Classify a spin-1 state as squeezed (some transverse variance below s/2 = 1/2)."""
    if psi.dims != (3,):
        raise DimensionMismatch(f"squeezing is defined for a single spin-1, got dims {psi.dims}")
    mean, C = _spin_covariance(psi)
    norm = np.linalg.norm(mean)
    if norm < 1e-9:
        min_var = float(np.linalg.eigvalsh(C).min())
        transverse_sum = float(C[0, 0] + C[1, 1])
    else:
        n = mean / norm
        u, v = _frame_orthogonal_to(n)
        block = np.array([[u @ C @ u, u @ C @ v], [v @ C @ u, v @ C @ v]])
        min_var = float(np.linalg.eigvalsh(block).min())
        transverse_sum = float(np.trace(block))
    min_var = max(0.0, min_var)
    return SqueezingReport(
        mean_spin=mean,
        min_transverse_variance=min_var,
        is_squeezed=bool(min_var < 0.5 - 1e-12),
        transverse_sum=transverse_sum,
    )


def embed_symmetric(psi3: StateVector) -> StateVector:
    """Map a spin-1 state into the symmetric (triplet) sector of two qubits."""
    if psi3.dims != (3,):
        raise DimensionMismatch(f"expected a single qutrit, got dims {psi3.dims}")
    return StateVector((2, 2), _EMBED @ psi3.amplitudes)


def project_symmetric(psi4: StateVector):
    """Split a two-qubit state into its renormalized triplet part and singlet weight.

    Returns (psi3, antisymmetric_weight); raises FullyAntisymmetric when the
    symmetric component vanishes and psi3 is undefined.
    """
    if psi4.dims != (2, 2):
        raise DimensionMismatch(f"expected two qubits, got dims {psi4.dims}")
    sym = _EMBED.conj().T @ psi4.amplitudes
    weight = float(abs(np.vdot(_SINGLET, psi4.amplitudes)) ** 2)
    norm = np.linalg.norm(sym)
    if norm < 1e-12:
        raise FullyAntisymmetric("state has no symmetric component")
    return StateVector((3,), sym / norm), weight


def ghz_state() -> StateVector:
    return StateVector((2, 2, 2), np.array([1, 0, 0, 0, 0, 0, 0, 1], dtype=complex) / sqrt(2.0))


def w_state() -> StateVector:
    amp = np.zeros(8, dtype=complex)
    amp[[3, 5, 6]] = 1.0 / sqrt(3.0)  # |011>, |101>, |110>
    return StateVector((2, 2, 2), amp)


def bi_state() -> StateVector:
    amp = np.zeros(8, dtype=complex)
    amp[[3, 5]] = 1.0 / sqrt(2.0)  # |011>, |101>
    return StateVector((2, 2, 2), amp)


def ghz_type_state(x: float) -> StateVector:
    """x|000> + sqrt(1-x^2)|111>, the one-parameter GHZ-class family."""
    if not 0.0 <= x <= 1.0:
        raise OutOfRange(f"x must be in [0, 1], got {x}")
    amp = np.zeros(8, dtype=complex)
    amp[0] = x
    amp[7] = sqrt(max(0.0, 1.0 - x * x))
    return StateVector((2, 2, 2), amp)


def werner_qutrit(x: float) -> DensityOperator:
    """Mixture (x/3) I + (1-x)|0><0| of the fully chaotic and the |0> spin-qutrit state."""
    if not 0.0 <= x <= 1.0:
        raise OutOfRange(f"x must be in [0, 1], got {x}")
    mat = (x / 3.0) * np.eye(3, dtype=complex)
    mat[1, 1] += 1.0 - x
    return DensityOperator((3,), mat)


def werner_two_qubit(x: float) -> DensityOperator:
    """Mixture (x/4) I + (1-x)|Phi><Phi| with Phi the (|00>+|11>)/sqrt(2) Bell state."""
    if not 0.0 <= x <= 1.0:
        raise OutOfRange(f"x must be in [0, 1], got {x}")
    phi = np.array([1, 0, 0, 1], dtype=complex) / sqrt(2.0)
    mat = (x / 4.0) * np.eye(4, dtype=complex) + (1.0 - x) * np.outer(phi, phi.conj())
    return DensityOperator((2, 2), mat)


def atom_field_state(g1: float, g2: float) -> StateVector:
    """Normalized (g1 |+>|1_1> + g2 |->|1_2>) / sqrt(g1^2 + g2^2).

    First qubit: atomic levels (|+>, |->); second qubit: which of the two
    cavity modes holds the photon.
    """
    norm2 = g1 * g1 + g2 * g2
    if norm2 == 0.0:
        raise ZeroCoupling("g1 = g2 = 0 leaves no state")
    amp = np.array([g1, 0.0, 0.0, g2], dtype=complex) / sqrt(norm2)
    return StateVector((2, 2), amp)


def lambda_hamiltonian(g1: float, g2: float, photon_cutoff: int = 1) -> np.ndarray:
    """Interaction Hamiltonian of a three-level atom coupled to two cavity modes.

    Truncated to the one-excitation subspace spanned by (|0, vac>, |+, 1_1>,
    |-, 1_2>), the only states reachable from |0, vac>.  Applying it to
    |0, vac> gives a vector parallel to the unnormalized atom-field state.
    """
    if photon_cutoff != 1:
        raise ValueError("only the one-excitation truncation is supported")
    H = np.zeros((3, 3), dtype=complex)
    H[0, 1] = H[1, 0] = g1
    H[0, 2] = H[2, 0] = g2
    return H
