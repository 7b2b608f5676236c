"""Entanglement quantifiers and the variational machinery behind them.

The central quantity is the total variance of the basic observables: complete
entanglement maximizes it (equivalently, zeroes every basic-observable
expectation), and the normalized square-root excess over its minimum is the
measure mu, which reduces to the concurrence for bipartite pure states.  Also
here: the complexified-group (SLOCC) action, the 3-tangle, Wootters-style
mixed-state concurrences for two qubits and for the spin-qutrit, and the von
Neumann entropy.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log2, sqrt

import numpy as np

from .errors import Collapse, DimensionMismatch, NoConvergence, OutOfRange, UnknownRange
from .linalg import (
    DensityOperator,
    StateVector,
    general_eigenvalues,
    matrix_exp,
    partial_trace,
    tensor_product,
)
from .observables import (
    PAULI_Y,
    ObservableBasis,
    expectation,
    total_variance,
)
from .states import ghz_type_state, haar_random_state

# Spin-flip matrix for the spin-qutrit in (|+1>, |0>, |-1>) order; conjugating
# sigma_y x sigma_y into the symmetric two-qubit sector reproduces it exactly.
FLIP_QUTRIT = np.array([[0, 0, -1], [0, 1, 0], [-1, 0, 0]], dtype=complex)

FLIP_TWO_QUBIT = tensor_product(PAULI_Y, PAULI_Y)

# Exact total-variance extremes (v_min, v_max) for the shipped bases.  The
# su3 and pauli-1 entries are equal because the total variance is constant
# there: no state of those systems is entangled.
_RANGE_CATALOG = {
    "su2-spin1": (1.0, 2.0),
    "pauli-1": (2.0, 2.0),
    "pauli-2": (4.0, 6.0),
    "su3": (4.0, 4.0),
}

_range_cache = dict(_RANGE_CATALOG)


@dataclass(frozen=True)
class EntanglementAssessment:
    """Total variance, its extremes, the measure mu, and the zero-expectation residual.

    mu is None for mixed inputs: the raw total variance of a mixed state mixes
    quantum and classical uncertainty and the measure is defined for pure
    states only.
    """

    total_variance: float
    v_min: float
    v_max: float
    mu: float | None
    completely_entangled: bool
    residual: float


def variance_range(basis: ObservableBasis):
    """(v_min, v_max) for a cataloged or previously computed basis."""
    try:
        return _range_cache[basis.name]
    except KeyError:
        raise UnknownRange(
            f"no total-variance range known for basis {basis.name!r}; "
            "run compute_variance_range() or pass v_range explicitly"
        ) from None


def compute_variance_range(basis: ObservableBasis, restarts: int = 32, seed: int = 0):
    """Find (v_min, v_max) by seeded optimization and cache them under the basis name."""
    if basis.name not in _range_cache:
        _, vmax, _ = maximize_total_variance(basis, restarts=restarts, seed=seed)
        _, vmin = minimize_total_variance(basis, restarts=restarts, seed=seed)
        _range_cache[basis.name] = (vmin, vmax)
    return _range_cache[basis.name]


def assess(state, basis: ObservableBasis, tol: float = 1e-8, v_range=None) -> EntanglementAssessment:
    """Full uncertainty-based entanglement assessment of a state under a basis."""
    if state.dim != basis.dim:
        raise DimensionMismatch(
            f"state dimension {state.dim} does not match basis dimension {basis.dim}"
        )
    exps = [expectation(X, state) for X in basis.operators]
    residual = float(max(abs(e) for e in exps))
    value = total_variance(basis, state)
    vmin, vmax = v_range if v_range is not None else variance_range(basis)
    if isinstance(state, StateVector):
        span = vmax - vmin
        if span < 1e-12:
            mu = 0.0
        else:
            mu = sqrt(min(1.0, max(0.0, (value - vmin) / span)))
    else:
        mu = None
    return EntanglementAssessment(
        total_variance=value,
        v_min=float(vmin),
        v_max=float(vmax),
        mu=mu,
        completely_entangled=bool(residual < tol),
        residual=residual,
    )


def measure_qutrit(psi: StateVector) -> float:
    """Entanglement measure 2|a(+1) a(-1) - a(0)^2 / 2| of a single spin-qutrit."""
    if psi.dims != (3,):
        raise DimensionMismatch(f"expected a single qutrit, got dims {psi.dims}")
    a = psi.amplitudes
    return float(2.0 * abs(a[0] * a[2] - 0.5 * a[1] ** 2))


def is_completely_entangled(psi, basis: ObservableBasis, tol: float = 1e-8):
    """Whether every basic-observable expectation vanishes; returns (flag, residual)."""
    if psi.dim != basis.dim:
        raise DimensionMismatch(
            f"state dimension {psi.dim} does not match basis dimension {basis.dim}"
        )
    residual = float(max(abs(expectation(X, psi)) for X in basis.operators))
    return bool(residual < tol), residual


def _objective_and_grad(ops_arr, Q, amp, sign):
    """Total variance (times sign) and its conjugate-Wirtinger gradient."""
    Qamp = Q @ amp
    val = float(np.real(np.vdot(amp, Qamp)))
    Xamp = ops_arr @ amp
    e = np.real(Xamp @ amp.conj())
    val -= float(e @ e)
    grad = Qamp - 2.0 * (e @ Xamp)
    return sign * val, sign * grad


def _spectral_norm(H):
    return float(np.abs(np.linalg.eigvalsh(H)).max())


def _ascend_on_sphere(ops_arr, Q, amp0, sign, eta_safe, gtol=1e-10, max_iter=10_000):
    """Projected gradient ascent with renormalization retraction on the unit sphere.

    Steps are gradient-only: a Barzilai-Borwein secant step clamped between a
    curvature-bound fallback and 10.  No objective comparisons are made, which
    matters near the optimum where objective differences fall below
    floating-point resolution while the analytic gradient stays accurate, so
    the gradient norm contracts well past the 1e-10 convergence threshold.
    A checkpoint every 1000 iterations declares a stalled restart.
    """
    amp = amp0
    f, g = _objective_and_grad(ops_arr, Q, amp, sign)
    prev_amp = prev_rg = None
    checkpoint = np.inf
    for it in range(max_iter):
        rg = g - np.vdot(amp, g) * amp
        gn = float(np.linalg.norm(rg))
        if gn < gtol:
            return amp, sign * f, gn, True
        if it % 1000 == 999:
            if gn > 0.5 * checkpoint:
                return amp, sign * f, gn, False
            checkpoint = gn
        eta = eta_safe
        if prev_amp is not None:
            dx = amp - prev_amp
            dg = rg - prev_rg
            num = -float(np.real(np.vdot(dx, dg)))
            den = float(np.real(np.vdot(dg, dg)))
            if den > 0.0 and num > 0.0:
                eta = min(max(num / den, eta_safe), 10.0)
        prev_amp, prev_rg = amp, rg
        amp = amp + eta * rg
        amp /= np.linalg.norm(amp)
        f, g = _objective_and_grad(ops_arr, Q, amp, sign)
    rg = g - np.vdot(amp, g) * amp
    gn = float(np.linalg.norm(rg))
    return amp, sign * f, gn, gn < gtol


def _optimize_total_variance(basis, sign, restarts, seed):
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    ops_arr = np.stack(basis.operators)
    Q = sum(X @ X for X in basis.operators)
    eta_safe = 0.5 / (
        2.0 * (_spectral_norm(Q) + 2.0 * sum(_spectral_norm(X) ** 2 for X in basis.operators))
    )
    rng = np.random.default_rng(seed)
    best = None
    converged_any = False
    for _ in range(restarts):
        psi0 = haar_random_state(basis.dims, rng)
        amp, value, _, converged = _ascend_on_sphere(ops_arr, Q, psi0.amplitudes, sign, eta_safe)
        if not converged:
            continue
        converged_any = True
        if best is None or sign * value > sign * best[1]:
            best = (amp, value)
    if not converged_any:
        raise NoConvergence(
            f"no restart reached gradient tolerance for basis {basis.name!r}"
        )
    psi = StateVector(basis.dims, best[0])
    return psi, float(best[1])


def maximize_total_variance(basis: ObservableBasis, restarts: int = 32, seed: int = 0):
    """Seeded multi-start search for the total-variance maximum.

    Returns (state, value, residual) with residual the largest basic-observable
    expectation magnitude at the optimum; it vanishes exactly when a completely
    entangled state exists.
    """
    psi, value = _optimize_total_variance(basis, +1.0, restarts, seed)
    residual = float(max(abs(expectation(X, psi)) for X in basis.operators))
    return psi, value, residual


def minimize_total_variance(basis: ObservableBasis, restarts: int = 32, seed: int = 0):
    """Seeded multi-start search for the total-variance minimum; returns (state, value)."""
    return _optimize_total_variance(basis, -1.0, restarts, seed)


def slocc_apply(coefficients, psi: StateVector, basis: ObservableBasis) -> StateVector:
    """Apply exp(sum c_i X_i) with arbitrary complex c_i, then renormalize.

    Purely imaginary coefficients give unitary symmetry-group elements; general
    complex ones realize the stochastic-local-operations (complexified group)
    action that maps entangled states onto the whole entangled orbit.
    """
    c = np.asarray(coefficients, dtype=complex).reshape(-1)
    if c.size != len(basis.operators):
        raise DimensionMismatch(
            f"{c.size} coefficients for a basis of {len(basis.operators)} operators"
        )
    if psi.dim != basis.dim:
        raise DimensionMismatch(
            f"state dimension {psi.dim} does not match basis dimension {basis.dim}"
        )
    G = sum(ci * X for ci, X in zip(c, basis.operators))
    out = matrix_exp(G) @ psi.amplitudes
    norm = np.linalg.norm(out)
    if norm < 1e-12:
        raise Collapse("group element annihilated the state within numerical precision")
    return StateVector(psi.dims, out / norm)


def three_tangle(psi: StateVector) -> float:
    """Three-qubit tangle: the residual-entanglement polynomial on amplitudes.

    Nonzero exactly on the GHZ class; W-class and biseparable states give 0.
    """
    if psi.dims != (2, 2, 2):
        raise DimensionMismatch(f"expected three qubits, got dims {psi.dims}")
    a = psi.amplitudes.reshape(2, 2, 2)
    d1 = (
        a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2
        + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
        + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2
        + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2
    )
    d2 = (
        a[0, 0, 0] * a[0, 0, 1] * a[1, 1, 0] * a[1, 1, 1]
        + a[0, 0, 0] * a[0, 1, 0] * a[1, 0, 1] * a[1, 1, 1]
        + a[0, 0, 0] * a[1, 0, 0] * a[0, 1, 1] * a[1, 1, 1]
        + a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 1] * a[1, 1, 0]
        + a[0, 0, 1] * a[1, 0, 0] * a[0, 1, 1] * a[1, 1, 0]
        + a[0, 1, 0] * a[1, 0, 0] * a[0, 1, 1] * a[1, 0, 1]
    )
    d3 = (
        a[0, 0, 0] * a[0, 1, 1] * a[1, 0, 1] * a[1, 1, 0]
        + a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0] * a[1, 1, 1]
    )
    tau = 4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3)
    return float(min(1.0, tau))


def _flip_spectrum(mat, flip):
    """Decreasing square roots of the eigenvalues of rho F rho* F.

    The product is similar to a PSD matrix, so eigenvalues are real and
    nonnegative up to numerical noise: imaginary parts are dropped and
    magnitudes below 1e-12 (noise on rank-deficient products) are clamped to 0
    so their square roots do not pollute the concurrence.
    """
    prod = mat @ flip @ mat.conj() @ flip
    ev = np.real(general_eigenvalues(prod))
    ev[np.abs(ev) < 1e-12] = 0.0
    ev = np.clip(ev, 0.0, None)
    return np.sort(np.sqrt(ev))[::-1]


def two_qubit_flip_spectrum(rho: DensityOperator) -> np.ndarray:
    """Decreasing Wootters lambdas of a two-qubit density operator."""
    if rho.dims != (2, 2):
        raise DimensionMismatch(f"expected two qubits, got dims {rho.dims}")
    return _flip_spectrum(rho.matrix, FLIP_TWO_QUBIT)


def qutrit_flip_spectrum(rho: DensityOperator) -> np.ndarray:
    """Decreasing flip lambdas of a spin-qutrit density operator."""
    if rho.dims != (3,):
        raise DimensionMismatch(f"expected a single qutrit, got dims {rho.dims}")
    return _flip_spectrum(rho.matrix, FLIP_QUTRIT)


def concurrence_two_qubit(rho: DensityOperator) -> float:
    """Wootters concurrence max(0, l1 - l2 - l3 - l4) for a two-qubit mixed state."""
    lam = two_qubit_flip_spectrum(rho)
    return float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))


def concurrence_qutrit(rho: DensityOperator) -> float:
    """Spin-qutrit concurrence max(0, l1 - l2 - l3); equals the pure-state measure on projectors."""
    lam = qutrit_flip_spectrum(rho)
    return float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2])))


def von_neumann_entropy(rho: DensityOperator) -> float:
    """Entropy -sum p log2 p over the (noise-clamped) eigenvalues, in bits."""
    p = np.linalg.eigvalsh(rho.matrix)
    p = np.clip(p, 0.0, None)
    p = p[p > 0.0]
    return float(-(p * np.log2(p)).sum()) if p.size else 0.0


@dataclass(frozen=True)
class EntropyCounterexample:
    """Quantities showing reduced-state entropy failing as an entanglement measure."""

    tau: float
    pair_concurrence: float
    entropy_two_qubit: float
    entropy_one_qubit: float


def entropy_counterexample(x: float) -> EntropyCounterexample:
    """For x|000> + y|111>: nonzero tangle, zero pair concurrence, equal nonzero entropies.

    The reduced pair carries no two-qubit entanglement although its entropy
    equals the (nonzero) binary entropy of x^2, so reduced entropy alone cannot
    certify bipartite entanglement here.
    """
    if not 0.0 < x < 1.0:
        raise OutOfRange(f"x must be in (0, 1), got {x}")
    psi = ghz_type_state(x)
    rho = DensityOperator.from_state(psi)
    pair = partial_trace(rho, keep=(1, 2))
    single = partial_trace(rho, keep=(2,))
    return EntropyCounterexample(
        tau=three_tangle(psi),
        pair_concurrence=concurrence_two_qubit(pair),
        entropy_two_qubit=von_neumann_entropy(pair),
        entropy_one_qubit=von_neumann_entropy(single),
    )


def binary_entropy_bits(p: float) -> float:
    """-p log2 p - (1-p) log2 (1-p), the entropy of a biased bit."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"p must be in [0, 1], got {p}")
    if p in (0.0, 1.0):
        return 0.0
    return -p * log2(p) - (1.0 - p) * log2(1.0 - p)
