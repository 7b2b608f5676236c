"""Basic-observable bases (dynamic symmetries) and the uncertainty functionals on them.

A system is specified by declaring which Hermitian operators are measurable:
an orthogonal basis of a Lie algebra.  Shipped catalogs: the eight Gell-Mann
matrices ("su3"), the three spin-1 operators ("su2-spin1"), and local Pauli
sets for 1-4 qubits ("pauli-n").  All shipped bases satisfy
Tr(X_i X_j) = 2 delta_ij; no rescaling to the T_a = lambda_a / 2 convention,
so every closed-form value downstream is reproduced without conversion factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod, sqrt

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPositive, OutOfRange
from .linalg import DensityOperator, StateVector, is_hermitian, matrix_sqrt_psd, tensor_product

_SQ2 = 1.0 / sqrt(2.0)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

SPIN1_X = _SQ2 * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex)
SPIN1_Y = _SQ2 * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex)
SPIN1_Z = np.array([[1, 0, 0], [0, 0, 0], [0, 0, -1]], dtype=complex)

GELL_MANN = (
    np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex),
    np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=complex),
    np.array([[1, 0, 0], [0, -1, 0], [0, 0, 0]], dtype=complex),
    np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=complex),
    np.array([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]], dtype=complex),
    np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex),
    np.array([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]], dtype=complex),
    np.array([[1, 0, 0], [0, 1, 0], [0, 0, -2]], dtype=complex) / sqrt(3.0),
)


@dataclass(frozen=True, eq=False)
class ObservableBasis:
    """Named list of Hermitian operators forming an orthogonal Lie-algebra basis.

    dims gives the subsystem decomposition of the Hilbert space; parts, when
    present, records the subsystem each operator acts on (for local bases).
    """

    name: str
    dim: int
    operators: tuple
    dims: tuple = None
    parts: tuple = None
    labels: tuple = None

    def __post_init__(self):
        ops = tuple(np.asarray(X, dtype=complex) for X in self.operators)
        if not ops:
            raise ValueError("a basis needs at least one operator")
        for X in ops:
            if X.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"operator shape {X.shape} != ({self.dim}, {self.dim})")
            if not is_hermitian(X, 1e-10):
                raise NotHermitian(f"basis '{self.name}' contains a non-Hermitian operator")
        for i in range(len(ops)):
            for j in range(i + 1, len(ops)):
                if abs(np.trace(ops[i] @ ops[j])) > 1e-10:
                    raise ValueError(
                        f"basis '{self.name}' operators {i},{j} not trace-orthogonal"
                    )
        dims = tuple(int(d) for d in self.dims) if self.dims is not None else (self.dim,)
        if prod(dims) != self.dim:
            raise DimensionMismatch(f"subsystem dims {dims} do not multiply to {self.dim}")
        labels = self.labels if self.labels is not None else tuple(
            f"X_{i}" for i in range(len(ops))
        )
        if len(labels) != len(ops):
            raise ValueError("label count does not match operator count")
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "labels", tuple(labels))
        if self.parts is not None:
            object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))


@dataclass(frozen=True)
class CasimirValue:
    """Value of (Tr sum X_i^2)/dim and whether sum X_i^2 is scalar."""

    value: float
    is_scalar: bool


def gell_mann_basis() -> ObservableBasis:
    """The eight Gell-Mann matrices: basic observables of a true qutrit (SU(3))."""
    return ObservableBasis(
        name="su3",
        dim=3,
        operators=GELL_MANN,
        labels=tuple(f"lambda_{i}" for i in range(1, 9)),
    )


def spin1_basis() -> ObservableBasis:
    """The three spin-1 operators: basic observables of a spin-qutrit (SU(2))."""
    return ObservableBasis(
        name="su2-spin1",
        dim=3,
        operators=(SPIN1_X, SPIN1_Y, SPIN1_Z),
        labels=("S_x", "S_y", "S_z"),
    )


def pauli_basis(n_qubits: int) -> ObservableBasis:
    """Local Pauli observables sigma_k^(j) = I x ... x sigma_k x ... x I for n qubits."""
    if not 1 <= int(n_qubits) <= 4:
        raise OutOfRange(f"n_qubits must be in 1..4, got {n_qubits}")
    n = int(n_qubits)
    ops, parts, labels = [], [], []
    for j in range(n):
        for name, sigma in (("x", PAULI_X), ("y", PAULI_Y), ("z", PAULI_Z)):
            full = np.eye(1, dtype=complex)
            for k in range(n):
                full = tensor_product(full, sigma if k == j else np.eye(2, dtype=complex))
            ops.append(full)
            parts.append(j)
            labels.append(f"sigma_{name}[{j}]")
    return ObservableBasis(
        name=f"pauli-{n}",
        dim=2**n,
        operators=tuple(ops),
        dims=(2,) * n,
        parts=tuple(parts),
        labels=tuple(labels),
    )


def basis_by_name(name: str) -> ObservableBasis:
    """Resolve a catalog basis from its CLI name: su3, su2-spin1, pauli-n."""
    if name == "su3":
        return gell_mann_basis()
    if name == "su2-spin1":
        return spin1_basis()
    if name.startswith("pauli-"):
        try:
            n = int(name.split("-", 1)[1])
        except ValueError:
            raise KeyError(f"unknown basis name {name!r}") from None
        return pauli_basis(n)
    raise KeyError(f"unknown basis name {name!r}")


def _state_dim(state):
    if isinstance(state, (StateVector, DensityOperator)):
        return state.dim
    raise TypeError(f"expected StateVector or DensityOperator, got {type(state).__name__}")


def expectation(X, state) -> float:
    """Expectation value <X> in a pure or mixed state.

    Raises if the imaginary residue exceeds 1e-8, which flags a non-Hermitian
    operator (or a precondition violation) instead of silently truncating it.
    """
    A = np.asarray(X, dtype=complex)
    d = _state_dim(state)
    if A.shape != (d, d):
        raise DimensionMismatch(f"operator shape {A.shape} incompatible with dimension {d}")
    if isinstance(state, StateVector):
        val = complex(np.vdot(state.amplitudes, A @ state.amplitudes))
    else:
        val = complex(np.trace(state.matrix @ A))
    if abs(val.imag) > 1e-8:
        raise ValueError(f"expectation has imaginary residue {val.imag}; operator not Hermitian?")
    return val.real


def variance(X, state) -> float:
    """Variance <X^2> - <X>^2, clamped to 0 against numerical noise."""
    A = np.asarray(X, dtype=complex)
    d = _state_dim(state)
    if A.shape != (d, d):
        raise DimensionMismatch(f"operator shape {A.shape} incompatible with dimension {d}")
    if isinstance(state, StateVector):
        Apsi = A @ state.amplitudes
        second = float(np.real(np.vdot(Apsi, Apsi)))
        first = float(np.real(np.vdot(state.amplitudes, Apsi)))
    else:
        second = expectation(A @ A, state)
        first = expectation(A, state)
    return max(0.0, second - first * first)


def total_variance(basis: ObservableBasis, state) -> float:
    """Sum of the variances of all basic observables (over all parts).

    For mixed states this is the raw sum, which still contains classical
    (statistical) uncertainty on top of the quantum part; separating the two
    is deliberately not attempted here.
    """
    return float(sum(variance(X, state) for X in basis.operators))


def casimir(basis: ObservableBasis) -> CasimirValue:
    """Quadratic form sum X_i^2 reduced to a scalar when it is one."""
    Q = sum(X @ X for X in basis.operators)
    value = float(np.trace(Q).real) / basis.dim
    is_scalar = bool(np.abs(Q - value * np.eye(basis.dim)).max() < 1e-9)
    return CasimirValue(value=value, is_scalar=is_scalar)


def skew_information(X, rho: DensityOperator) -> float:
    """Wigner-Yanase skew information -(1/2) Tr([sqrt(rho), X]^2).

    Equals the variance on pure states and never exceeds it on mixed ones.
    """
    A = np.asarray(X, dtype=complex)
    if not isinstance(rho, DensityOperator):
        raise TypeError("skew information is defined for DensityOperator inputs")
    if A.shape != (rho.dim, rho.dim):
        raise DimensionMismatch(f"operator shape {A.shape} incompatible with dimension {rho.dim}")
    s = matrix_sqrt_psd(rho)
    comm = s @ A - A @ s
    val = -0.5 * float(np.trace(comm @ comm).real)
    return max(0.0, val)


def correlation_function(A, B, state) -> float:
    """Correlation <AB> - <A><B> of observables acting on disjoint subsystem factors."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    d = _state_dim(state)
    if A.shape != (d, d) or B.shape != (d, d):
        raise DimensionMismatch("correlation operators must match the state dimension")
    # A@B is Hermitian when A and B commute (disjoint factors); expectation()
    # rejects it otherwise via the imaginary-residue check.
    return expectation(A @ B, state) - expectation(A, state) * expectation(B, state)
