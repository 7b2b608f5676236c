"""Small dense complex linear algebra: the numeric substrate for every other module.

All operators here are tiny (side <= 16) dense complex128 matrices stored as
numpy arrays in row-major order.  Multipartite indices are lexicographic with
the first subsystem slowest, so for qubits |00...0> comes first; single spin-1
amplitudes are ordered (|+1>, |0>, |-1>) to match S_z = diag(1, 0, -1).
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from math import prod

import numpy as np
import scipy.linalg

from .errors import BadSubsystem, DimensionMismatch, NoConvergence, NotHermitian, NotPositive

MAX_SIDE = 16

_HERMITIAN_TOL = 1e-10


def _as_square_complex(M, name="matrix"):
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {A.shape}")
    if A.shape[0] > MAX_SIDE:
        raise DimensionMismatch(f"{name} side {A.shape[0]} exceeds supported maximum {MAX_SIDE}")
    if not np.all(np.isfinite(A.view(float))):
        raise ValueError(f"{name} contains non-finite entries")
    return A


def is_hermitian(M, tol=_HERMITIAN_TOL):
    A = np.asarray(M, dtype=complex)
    return A.ndim == 2 and A.shape[0] == A.shape[1] and np.abs(A - A.conj().T).max() <= tol


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state over one or more finite-dimensional subsystems.

    dims lists the subsystem dimensions; amplitudes has length prod(dims) and
    unit Euclidean norm within 1e-12.
    """

    dims: tuple
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must all be >= 2, got {dims}")
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1).copy()
        if amp.size != prod(dims):
            raise DimensionMismatch(
                f"{amp.size} amplitudes for subsystem dimensions {dims} (need {prod(dims)})"
            )
        if not np.all(np.isfinite(amp.view(float))):
            raise ValueError("amplitudes contain non-finite entries")
        if abs(np.linalg.norm(amp) - 1.0) > 1e-12:
            raise ValueError(f"state norm {np.linalg.norm(amp)} is not 1 within 1e-12")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self):
        return prod(self.dims)

    def projector(self):
        """Rank-1 density matrix |psi><psi| as a plain array."""
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite operator with subsystem dims."""

    dims: tuple
    matrix: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must all be >= 2, got {dims}")
        mat = _as_square_complex(self.matrix, "density matrix").copy()
        if mat.shape[0] != prod(dims):
            raise DimensionMismatch(
                f"matrix side {mat.shape[0]} does not match subsystem dimensions {dims}"
            )
        if not is_hermitian(mat, 1e-10):
            raise NotHermitian("density matrix is not Hermitian within 1e-10")
        if abs(np.trace(mat) - 1.0) > 1e-10:
            raise ValueError(f"density matrix trace {np.trace(mat)} is not 1 within 1e-10")
        if np.linalg.eigvalsh(mat).min() < -1e-10:
            raise NotPositive("density matrix has an eigenvalue below -1e-10")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self):
        return prod(self.dims)

    @classmethod
    def from_state(cls, psi: StateVector) -> "DensityOperator":
        return cls(psi.dims, psi.projector())


def hermitian_eigendecomposition(H, tol=_HERMITIAN_TOL):
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a Hermitian matrix."""
    A = _as_square_complex(H, "H")
    if not is_hermitian(A, tol):
        raise NotHermitian(f"matrix is not Hermitian within {tol}")
    try:
        w, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"Hermitian eigensolver failed: {exc}") from exc
    return w, V


def general_eigenvalues(M):
    """Eigenvalues of a general (possibly non-normal) square matrix."""
    A = _as_square_complex(M, "M")
    try:
        return np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"general eigensolver failed: {exc}") from exc


def matrix_sqrt_psd(rho):
    """Hermitian PSD square root of a density operator (or raw Hermitian PSD matrix).

    Eigenvalues in [-1e-8, 0) are treated as numerical noise and clamped to 0;
    anything below -1e-8 raises NotPositive.  Eigenvalues below the eigensolver
    noise floor are zeroed as well: the square root amplifies a 1e-16 residue
    on a rank-deficient input into a 1e-8 error, which would dominate results
    on pure and near-pure states.
    """
    mat = rho.matrix if isinstance(rho, DensityOperator) else None
    if mat is None:
        mat = _as_square_complex(rho, "rho")
        if not is_hermitian(mat):
            raise NotHermitian("matrix square root requires a Hermitian input")
    w, V = hermitian_eigendecomposition(mat)
    if w.min() < -1e-8:
        raise NotPositive(f"eigenvalue {w.min()} below -1e-8; matrix is not PSD")
    w = np.clip(w, 0.0, None)
    w[w < 1e-13 * max(1.0, w[-1])] = 0.0
    return (V * np.sqrt(w)) @ V.conj().T


def matrix_exp(M):
    """Matrix exponential (scaling-and-squaring with a Pade core)."""
    A = _as_square_complex(M, "M")
    return scipy.linalg.expm(A)


def tensor_product(A, B):
    """Kronecker product, row-major, consistent with the state ordering convention."""
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def partial_trace(rho: DensityOperator, keep) -> DensityOperator:
    """Trace out every subsystem not listed in `keep` (kept dims stay in original order)."""
    dims = rho.dims
    n = len(dims)
    kept = tuple(sorted({int(k) for k in keep}))
    if not kept:
        raise BadSubsystem("keep set is empty")
    if kept[0] < 0 or kept[-1] >= n:
        raise BadSubsystem(f"subsystem indices {kept} out of range for {n} subsystems")
    letters = string.ascii_lowercase
    row = list(letters[:n])
    col = [letters[n + i] if i in kept else row[i] for i in range(n)]
    out = [row[i] for i in kept] + [col[i] for i in kept]
    expr = "".join(row) + "".join(col) + "->" + "".join(out)
    reduced = np.einsum(expr, rho.matrix.reshape(dims + dims))
    d = prod(dims[i] for i in kept)
    return DensityOperator(tuple(dims[i] for i in kept), reduced.reshape(d, d))
