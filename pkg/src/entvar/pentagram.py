"""Bell-type pentagram test for a single spin 1 in the vector representation.

Spin-1 states live on complexified real 3-space: a state is a complex
3-vector psi with sum |psi_k|^2 = 1, and the spin projection along a real
unit vector l acts as psi -> i (l x psi).  The dictionary to the usual
(|+1>, |0>, |-1>) amplitudes uses the spherical unit vectors
e(+1) = -(x + iy)/sqrt(2), e(0) = z, e(-1) = (x - iy)/sqrt(2)
(Condon-Shortley signs, fixed by requiring eigenvalue +1 for |+1>).

A pentagram is a cyclic quintuple of unit vectors with orthogonal neighbors.
The dichotomic reflections R_l = 1 - 2|l><l| on its vertices obey a
classical-realism bound sum cos^2(angle(l_i, psi)) <= 2 that suitably
entangled states violate, up to sqrt(5) for the regular pentagram.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from math import atan2, cos, pi, sin, sqrt

import numpy as np
from scipy.optimize import minimize

from .errors import DimensionMismatch, NoConvergence, NotOrthogonal
from .linalg import StateVector

_UNIT_TOL = 1e-10
_ORTHO_TOL = 1e-9


def to_vector_rep(psi: StateVector) -> np.ndarray:
    """Cartesian complex 3-vector of a spin-1 state."""
    if psi.dims != (3,):
        raise DimensionMismatch(f"expected a single qutrit, got dims {psi.dims}")
    a = psi.amplitudes
    s = 1.0 / sqrt(2.0)
    return np.array([s * (a[2] - a[0]), -1j * s * (a[0] + a[2]), a[1]])


def from_vector_rep(v) -> StateVector:
    """Inverse dictionary: Cartesian components back to (|+1>, |0>, |-1>) amplitudes."""
    v = _as_unit_state(v)
    s = 1.0 / sqrt(2.0)
    amp = np.array([s * (1j * v[1] - v[0]), v[2], s * (1j * v[1] + v[0])])
    return StateVector((3,), amp)


def _as_unit_state(psi) -> np.ndarray:
    if isinstance(psi, StateVector):
        return to_vector_rep(psi)
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if v.shape != (3,):
        raise DimensionMismatch(f"vector-representation states have 3 components, got {v.shape}")
    if abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise ValueError("vector-representation state is not normalized within 1e-12")
    return v


def spin_projection_vector_rep(ell, psi) -> np.ndarray:
    """Spin projection along a real unit vector: i (ell x psi), unnormalized."""
    ell = _unit_real_vector(ell)
    v = np.asarray(psi, dtype=complex).reshape(3)
    return 1j * np.cross(ell, v)


def r_operator(ell) -> np.ndarray:
    """Dichotomic reflection 1 - 2|ell><ell| = 2 S_ell^2 - 1 (eigenvalues -1, +1, +1)."""
    ell = _unit_real_vector(ell)
    return np.eye(3, dtype=complex) - 2.0 * np.outer(ell, ell)


def _unit_real_vector(ell) -> np.ndarray:
    v = np.asarray(ell, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise DimensionMismatch(f"expected a real 3-vector, got shape {v.shape}")
    if abs(np.linalg.norm(v) - 1.0) > _UNIT_TOL:
        raise ValueError(f"direction must be a unit vector, |v| = {np.linalg.norm(v)}")
    return v


@dataclass(frozen=True, eq=False)
class Pentagram:
    """Five unit vectors in real 3-space with orthogonal cyclic neighbors."""

    vertices: np.ndarray

    def __post_init__(self):
        V = np.asarray(self.vertices, dtype=float)
        if V.shape != (5, 3):
            raise DimensionMismatch(f"pentagram needs five 3-vectors, got shape {V.shape}")
        norms = np.linalg.norm(V, axis=1)
        if np.abs(norms - 1.0).max() > _UNIT_TOL:
            raise ValueError("pentagram vertices must be unit vectors within 1e-10")
        for i in range(5):
            d = float(V[i] @ V[(i + 1) % 5])
            if abs(d) > _ORTHO_TOL:
                raise NotOrthogonal(f"vertices {i} and {(i + 1) % 5} have dot product {d}")
        object.__setattr__(self, "vertices", V.copy())


@dataclass(frozen=True)
class PentagramReport:
    """Geometric value sum |<l_i, psi>|^2, the Bell-type left side, and the verdict.

    bell_lhs = sum <R_i R_{i+1}> + 3 = 8 - 4 * geometric_value, so a geometric
    value above 2 is the same thing as a negative Bell left side.
    """

    geometric_value: float
    bell_lhs: float
    violated: bool


def regular_pentagram(axis) -> Pentagram:
    """Regular pentagram: five vectors on a cone around `axis`, neighbors orthogonal.

    The polar angle is fixed by cos^2 theta = cos(pi/5) / (1 + cos(pi/5)) and
    azimuths advance by 4 pi / 5 (the star order), which is exactly the
    neighbor-orthogonality condition.
    """
    axis = _unit_real_vector(axis)
    c = cos(pi / 5.0)
    cos_theta = sqrt(c / (1.0 + c))
    sin_theta = sqrt(1.0 - c / (1.0 + c))
    u, v = (np.asarray(w) for w in _frame_orthogonal_to(tuple(axis)))
    rows = []
    for k in range(5):
        phi = 4.0 * pi * k / 5.0
        rows.append(sin_theta * (cos(phi) * u + sin(phi) * v) + cos_theta * axis)
    return Pentagram(np.array(rows))


def pentagram_value(pentagram: Pentagram, psi) -> PentagramReport:
    """Evaluate the pentagram test for a state given in either representation."""
    v = _as_unit_state(psi)
    V = pentagram.vertices
    for i in range(5):
        if abs(float(V[i] @ V[(i + 1) % 5])) > _ORTHO_TOL:
            raise NotOrthogonal("pentagram invariant broken; neighbor reflections would not commute")
    geometric = float(np.sum(np.abs(V @ v) ** 2))
    R = [r_operator(V[i]) for i in range(5)]
    bell = 3.0
    for i in range(5):
        bell += float(np.real(np.vdot(v, R[i] @ R[(i + 1) % 5] @ v)))
    return PentagramReport(
        geometric_value=geometric,
        bell_lhs=bell,
        violated=bool(geometric > 2.0 + 1e-9),
    )


def classical_cycle_minimum() -> int:
    """Minimum of sum r_i r_{i+1} over all 32 deterministic assignments r_i = +-1."""
    return min(
        sum(r[i] * r[(i + 1) % 5] for i in range(5))
        for r in itertools.product((-1, 1), repeat=5)
    )


def _cross3(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot3(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _frame_orthogonal_to(n):
    """Deterministic orthonormal pair spanning the plane orthogonal to n."""
    ax, ay, az = abs(n[0]), abs(n[1]), abs(n[2])
    if ax <= ay and ax <= az:
        e = (1.0, 0.0, 0.0)
    elif ay <= az:
        e = (0.0, 1.0, 0.0)
    else:
        e = (0.0, 0.0, 1.0)
    u = _cross3(n, e)
    nu = sqrt(_dot3(u, u))
    u = (u[0] / nu, u[1] / nu, u[2] / nu)
    return u, _cross3(n, u)


def _chain_from_angles(x):
    """Four chained vectors plus the frame of the fifth one's plane.

    l1 is free on the sphere; each later vector lives in the plane orthogonal
    to its predecessor, parametrized by one angle in the frame
    (l_{i-1}, l_i x l_{i-1}), which keeps every neighbor pair exactly
    orthogonal by construction.
    """
    th, ph, a2, a3, a4 = x[0], x[1], x[2], x[3], x[4]
    st = sin(th)
    l1 = (st * cos(ph), st * sin(ph), cos(th))
    u, v = _frame_orthogonal_to(l1)
    vecs = [l1]
    for a in (a2, a3, a4):
        ca, sa = cos(a), sin(a)
        ln = (
            ca * u[0] + sa * v[0],
            ca * u[1] + sa * v[1],
            ca * u[2] + sa * v[2],
        )
        u, v = vecs[-1], _cross3(ln, vecs[-1])
        vecs.append(ln)
    return vecs, u, v


def _vertices_from_angles(x, project_closure):
    """Five chained unit vectors from 6 angles; optional exact closing rotation.

    When project_closure is set, l5 is rotated within the plane orthogonal to
    l4 onto the nearest vector orthogonal to l1, making the pentagram exact.
    """
    vecs, u, v = _chain_from_angles(x)
    l1 = vecs[0]
    a5 = x[5]
    if project_closure:
        alpha = _dot3(u, l1)
        beta = _dot3(v, l1)
        if alpha * alpha + beta * beta > 1e-24:
            t = atan2(-alpha, beta)
            if cos(t - a5) < 0.0:
                t += pi
            a5 = t
    ca, sa = cos(a5), sin(a5)
    vecs.append((ca * u[0] + sa * v[0], ca * u[1] + sa * v[1], ca * u[2] + sa * v[2]))
    return np.array(vecs)


def _angles_from_vertices(V):
    l1, l2, l3, l4, l5 = (tuple(row) for row in V)
    th = float(np.arccos(np.clip(l1[2], -1.0, 1.0)))
    ph = atan2(l1[1], l1[0])
    u, v = _frame_orthogonal_to(l1)
    angles = [th, ph, atan2(_dot3(l2, v), _dot3(l2, u))]
    for prev, ln, nxt in ((l1, l2, l3), (l2, l3, l4), (l3, l4, l5)):
        angles.append(atan2(_dot3(nxt, _cross3(ln, prev)), _dot3(nxt, prev)))
    return np.array(angles)


def optimize_pentagram(psi, restarts: int = 64, seed: int = 0):
    """Search for the pentagram maximizing the geometric value for a given state.

    Multi-start Nelder-Mead over the 6 chained angles with a quadratic penalty
    (weight 1e3) on the closure constraint, followed by exact projection of the
    final pentagram.  The first start is a regular pentagram around the top
    eigenvector of Re(psi psi^dagger), which is already optimal for real
    (completely entangled) states; the rest are seeded random draws.  Returns
    (pentagram, report), deterministic for a given seed, best value winning and
    earlier restarts breaking ties.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    v = _as_unit_state(psi)
    M = np.real(np.outer(v, v.conj()))
    m = tuple(tuple(row) for row in M)

    def quad(l):
        return (
            l[0] * (m[0][0] * l[0] + m[0][1] * l[1] + m[0][2] * l[2])
            + l[1] * (m[1][0] * l[0] + m[1][1] * l[1] + m[1][2] * l[2])
            + l[2] * (m[2][0] * l[0] + m[2][1] * l[1] + m[2][2] * l[2])
        )

    def neg_penalized(x):
        vecs, u, w = _chain_from_angles(x)
        ca, sa = cos(x[5]), sin(x[5])
        l5 = (ca * u[0] + sa * w[0], ca * u[1] + sa * w[1], ca * u[2] + sa * w[2])
        closure = _dot3(l5, vecs[0])
        return -(quad(vecs[0]) + quad(vecs[1]) + quad(vecs[2]) + quad(vecs[3]) + quad(l5)) + 1e3 * closure * closure

    def projected_value(x):
        V = _vertices_from_angles(x, project_closure=True)
        return float(sum(quad(tuple(row)) for row in V)), V

    _, eigvecs = np.linalg.eigh(M)
    starts = [_angles_from_vertices(regular_pentagram(eigvecs[:, -1]).vertices)]
    rng = np.random.default_rng(seed)
    for _ in range(restarts - 1):
        th = float(np.arccos(rng.uniform(-1.0, 1.0)))
        rest = rng.uniform(0.0, 2.0 * pi, size=5)
        starts.append(np.concatenate(([th], rest)))

    best = None
    converged_any = False
    for x0 in starts:
        val0, V0 = projected_value(x0)
        if best is None or val0 > best[0]:
            best = (val0, V0)
        res = minimize(
            neg_penalized,
            x0,
            method="Nelder-Mead",
            options={"maxiter": 1500, "xatol": 1e-6, "fatol": 1e-10},
        )
        converged_any = converged_any or bool(res.success)
        val, V = projected_value(res.x)
        if val > best[0]:
            best = (val, V)
    if not converged_any:
        raise NoConvergence("no Nelder-Mead restart converged")
    pent = Pentagram(best[1])
    return pent, pentagram_value(pent, v)


def clean_pentagram(raw, tol: float = 1e-6) -> Pentagram:
    """Validate hand-entered pentagram vertices, re-orthogonalizing small defects.

    Neighbor dot products above `tol` are rejected; those between the strict
    invariant (1e-9) and `tol` are repaired by Gram-Schmidt on the offending
    pair (the closure pair by an in-plane rotation) with a warning.
    """
    V = np.asarray(raw, dtype=float)
    if V.shape != (5, 3):
        raise DimensionMismatch(f"pentagram needs five 3-vectors, got shape {V.shape}")
    norms = np.linalg.norm(V, axis=1)
    if norms.min() < 1e-12:
        raise ValueError("pentagram contains a zero vector")
    V = V / norms[:, None]
    repaired = False
    for i in range(4):
        d = float(V[i] @ V[i + 1])
        if abs(d) > tol:
            raise NotOrthogonal(f"vertices {i} and {i + 1} have dot product {d}")
        if abs(d) > _ORTHO_TOL:
            V[i + 1] = V[i + 1] - d * V[i]
            V[i + 1] /= np.linalg.norm(V[i + 1])
            repaired = True
    d = float(V[4] @ V[0])
    if abs(d) > tol:
        raise NotOrthogonal(f"vertices 4 and 0 have dot product {d}")
    if abs(d) > _ORTHO_TOL:
        # rotate the last vertex within the plane orthogonal to its predecessor
        w = np.cross(V[3], V[4])
        w /= np.linalg.norm(w)
        alpha, beta = float(V[4] @ V[0]), float(w @ V[0])
        t = atan2(-alpha, beta)
        cand = cos(t) * V[4] + sin(t) * w
        if cand @ V[4] < 0.0:
            cand = -cand
        V[4] = cand
        repaired = True
    if repaired:
        warnings.warn("pentagram input re-orthogonalized", stacklevel=2)
    return Pentagram(V)
