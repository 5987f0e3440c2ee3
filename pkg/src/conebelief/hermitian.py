"""Numerics for the measurement-operator space.

Hermitian n x n complex matrices form a real linear space of dimension n^2.
The fixed coordinate basis here is isometric for the trace inner product
(diagonal units first, then sqrt(2)-scaled real and imaginary off-diagonal
units), so positive-semidefinite geometry is preserved when the rest of the
package reasons in coordinates.

The eigensolver is a cyclic Jacobi iteration for complex Hermitian input;
tests cross-check it against numpy's.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError, InputError

HERMITIAN_TOL = 1e-12
RANK_TOL = 1e-10
IDEMPOTENT_TOL = 1e-10

_SQRT2 = np.sqrt(2.0)


def check_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate a square complex matrix as Hermitian within tol entrywise."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    diff = np.abs(a - a.conj().T)
    i, j = np.unravel_index(np.argmax(diff), diff.shape)
    if diff[i, j] > tol:
        raise InputError(
            f"matrix is not Hermitian: entry ({i},{j}) differs from its "
            f"conjugate transpose by {diff[i, j]:.3e}"
        )
    return (a + a.conj().T) / 2.0


def hermitian_dim(n: int) -> int:
    return n * n


def coordinatize(a: np.ndarray) -> np.ndarray:
    """Real coordinates of a Hermitian matrix in the fixed isometric basis."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    out = np.empty(n * n)
    out[:n] = a.diagonal().real
    k = n
    for i in range(n):
        for j in range(i + 1, n):
            out[k] = _SQRT2 * a[i, j].real
            out[k + 1] = _SQRT2 * a[i, j].imag
            k += 2
    return out


def uncoordinatize(x: np.ndarray, n: int) -> np.ndarray:
    """Inverse of :func:`coordinatize`."""
    x = np.asarray(x, dtype=float)
    if x.size != n * n:
        raise InputError(f"expected {n * n} coordinates, got {x.size}")
    a = np.zeros((n, n), dtype=complex)
    a[np.diag_indices(n)] = x[:n]
    k = n
    for i in range(n):
        for j in range(i + 1, n):
            a[i, j] = (x[k] + 1j * x[k + 1]) / _SQRT2
            a[j, i] = a[i, j].conjugate()
            k += 2
    return a


def eigh_jacobi(a: np.ndarray, tol: float = 1e-13, max_sweeps: int = 100):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, unitary matrix of eigenvectors) with
    ``Q diag(w) Q* = A`` to roughly machine precision.
    """
    a = check_hermitian(a)
    n = a.shape[0]
    w = a.copy()
    q = np.eye(n, dtype=complex)
    scale = max(1.0, np.linalg.norm(a))
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(w - np.diag(w.diagonal())) ** 2))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apq = w[p, r]
                if abs(apq) <= 1e-300:
                    continue
                app = w[p, p].real
                aqq = w[r, r].real
                phase = apq / abs(apq)
                # Rotation angle for the 2x2 Hermitian subproblem; the
                # conjugate phase makes the rotated off-diagonal real.
                theta = 0.5 * np.arctan2(2.0 * abs(apq), app - aqq)
                c = np.cos(theta)
                s = np.sin(theta) * np.conj(phase)
                jp = np.eye(n, dtype=complex)
                jp[p, p] = c
                jp[p, r] = -np.conj(s)
                jp[r, p] = s
                jp[r, r] = c
                w = jp.conj().T @ w @ jp
                q = q @ jp
    else:
        raise ConvergenceError("Jacobi eigensolver did not converge", last_iterate=w)
    evals = w.diagonal().real.copy()
    order = np.argsort(evals, kind="stable")
    return evals[order], q[:, order]


def min_eigenvalue(a: np.ndarray) -> float:
    return float(eigh_jacobi(a)[0][0])


def orthonormal_columns(vectors, n: int, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the span of the given complex vectors."""
    if len(vectors) == 0:
        return np.zeros((n, 0), dtype=complex)
    m = np.asarray(vectors, dtype=complex).T
    if m.shape[0] != n:
        raise InputError("basis vector has wrong dimension")
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    r = int(np.sum(s > tol * max(1.0, s[0] if s.size else 1.0)))
    return u[:, :r]


def projector_from_vectors(vectors, n: int) -> np.ndarray:
    q = orthonormal_columns(vectors, n)
    return q @ q.conj().T


def normalize_projector(p: np.ndarray, tol: float = IDEMPOTENT_TOL) -> np.ndarray:
    """Snap a near-projector to the exact projector on its >=1/2 eigenspace."""
    p = check_hermitian(p, tol=tol)
    if np.linalg.norm(p @ p - p) > tol:
        raise InputError(
            f"matrix is not idempotent within {tol:g}: ||P^2 - P||_F = "
            f"{np.linalg.norm(p @ p - p):.3e}"
        )
    w, q = eigh_jacobi(p)
    keep = q[:, w >= 0.5]
    return keep @ keep.conj().T


def projector_range(p: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    w, q = eigh_jacobi(p)
    return q[:, w > 0.5]


def projector_rank(p: np.ndarray) -> int:
    return projector_range(p).shape[1]


class FloatSubspace:
    """A subspace of real d-space held as orthonormal rows (float)."""

    __slots__ = ("dim_ambient", "basis")

    def __init__(self, dim_ambient: int, rows=None):
        self.dim_ambient = dim_ambient
        if rows is None or len(rows) == 0:
            self.basis = np.zeros((0, dim_ambient))
            return
        m = np.asarray(rows, dtype=float)
        u, s, vt = np.linalg.svd(m, full_matrices=False)
        r = int(np.sum(s > RANK_TOL * max(1.0, s[0] if s.size else 1.0)))
        self.basis = vt[:r]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def project(self, v: np.ndarray) -> np.ndarray:
        if self.dim == 0:
            return np.zeros_like(v)
        return self.basis.T @ (self.basis @ v)

    def contains(self, v: np.ndarray, tol: float = 1e-8) -> bool:
        return bool(np.linalg.norm(v - self.project(v)) <= tol * max(1.0, np.linalg.norm(v)))

    def orthocomplement(self) -> "FloatSubspace":
        if self.dim == 0:
            return FloatSubspace(self.dim_ambient, np.eye(self.dim_ambient))
        u, s, vt = np.linalg.svd(self.basis, full_matrices=True)
        out = FloatSubspace(self.dim_ambient)
        out.basis = vt[self.dim :]
        return out

    def add(self, other: "FloatSubspace") -> "FloatSubspace":
        rows = np.vstack([self.basis, other.basis])
        return FloatSubspace(self.dim_ambient, rows)

    def intersect(self, other: "FloatSubspace") -> "FloatSubspace":
        rows = np.vstack(
            [self.orthocomplement().basis, other.orthocomplement().basis]
        )
        return FloatSubspace(self.dim_ambient, rows).orthocomplement()

    def includes(self, other: "FloatSubspace", tol: float = 1e-8) -> bool:
        return all(self.contains(b, tol) for b in other.basis)

    def equals(self, other: "FloatSubspace", tol: float = 1e-8) -> bool:
        return self.includes(other, tol) and other.includes(self, tol)

    def __repr__(self):
        return f"FloatSubspace(dim={self.dim}/{self.dim_ambient})"
