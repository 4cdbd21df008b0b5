"""Dense complex linear algebra for bipartite density matrices up to 9x9.

Conventions
-----------
Composite basis ordering is lexicographic |i>_A (x) |j>_B, i.e. the flat
index of |ij> is ``dim_b * i + j``.  All operations return new arrays;
nothing mutates its input.

The eigensolver is a cyclic Jacobi iteration on the Hermitian input.  At
these sizes (<= 9) Jacobi is simple, accurate to near machine precision,
and needs no external solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import EigensolverError, NonHermitianInput, ShapeMismatch


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; block (i, j) of the result equals a[i, j] * b."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def hermiticity_defect(m: np.ndarray) -> float:
    """max |m_ij - conj(m_ji)|."""
    return float(np.abs(m - m.conj().T).max()) if m.size else 0.0


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(
    m: np.ndarray,
    want_vectors: bool = False,
    tol: Tolerances = DEFAULT,
):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns eigenvalues sorted ascending, and, if requested, a unitary V
    with ``m == V diag(w) V^dagger`` up to the convergence threshold.

    Raises NonHermitianInput if the input violates the Hermiticity
    tolerance, EigensolverError if the off-diagonal Frobenius norm does
    not fall below ``tol.jacobi_offdiag`` within ``tol.jacobi_max_sweeps``
    sweeps.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {m.shape}")
    if hermiticity_defect(m) > tol.hermiticity:
        raise NonHermitianInput(
            f"Hermiticity defect {hermiticity_defect(m):.3e} exceeds "
            f"{tol.hermiticity:.0e}"
        )

    n = m.shape[0]
    a = (m + m.conj().T) / 2.0
    v = np.eye(n, dtype=complex) if want_vectors else None
    # elements below this cannot push the off-norm above threshold
    skip = tol.jacobi_offdiag / (10.0 * n * n)

    converged = False
    for _ in range(tol.jacobi_max_sweeps):
        if _offdiag_norm(a) <= tol.jacobi_offdiag:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = complex(a[p, q])
                mag = abs(apq)
                if mag <= skip:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # unitary J: J[p,p]=c, J[p,q]=s*phase, J[q,p]=-s*conj(phase), J[q,q]=c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * np.conj(phase) * col_q
                a[:, q] = s * phase * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * np.conj(phase) * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                if v is not None:
                    vcol_p = v[:, p].copy()
                    vcol_q = v[:, q].copy()
                    v[:, p] = c * vcol_p - s * np.conj(phase) * vcol_q
                    v[:, q] = s * phase * vcol_p + c * vcol_q
    else:
        converged = _offdiag_norm(a) <= tol.jacobi_offdiag
    if not converged:
        raise EigensolverError(
            f"Jacobi sweep limit {tol.jacobi_max_sweeps} reached with "
            f"off-diagonal norm {_offdiag_norm(a):.3e}"
        )

    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    if v is not None:
        return w, v[:, order]
    return w


def hermitian_eigenvalues(m: np.ndarray, tol: Tolerances = DEFAULT) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, sorted ascending."""
    return jacobi_eigh(m, want_vectors=False, tol=tol)


def trace_norm(m: np.ndarray, tol: Tolerances = DEFAULT) -> float:
    """Sum of singular values, via eigenvalues of the Gram matrix.

    Rectangular inputs are allowed (realigned matrices are d_A^2 x d_B^2).
    Gram eigenvalues within the clamp of zero are rounded to zero before
    the square root (two-sided: +1e-16-level noise would otherwise leak
    1e-8 into the sum); anything below ``tol.singular_clamp`` signals a
    numeric fault.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got shape {m.shape}")
    if m.shape[0] <= m.shape[1]:
        gram = m @ m.conj().T
    else:
        gram = m.conj().T @ m
    w = jacobi_eigh(gram, tol=tol)
    if w.size and w[0] < tol.singular_clamp:
        raise EigensolverError(
            f"Gram matrix eigenvalue {w[0]:.3e} below clamp {tol.singular_clamp:.0e}"
        )
    w = np.where(w > -tol.singular_clamp, w, 0.0)
    return float(np.sum(np.sqrt(w)))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A bipartite density matrix tagged with its subsystem dimensions.

    Checked at construction: shape, finiteness, Hermiticity, unit trace.
    Positivity requires an eigensolve and is verified by ``min_eigenvalue``
    where callers need it (state builders, property tests); channel outputs
    are positive by construction.
    """

    dim_a: int
    dim_b: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.dim_a not in (2, 3) or self.dim_b not in (2, 3):
            raise ShapeMismatch(
                f"supported subsystem dimensions are 2 and 3, got "
                f"({self.dim_a}, {self.dim_b})"
            )
        d = self.dim_a * self.dim_b
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (d, d):
            raise ShapeMismatch(f"expected a {d}x{d} matrix, got {m.shape}")
        if not np.all(np.isfinite(m.view(float))):
            raise ValueError("matrix contains NaN or Inf entries")
        if hermiticity_defect(m) > DEFAULT.hermiticity:
            raise NonHermitianInput(
                f"Hermiticity defect {hermiticity_defect(m):.3e}"
            )
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > DEFAULT.trace:
            raise ValueError(f"trace {tr} is not 1 within {DEFAULT.trace:.0e}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def min_eigenvalue(self) -> float:
        return float(hermitian_eigenvalues(self.matrix)[0])


def partial_transpose_matrix(
    m: np.ndarray, dim_a: int, dim_b: int, subsystem: str = "A"
) -> np.ndarray:
    """Block transpose on one subsystem of a (dim_a*dim_b)-square matrix."""
    d = dim_a * dim_b
    m = np.asarray(m, dtype=complex)
    if m.shape != (d, d):
        raise ShapeMismatch(f"expected a {d}x{d} matrix, got {m.shape}")
    r = m.reshape(dim_a, dim_b, dim_a, dim_b)
    if subsystem == "A":
        r = r.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        r = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return r.reshape(d, d).copy()


def partial_transpose(rho: DensityMatrix, subsystem: str = "A") -> np.ndarray:
    """Partial transpose of a density matrix; Hermitian and unit trace,
    but in general not positive (that is the point of the PPT test)."""
    return partial_transpose_matrix(rho.matrix, rho.dim_a, rho.dim_b, subsystem)


def realign_matrix(m: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """Realignment R with R[(m,mu),(n,nu)] = rho[(m,n),(mu,nu)].

    Row index ranges over pairs of subsystem-A indices, column index over
    pairs of subsystem-B indices; the result has shape dim_a^2 x dim_b^2.
    """
    d = dim_a * dim_b
    m = np.asarray(m, dtype=complex)
    if m.shape != (d, d):
        raise ShapeMismatch(f"expected a {d}x{d} matrix, got {m.shape}")
    r = m.reshape(dim_a, dim_b, dim_a, dim_b)
    return r.transpose(0, 2, 1, 3).reshape(dim_a * dim_a, dim_b * dim_b).copy()


def realign(rho: DensityMatrix) -> np.ndarray:
    return realign_matrix(rho.matrix, rho.dim_a, rho.dim_b)
