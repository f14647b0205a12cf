"""Dense linear-algebra substrate.

Orthonormal subspace bases, orthogonal projections, Hermitian eigenanalysis,
principal PSD square roots, operator norms, Moore-Penrose pseudo-inverses and
invertibility reports.  All matrices are dense numpy arrays over float64
("real") or complex128 ("complex"); the two scalar fields never mix silently.

Everything here is a pure function of its immutable inputs and is safe to call
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL, Tolerances
from .errors import (
    DimensionMismatch,
    FieldMismatch,
    NotHermitian,
    NotPSD,
    ZeroSubspace,
)

__all__ = [
    "field_of",
    "as_matrix",
    "as_operator",
    "require_same_field",
    "adjoint",
    "hermitian_part",
    "hermitian_residual",
    "SubspaceBasis",
    "InvertibilityReport",
    "orthonormalize",
    "projection",
    "hermitian_eigen",
    "principal_sqrt_psd",
    "operator_norm",
    "pseudo_inverse",
    "check_gl",
]


def field_of(a: np.ndarray) -> str:
    """Scalar field tag of an array: "real" or "complex"."""
    return "complex" if np.iscomplexobj(a) else "real"


def as_matrix(a, field: str | None = None) -> np.ndarray:
    """Coerce to a 2-D float64/complex128 array with finite entries."""
    m = np.asarray(a)
    if np.iscomplexobj(m) or field == "complex":
        m = m.astype(np.complex128)
    else:
        m = m.astype(np.float64)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got array of ndim {m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def as_operator(a, field: str | None = None) -> np.ndarray:
    """Coerce to a square matrix (an operator on the ambient space)."""
    m = as_matrix(a, field)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"operator must be square, got shape {m.shape}")
    return m


def require_same_field(*arrays: np.ndarray) -> str:
    fields = {field_of(a) for a in arrays}
    if len(fields) > 1:
        raise FieldMismatch("cannot mix real and complex objects")
    return fields.pop()


def adjoint(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def hermitian_part(m: np.ndarray) -> np.ndarray:
    return (m + adjoint(m)) / 2


def hermitian_residual(m: np.ndarray) -> float:
    """Relative distance from self-adjointness, ||M - M*|| / max(1, ||M||)."""
    return operator_norm(m - adjoint(m)) / max(1.0, operator_norm(m))


@dataclass(frozen=True)
class SubspaceBasis:
    """A closed subspace, represented by an n x k matrix with orthonormal columns."""

    columns: np.ndarray

    def __post_init__(self):
        q = as_matrix(self.columns)
        n, k = q.shape
        if k < 1 or k > n:
            raise DimensionMismatch(f"basis shape {q.shape} is not n x k with 1 <= k <= n")
        gram = adjoint(q) @ q
        resid = operator_norm(gram - np.eye(k))
        if resid > TOL.orth * max(1.0, operator_norm(gram)):
            raise ValueError(
                f"columns are not orthonormal (residual {resid:.3e}); "
                "use orthonormalize() on a raw spanning set"
            )
        object.__setattr__(self, "columns", q)

    @property
    def ambient_dim(self) -> int:
        return self.columns.shape[0]

    @property
    def rank(self) -> int:
        return self.columns.shape[1]

    @property
    def field(self) -> str:
        return field_of(self.columns)


@dataclass(frozen=True)
class InvertibilityReport:
    """Singular-value diagnostics for membership in GL / GL+."""

    smallest_singular_value: float
    largest_singular_value: float
    condition_number: float
    is_invertible: bool
    is_positive: bool


def orthonormalize(vectors, tol: Tolerances = TOL) -> SubspaceBasis:
    """Orthonormal basis of the span of ``vectors`` (a sequence of n-vectors).

    Rank is decided by a relative singular-value cutoff, so dependent or
    nearly dependent spanning sets collapse to their numerical rank.
    Raises ZeroSubspace when that rank is zero.
    """
    a = np.asarray(vectors)
    if a.ndim == 1:
        a = a[None, :]
    if a.ndim != 2 or a.shape[0] == 0:
        raise DimensionMismatch("expected a nonempty sequence of equal-length vectors")
    a = as_matrix(a).T  # columns spanning the subspace
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] <= 0.0:
        raise ZeroSubspace("spanning set has numerical rank 0")
    r = int(np.count_nonzero(s > tol.rank * s[0]))
    if r == 0:
        raise ZeroSubspace("spanning set has numerical rank 0")
    return SubspaceBasis(u[:, :r])


def projection(basis: SubspaceBasis) -> np.ndarray:
    """Orthogonal projection onto the subspace, Q @ Q*."""
    q = basis.columns
    return q @ adjoint(q)


def hermitian_eigen(op, tol: Tolerances = TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending, real) and orthonormal eigenvectors of a Hermitian operator.

    Raises NotHermitian when the relative residual exceeds the gate.
    """
    m = as_operator(op)
    resid = hermitian_residual(m)
    if resid > tol.herm:
        raise NotHermitian(resid)
    w, v = np.linalg.eigh(hermitian_part(m))
    return w, v


def principal_sqrt_psd(op, tol: Tolerances = TOL) -> np.ndarray:
    """The unique Hermitian PSD square root of a Hermitian PSD operator.

    Small negative eigenvalues (within the clip threshold) are clipped to 0;
    anything below raises NotPSD.
    """
    w, v = hermitian_eigen(op, tol)
    lam_max = max(float(w[-1]), 0.0)
    if w[0] < -tol.psd * max(1.0, lam_max):
        raise NotPSD(w[0])
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ adjoint(v)
    return hermitian_part(root)


def operator_norm(op) -> float:
    """Largest singular value (the operator 2-norm); accepts rectangular input."""
    m = np.asarray(op)
    if m.ndim != 2:
        raise DimensionMismatch("operator_norm expects a matrix")
    return float(np.linalg.norm(m, 2))


def pseudo_inverse(m, tol: Tolerances = TOL) -> np.ndarray:
    """Moore-Penrose pseudo-inverse with the library's relative rank cutoff."""
    return np.linalg.pinv(as_matrix(m), rcond=tol.rank)


def check_gl(op, tol: Tolerances = TOL) -> InvertibilityReport:
    """Invertibility / positivity report for a square operator.

    ``is_positive`` means Hermitian within the gate with strictly positive
    spectrum (membership in GL+); it is False for non-Hermitian input.
    """
    m = as_operator(op)
    s = np.linalg.svd(m, compute_uv=False)
    smax = float(s[0])
    smin = float(s[-1])
    invertible = smin > tol.inv * smax
    cond = np.inf if smin == 0.0 else smax / smin
    positive = False
    if hermitian_residual(m) <= tol.herm:
        w = np.linalg.eigvalsh(hermitian_part(m))
        positive = bool(w[0] > tol.inv * max(1.0, float(w[-1])))
    return InvertibilityReport(
        smallest_singular_value=smin,
        largest_singular_value=smax,
        condition_number=float(cond),
        is_invertible=bool(invertible),
        is_positive=positive,
    )
