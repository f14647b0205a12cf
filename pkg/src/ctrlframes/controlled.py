"""Controlled fusion frames.

A weighted subspace family together with a pair of invertible control
operators (C, C').  The defining quadratic form is

    form(f) = sum_i v_i^2 <pi_i C' f, pi_i C f>,

which equals <S f, f> for the (generally non-self-adjoint) operator
S = sum_i v_i^2 C* pi_i C'.  Optimal bounds are the extremal eigenvalues of
the Hermitian part of S, which carries the real part of the form.

The square-root representation of the analysis operator needs every
C* pi_i C' to be Hermitian PSD; that is not automatic, so those operations
sit behind a per-index gate and raise SqrtGateFailed when the gate fails.
Form-based operations work unconditionally.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .config import TOL, Tolerances
from .errors import (
    DimensionMismatch,
    FieldMismatch,
    NotAFrame,
    NotHermitian,
    NotPSD,
    SingularOperator,
    SqrtGateFailed,
)
from .frames import FrameBounds
from .fusion import WeightedSubspaceFamily, fusion_frame_operator
from .hilbert import (
    InvertibilityReport,
    adjoint,
    as_operator,
    check_gl,
    field_of,
    hermitian_part,
    operator_norm,
    principal_sqrt_psd,
    projection,
    require_same_field,
)

__all__ = [
    "ControlPair",
    "ControlledFusionFrame",
    "BoundsReport",
    "BlockVector",
    "controlled_frame_operator",
    "controlled_quadratic_form",
    "quadratic_form_batch",
    "controlled_bounds",
    "controlled_analysis",
    "controlled_synthesis",
    "analysis_matrix",
    "reconstruct",
]

CLASSIFICATIONS = ("not_bessel_form", "bessel_only", "frame", "tight", "parseval")


class ControlPair:
    """Two invertible control operators on the same space.

    Invertibility is checked on construction via singular values; the reports
    are kept for diagnostics.
    """

    def __init__(self, c, c_prime, tol: Tolerances = TOL):
        c = as_operator(c)
        cp = as_operator(c_prime)
        require_same_field(c, cp)
        if c.shape != cp.shape:
            raise DimensionMismatch(f"control shapes differ: {c.shape} vs {cp.shape}")
        self.C = c
        self.C_prime = cp
        self.report_c = check_gl(c, tol)
        self.report_c_prime = check_gl(cp, tol)
        if not self.report_c.is_invertible:
            raise SingularOperator("C is not invertible")
        if not self.report_c_prime.is_invertible:
            raise SingularOperator("C' is not invertible")

    @property
    def dim(self) -> int:
        return self.C.shape[0]

    @property
    def field(self) -> str:
        return field_of(self.C)

    def is_single_control(self, tol: Tolerances = TOL) -> bool:
        """True when C' agrees with C (a single-control, C^2 frame)."""
        return operator_norm(self.C - self.C_prime) <= tol.hypothesis * max(
            1.0, operator_norm(self.C)
        )

    def __repr__(self) -> str:
        return f"ControlPair(dim={self.dim}, field={self.field})"


class ControlledFusionFrame:
    """A weighted subspace family controlled by an invertible pair (C, C').

    Instances are treated as immutable; derived matrices are cached lazily.
    """

    def __init__(self, family: WeightedSubspaceFamily, controls: ControlPair):
        if family.ambient_dim != controls.dim:
            raise DimensionMismatch(
                f"family dim {family.ambient_dim} does not match control dim {controls.dim}"
            )
        if family.field != controls.field:
            raise FieldMismatch("family and controls must share one scalar field")
        self.family = family
        self.controls = controls

    @property
    def dim(self) -> int:
        return self.family.ambient_dim

    @property
    def size(self) -> int:
        return self.family.size

    @property
    def field(self) -> str:
        return self.family.field

    @property
    def weights(self) -> np.ndarray:
        return self.family.weights

    @cached_property
    def index_operators(self) -> tuple[np.ndarray, ...]:
        """Per-index operators C* pi_i C' (unweighted)."""
        c_adj = adjoint(self.controls.C)
        cp = self.controls.C_prime
        return tuple(c_adj @ projection(b) @ cp for b in self.family.subspaces)

    def __repr__(self) -> str:
        return f"ControlledFusionFrame(size={self.size}, dim={self.dim}, field={self.field})"


@dataclass(frozen=True)
class BoundsReport:
    """Optimal bounds of the Hermitian part plus validity diagnostics."""

    bounds: FrameBounds
    hermitian_residual: float
    form_is_real: bool
    classification: str


@dataclass(frozen=True)
class BlockVector:
    """Stacked per-index coefficient vectors of the analysis operator."""

    blocks: tuple[np.ndarray, ...] = dc_field(default=())

    @property
    def count(self) -> int:
        return len(self.blocks)

    def norm(self) -> float:
        return float(np.sqrt(sum(float(np.vdot(b, b).real) for b in self.blocks)))

    def stacked(self) -> np.ndarray:
        return np.concatenate(self.blocks)


def controlled_frame_operator(frame: ControlledFusionFrame) -> np.ndarray:
    """S = sum_i v_i^2 C* pi_i C' (not necessarily Hermitian)."""
    n = frame.dim
    out = np.zeros((n, n), dtype=frame.controls.C.dtype)
    for w, m in zip(frame.weights, frame.index_operators):
        out += (w * w) * m
    return out


def quadratic_form_batch(frame: ControlledFusionFrame, vectors: np.ndarray) -> np.ndarray:
    """Quadratic-form values for a batch of vectors (columns), term by term.

    Returns a complex array for complex-field frames and a real array
    otherwise; the sum is accumulated subspace by subspace, independently of
    the assembled frame operator.
    """
    f = np.asarray(vectors)
    if f.ndim == 1:
        f = f[:, None]
    if f.shape[0] != frame.dim:
        raise DimensionMismatch(f"vectors of dim {f.shape[0]} vs ambient dim {frame.dim}")
    cf = frame.controls.C @ f
    cpf = frame.controls.C_prime @ f
    out = np.zeros(f.shape[1], dtype=np.complex128)
    for basis, w in frame.family.items():
        q = basis.columns
        a = q @ (adjoint(q) @ cf)    # pi_i C f
        b = q @ (adjoint(q) @ cpf)   # pi_i C' f
        out += (w * w) * np.sum(a.conj() * b, axis=0)
    if frame.field == "real":
        return out.real
    return out


def controlled_quadratic_form(frame: ControlledFusionFrame, f) -> float | complex:
    """sum_i v_i^2 <pi_i C' f, pi_i C f> for a single vector.

    Over the complex field the imaginary part is reported as-is; over the
    reals the value is a float.
    """
    x = np.asarray(f)
    if x.shape != (frame.dim,):
        raise DimensionMismatch(f"vector shape {x.shape} does not match ambient dim {frame.dim}")
    val = quadratic_form_batch(frame, x[:, None])[0]
    return float(val) if frame.field == "real" else complex(val)


def _classify(lower: float, upper: float, form_is_real: bool, tol: Tolerances) -> str:
    if not form_is_real:
        return "not_bessel_form"
    if lower <= tol.classify * max(1.0, upper):
        return "bessel_only"
    if upper - lower <= tol.classify * max(1.0, upper):
        if abs(lower - 1.0) <= tol.classify and abs(upper - 1.0) <= tol.classify:
            return "parseval"
        return "tight"
    return "frame"


def controlled_bounds(frame: ControlledFusionFrame, tol: Tolerances = TOL) -> BoundsReport:
    """Optimal bounds A, B = extremal eigenvalues of the Hermitian part of S.

    The quadratic form (its real part, over C) depends only on the Hermitian
    part, so these are the best constants in the defining inequality.  Over C
    a non-real form is flagged and classified as not_bessel_form.
    """
    s = controlled_frame_operator(frame)
    s_norm = operator_norm(s)
    resid = operator_norm(s - adjoint(s)) / max(1.0, s_norm)
    form_is_real = True if frame.field == "real" else resid <= tol.herm
    w = np.linalg.eigvalsh(hermitian_part(s))
    lower, upper = float(w[0]), float(w[-1])
    return BoundsReport(
        bounds=FrameBounds(lower=lower, upper=upper, optimal=True),
        hermitian_residual=float(resid),
        form_is_real=form_is_real,
        classification=_classify(lower, upper, form_is_real, tol),
    )


def _gated_roots(frame: ControlledFusionFrame, tol: Tolerances) -> tuple[np.ndarray, ...]:
    """Principal square roots of every C* pi_i C', or SqrtGateFailed."""
    roots = []
    for i, m in enumerate(frame.index_operators):
        try:
            roots.append(principal_sqrt_psd(m, tol))
        except NotHermitian as e:
            raise SqrtGateFailed(i, e.residual, "not_hermitian") from e
        except NotPSD as e:
            raise SqrtGateFailed(i, e.eigenvalue, "not_psd") from e
    return tuple(roots)


def controlled_analysis(frame: ControlledFusionFrame, f, tol: Tolerances = TOL) -> BlockVector:
    """Block coefficients (v_i (C* pi_i C')^{1/2} f); requires the PSD gate."""
    x = np.asarray(f)
    if x.shape != (frame.dim,):
        raise DimensionMismatch(f"vector shape {x.shape} does not match ambient dim {frame.dim}")
    roots = _gated_roots(frame, tol)
    return BlockVector(tuple(w * (r @ x) for w, r in zip(frame.weights, roots)))


def controlled_synthesis(frame: ControlledFusionFrame, blocks: BlockVector, tol: Tolerances = TOL) -> np.ndarray:
    """Adjoint of the analysis map: sum_i v_i (C* pi_i C')^{1/2} block_i."""
    if blocks.count != frame.size:
        raise DimensionMismatch(f"{blocks.count} blocks for a family of size {frame.size}")
    roots = _gated_roots(frame, tol)
    out = np.zeros(frame.dim, dtype=frame.controls.C.dtype)
    for w, r, b in zip(frame.weights, roots, blocks.blocks):
        b = np.asarray(b)
        if b.shape != (frame.dim,):
            raise DimensionMismatch(f"block shape {b.shape} does not match ambient dim {frame.dim}")
        out += w * (r @ b)
    return out


def analysis_matrix(frame: ControlledFusionFrame, tol: Tolerances = TOL) -> np.ndarray:
    """The stacked (size*n) x n analysis operator; rows come in per-index blocks."""
    roots = _gated_roots(frame, tol)
    return np.vstack([w * r for w, r in zip(frame.weights, roots)])


def reconstruct(frame: ControlledFusionFrame, g, tol: Tolerances = TOL) -> np.ndarray:
    """Solve S x = g for a frame (invertible S), with a residual guarantee.

    One step of iterative refinement is applied if the first solve misses the
    relative-residual target.
    """
    y = np.asarray(g)
    if y.shape != (frame.dim,):
        raise DimensionMismatch(f"vector shape {y.shape} does not match ambient dim {frame.dim}")
    report = controlled_bounds(frame, tol)
    if report.classification not in ("frame", "tight", "parseval"):
        raise NotAFrame(
            f"lower bound {report.bounds.lower:.3e} does not certify a frame "
            f"(classification {report.classification})"
        )
    s = controlled_frame_operator(frame)
    if not check_gl(s, tol).is_invertible:
        raise SingularOperator("controlled frame operator is numerically singular")
    x = np.linalg.solve(s, y)
    g_norm = float(np.linalg.norm(y))
    for _ in range(2):
        r = y - s @ x
        if float(np.linalg.norm(r)) <= tol.reconstruction * g_norm:
            return x
        x = x + np.linalg.solve(s, r)
    r_norm = float(np.linalg.norm(y - s @ x))
    if r_norm > tol.reconstruction * g_norm:
        raise SingularOperator(
            f"solve residual {r_norm:.3e} exceeds {tol.reconstruction:.1e} * ||g||"
        )
    return x
