"""Discrete vector frames: synthesis/analysis/frame operators and optimal bounds.

A frame is a finite family {f_i} in R^n or C^n.  Inner products follow the
convention <x, y> = y* x, so the analysis coefficients of f are <f, f_i>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL, Tolerances
from .errors import DimensionMismatch
from .hilbert import as_matrix, field_of

__all__ = [
    "VectorFrame",
    "FrameBounds",
    "frame_operator",
    "frame_bounds",
    "analyze",
    "synthesize",
]


class VectorFrame:
    """A finite sequence of vectors in a common ambient space.

    ``vectors`` is stored as an (m, n) array whose rows are the frame vectors.
    """

    def __init__(self, vectors):
        a = np.asarray(vectors)
        if a.ndim == 1:
            a = a[None, :]
        if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
            raise DimensionMismatch("expected a nonempty sequence of equal-length vectors")
        self.vectors = as_matrix(a)

    @property
    def ambient_dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def count(self) -> int:
        return self.vectors.shape[0]

    @property
    def field(self) -> str:
        return field_of(self.vectors)

    def __repr__(self) -> str:
        return f"VectorFrame(count={self.count}, ambient_dim={self.ambient_dim}, field={self.field})"


@dataclass(frozen=True)
class FrameBounds:
    """Lower/upper frame bounds; ``optimal`` marks eigenanalysis-exact values."""

    lower: float
    upper: float
    optimal: bool = True

    def is_frame(self, tol: Tolerances = TOL) -> bool:
        return self.lower > tol.classify * max(1.0, self.upper)

    def is_tight(self, tol: Tolerances = TOL) -> bool:
        return self.is_frame(tol) and (self.upper - self.lower) <= tol.classify * max(1.0, self.upper)

    def is_parseval(self, tol: Tolerances = TOL) -> bool:
        return (
            self.is_tight(tol)
            and abs(self.lower - 1.0) <= tol.classify
            and abs(self.upper - 1.0) <= tol.classify
        )


def frame_operator(frame: VectorFrame) -> np.ndarray:
    """The positive operator S = sum_i f_i f_i*."""
    v = frame.vectors
    return v.T @ v.conj()


def frame_bounds(frame: VectorFrame) -> FrameBounds:
    """Optimal bounds: extremal eigenvalues of the frame operator.

    A lower bound of 0 signals a Bessel sequence that is not a frame.
    """
    w = np.linalg.eigvalsh(frame_operator(frame))
    # the operator is PSD by construction; clip eigensolver roundoff
    return FrameBounds(lower=max(float(w[0]), 0.0), upper=float(w[-1]), optimal=True)


def analyze(frame: VectorFrame, f) -> np.ndarray:
    """Analysis coefficients {<f, f_i>}."""
    x = np.asarray(f)
    if x.shape != (frame.ambient_dim,):
        raise DimensionMismatch(f"vector shape {x.shape} does not match ambient dim {frame.ambient_dim}")
    return frame.vectors.conj() @ x


def synthesize(frame: VectorFrame, coefficients) -> np.ndarray:
    """Weighted superposition sum_i c_i f_i."""
    c = np.asarray(coefficients)
    if c.shape != (frame.count,):
        raise DimensionMismatch(f"coefficient shape {c.shape} does not match frame count {frame.count}")
    return frame.vectors.T @ c
