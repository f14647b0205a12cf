"""Fusion frames: weighted families of closed subspaces and their frame operator.

Weights are stored unsquared; squaring happens at operator assembly, matching
the quadratic form sum_i v_i^2 ||pi_i h||^2.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, InvalidParams
from .frames import FrameBounds
from .hilbert import SubspaceBasis, projection, require_same_field

__all__ = ["WeightedSubspaceFamily", "fusion_frame_operator", "fusion_bounds"]


class WeightedSubspaceFamily:
    """A nonempty family {(W_i, v_i)} of subspaces with strictly positive weights."""

    def __init__(self, subspaces, weights):
        subspaces = tuple(subspaces)
        if not subspaces:
            raise DimensionMismatch("family must contain at least one subspace")
        if not all(isinstance(s, SubspaceBasis) for s in subspaces):
            raise TypeError("subspaces must be SubspaceBasis instances")
        dims = {s.ambient_dim for s in subspaces}
        if len(dims) > 1:
            raise DimensionMismatch(f"subspaces live in different ambient dims {sorted(dims)}")
        require_same_field(*(s.columns for s in subspaces))
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (len(subspaces),):
            raise DimensionMismatch("one weight per subspace is required")
        if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
            raise InvalidParams("weights must be finite and strictly positive")
        self.subspaces = subspaces
        self.weights = w

    @property
    def ambient_dim(self) -> int:
        return self.subspaces[0].ambient_dim

    @property
    def size(self) -> int:
        return len(self.subspaces)

    @property
    def field(self) -> str:
        return self.subspaces[0].field

    def items(self):
        return tuple(zip(self.subspaces, self.weights))

    def __repr__(self) -> str:
        return (
            f"WeightedSubspaceFamily(size={self.size}, ambient_dim={self.ambient_dim}, "
            f"field={self.field})"
        )


def fusion_frame_operator(family: WeightedSubspaceFamily) -> np.ndarray:
    """sum_i v_i^2 pi_i, the Hermitian PSD fusion frame operator."""
    n = family.ambient_dim
    out = np.zeros((n, n), dtype=family.subspaces[0].columns.dtype)
    for basis, weight in family.items():
        out += (weight * weight) * projection(basis)
    return out


def fusion_bounds(family: WeightedSubspaceFamily) -> FrameBounds:
    """Optimal fusion bounds: extremal eigenvalues of the fusion frame operator."""
    w = np.linalg.eigvalsh(fusion_frame_operator(family))
    return FrameBounds(lower=max(float(w[0]), 0.0), upper=float(w[-1]), optimal=True)
