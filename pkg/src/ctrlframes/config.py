"""Centralized numerical tolerances.

Every threshold used anywhere in the library lives here so that verification
runs can tighten or loosen individual gates without touching code.  All
functions take an optional ``tol`` argument defaulting to :data:`TOL`.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # type/constructor gates
    orth: float = 1e-12           # relative orthonormality slack for subspace bases
    rank: float = 1e-10           # relative singular-value cutoff for rank decisions
    herm: float = 1e-10           # relative Hermitian-residual gate
    psd: float = 1e-9             # clip threshold for small negative eigenvalues
    inv: float = 1e-12            # relative smallest-singular-value invertibility cutoff
    # operation acceptance thresholds
    sqrt_residual: float = 1e-8   # ||R @ R - M|| acceptance for PSD square roots
    pinv_residual: float = 1e-9   # Moore-Penrose identity acceptance
    factorization: float = 1e-8   # ||T* T - S|| acceptance for the analysis factorization
    reconstruction: float = 1e-9  # relative residual for frame-operator solves
    qdual_defect: float = 1e-8    # ||T*_W Q T_Wt - I|| acceptance
    # classification / verification thresholds
    classify: float = 1e-9        # frame / tight / parseval slack
    hypothesis: float = 1e-9      # commutation, unitarity and sampled-inequality gates
    containment: float = 1e-7     # absolute slack for predicted-vs-actual bound checks

    def replace(self, **overrides: float) -> "Tolerances":
        """A copy with the named thresholds replaced."""
        return dataclasses.replace(self, **overrides)

    @classmethod
    def names(cls) -> list[str]:
        return [f.name for f in dataclasses.fields(cls)]

    def as_dict(self) -> dict[str, float]:
        return dataclasses.asdict(self)


TOL = Tolerances()
