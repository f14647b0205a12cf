"""Numerical verifiers for the structural results on controlled fusion frames.

Each verifier computes the hypothesis of one result, the bounds it predicts,
the actual optimal bounds of the object in question, and a containment
verdict: the predicted interval must contain the actual optimal bounds up to
an absolute tolerance.  A satisfied hypothesis with failed containment is a
genuine counterexample and fails every suite built on these verifiers.

Verifier ids:

  transform-adjoint      invertible u with u* C = C u* applied to a single-control frame
  transform-unitary      unitary u with u C = C u applied to a single-control frame
  approximate-dual       ||f - T*_Z T_W f|| <= eps ||f|| with eps < 1
  subspace-perturbation  per-index subspace replacement with small difference operators
  lambda-perturbation    (lambda1, lambda2, beta)-relative perturbation of block norms
  q-dual-bounds          lower-bound inequalities for a Q-dual pair
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .config import TOL, Tolerances
from .errors import (
    DimensionMismatch,
    HypothesisViolated,
    InvalidParams,
    InvalidQDual,
    NotCSquared,
    NotSurjective,
)
from .frames import FrameBounds
from .fusion import WeightedSubspaceFamily
from .hilbert import (
    SubspaceBasis,
    adjoint,
    as_operator,
    check_gl,
    hermitian_part,
    operator_norm,
    orthonormalize,
    pseudo_inverse,
)
from .controlled import (
    ControlledFusionFrame,
    analysis_matrix,
    controlled_bounds,
)

__all__ = [
    "TheoremReport",
    "QDual",
    "PerturbationParams",
    "verify_transform",
    "verify_approximate_dual",
    "verify_subspace_perturbation",
    "verify_lambda_perturbation",
    "construct_q_dual",
    "qdual_condition_residuals",
    "verify_q_dual_bounds",
    "unit_vectors",
    "make_commuting_operator",
]

FRAME_CLASSES = ("frame", "tight", "parseval")


@dataclass(frozen=True)
class TheoremReport:
    theorem_id: str
    hypothesis_satisfied: bool
    predicted_bounds: FrameBounds
    actual_bounds: FrameBounds
    containment_ok: bool
    diagnostics: dict = dc_field(default_factory=dict)


@dataclass(frozen=True)
class QDual:
    """Block operator between coefficient spaces with its identity defect.

    ``matrix`` maps the stacked coefficient space of the dual family into that
    of the primary family (the direction that makes T*_W Q T_Wt well typed);
    ``defect`` is ||T*_W Q T_Wt - I||.
    """

    matrix: np.ndarray
    defect: float


@dataclass(frozen=True)
class PerturbationParams:
    """Relative perturbation parameters (lambda1, lambda2, beta)."""

    lambda1: float
    lambda2: float
    beta: np.ndarray

    def __post_init__(self):
        if not (0.0 <= self.lambda1 < 1.0 and 0.0 <= self.lambda2 < 1.0):
            raise InvalidParams("lambda1 and lambda2 must lie in [0, 1)")
        b = np.asarray(self.beta, dtype=np.float64)
        if b.ndim != 1 or b.size == 0 or not np.all(np.isfinite(b)) or np.any(b <= 0.0):
            raise InvalidParams("beta must be a finite, strictly positive sequence")
        object.__setattr__(self, "beta", b)

    @property
    def beta_norm(self) -> float:
        return float(np.linalg.norm(self.beta))


def _contains(predicted: FrameBounds, actual: FrameBounds, tau: float) -> bool:
    return (predicted.lower <= actual.lower + tau) and (actual.upper <= predicted.upper + tau)


def unit_vectors(dim: int, count: int, rng: np.random.Generator, field: str = "real") -> np.ndarray:
    """(dim, count) array of seeded unit-norm columns."""
    x = rng.standard_normal((dim, count))
    if field == "complex":
        x = (x + 1j * rng.standard_normal((dim, count))) / np.sqrt(2.0)
    norms = np.linalg.norm(x, axis=0)
    norms[norms == 0.0] = 1.0
    return x / norms


def _require_same_controls(a: ControlledFusionFrame, b: ControlledFusionFrame, tol: Tolerances):
    scale = max(1.0, operator_norm(a.controls.C), operator_norm(a.controls.C_prime))
    dc = operator_norm(a.controls.C - b.controls.C)
    dcp = operator_norm(a.controls.C_prime - b.controls.C_prime)
    if max(dc, dcp) > tol.hypothesis * scale:
        raise InvalidParams("the two frames must share the same control pair")


def make_commuting_operator(c: np.ndarray, mode: str, rng: np.random.Generator) -> np.ndarray:
    """A seeded invertible operator satisfying the commutation hypothesis for ``mode``.

    For a Hermitian control this is a function of ``c`` in its eigenbasis
    (positive spectrum for the adjoint mode, unimodular for the unitary mode),
    which commutes with ``c`` exactly; otherwise a nonzero scalar multiple of
    the identity is used.
    """
    c = as_operator(c)
    n = c.shape[0]
    herm = operator_norm(c - adjoint(c)) <= 1e-12 * max(1.0, operator_norm(c))
    if not herm:
        alpha = float(rng.uniform(0.5, 2.0))
        return alpha * np.eye(n, dtype=c.dtype)
    _, v = np.linalg.eigh(hermitian_part(c))
    if mode == "adjoint_commuting":
        spectrum = rng.uniform(0.5, 2.0, size=n)
    elif mode == "unitary_commuting":
        if np.iscomplexobj(c):
            spectrum = np.exp(1j * rng.uniform(0.0, 2 * np.pi, size=n))
        else:
            spectrum = rng.choice([-1.0, 1.0], size=n)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return (v * spectrum) @ adjoint(v)


def verify_transform(
    frame: ControlledFusionFrame,
    u,
    mode: str,
    tol: Tolerances = TOL,
) -> TheoremReport:
    """Image of a single-control frame under an invertible commuting operator.

    mode "adjoint_commuting" requires u* C = C u*;
    mode "unitary_commuting" requires u C = C u and u unitary.
    The transformed family {(u W_i, v_i)} is predicted to be a frame with
    bounds A / (||u||^2 ||u^-1||^2) and B ||u||^2 ||u^-1||^2.
    """
    if mode not in ("adjoint_commuting", "unitary_commuting"):
        raise ValueError(f"unknown mode {mode!r}")
    c = frame.controls.C
    if not frame.controls.is_single_control(tol):
        raise NotCSquared("transform verifiers require C = C'")
    u = as_operator(u, field=frame.field)
    if u.shape[0] != frame.dim:
        raise DimensionMismatch("u must act on the frame's ambient space")
    u_report = check_gl(u, tol)
    if not u_report.is_invertible:
        raise HypothesisViolated("u_invertible", u_report.smallest_singular_value)
    scale = max(1.0, operator_norm(u) * operator_norm(c))
    if mode == "adjoint_commuting":
        comm = operator_norm(adjoint(u) @ c - c @ adjoint(u)) / scale
    else:
        unit = operator_norm(adjoint(u) @ u - np.eye(frame.dim))
        if unit > tol.hypothesis:
            raise HypothesisViolated("u_unitary", unit)
        comm = operator_norm(u @ c - c @ u) / scale
    if comm > tol.hypothesis:
        raise HypothesisViolated(f"commutation_{mode}", comm)

    base = controlled_bounds(frame, tol)
    moved = WeightedSubspaceFamily(
        [orthonormalize((u @ b.columns).T, tol) for b in frame.family.subspaces],
        frame.weights,
    )
    actual = controlled_bounds(ControlledFusionFrame(moved, frame.controls), tol).bounds
    blow_up = u_report.condition_number ** 2
    predicted = FrameBounds(
        lower=base.bounds.lower / blow_up,
        upper=base.bounds.upper * blow_up,
        optimal=False,
    )
    hypothesis = base.classification in FRAME_CLASSES
    return TheoremReport(
        theorem_id=f"transform-{'adjoint' if mode == 'adjoint_commuting' else 'unitary'}",
        hypothesis_satisfied=hypothesis,
        predicted_bounds=predicted,
        actual_bounds=actual,
        containment_ok=_contains(predicted, actual, tol.containment),
        diagnostics={
            "commutation_residual": float(comm),
            "condition_number_squared": float(blow_up),
            "base_lower": base.bounds.lower,
            "base_upper": base.bounds.upper,
        },
    )


def verify_approximate_dual(
    w: ControlledFusionFrame,
    z: ControlledFusionFrame,
    tol: Tolerances = TOL,
) -> TheoremReport:
    """Approximate-duality: eps = ||I - T*_Z T_W|| < 1 forces both families to be frames.

    The certified lower bounds are (1-eps)^2 / B_Z for W and (1-eps)^2 / B_W
    for Z, where B_* are the optimal upper (Bessel) bounds; eps = 0 is the
    exact-duality case T*_Z T_W = Id.
    """
    if w.dim != z.dim:
        raise DimensionMismatch("frames live in different ambient spaces")
    _require_same_controls(w, z, tol)
    tw = analysis_matrix(w, tol)
    tz = analysis_matrix(z, tol)
    eps = operator_norm(np.eye(w.dim) - adjoint(tz) @ tw)
    bw = controlled_bounds(w, tol)
    bz = controlled_bounds(z, tol)
    hypothesis = eps < 1.0 and bw.form_is_real and bz.form_is_real
    pred_lower_w = (1.0 - eps) ** 2 / bz.bounds.upper if bz.bounds.upper > 0 else 0.0
    pred_lower_z = (1.0 - eps) ** 2 / bw.bounds.upper if bw.bounds.upper > 0 else 0.0
    predicted = FrameBounds(lower=pred_lower_w, upper=bw.bounds.upper, optimal=False)
    contains = (
        pred_lower_w <= bw.bounds.lower + tol.containment
        and pred_lower_z <= bz.bounds.lower + tol.containment
    )
    return TheoremReport(
        theorem_id="approximate-dual",
        hypothesis_satisfied=hypothesis,
        predicted_bounds=predicted,
        actual_bounds=bw.bounds,
        containment_ok=contains,
        diagnostics={
            "epsilon": float(eps),
            "predicted_lower_w": float(pred_lower_w),
            "predicted_lower_z": float(pred_lower_z),
            "actual_lower_w": bw.bounds.lower,
            "actual_lower_z": bz.bounds.lower,
            "actual_upper_z": bz.bounds.upper,
        },
    )


def _spectral_abs(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(hermitian_part(m))
    return (v * np.abs(w)) @ adjoint(v)


def verify_subspace_perturbation(
    w: ControlledFusionFrame,
    z_subspaces,
    epsilon: float,
    tol: Tolerances = TOL,
) -> TheoremReport:
    """Replace each W_i by Z_i, keeping weights and controls.

    The per-index difference operators D_i = v_i^2 (C* pi_{W_i} C' - C* pi_{Z_i} C')
    are summarized by eps_eff^2 = lambda_max(sum_i |H(D_i)|), a conservative
    surrogate that is exact when every D_i is Hermitian PSD.  The hypothesis is
    eps_eff <= epsilon < sqrt(A); the predicted bounds are (A - eps^2, B + eps^2).
    """
    z_subspaces = tuple(z_subspaces)
    if len(z_subspaces) != w.size:
        raise DimensionMismatch(
            f"{len(z_subspaces)} replacement subspaces for a family of size {w.size}"
        )
    if any(not isinstance(s, SubspaceBasis) or s.ambient_dim != w.dim for s in z_subspaces):
        raise DimensionMismatch("replacement subspaces must match the ambient space")
    epsilon = float(epsilon)
    z = ControlledFusionFrame(
        WeightedSubspaceFamily(z_subspaces, w.weights), w.controls
    )
    abs_sum = np.zeros((w.dim, w.dim), dtype=w.controls.C.dtype)
    herm_resid_max = 0.0
    non_psd = 0
    for v2, mw, mz in zip(w.weights**2, w.index_operators, z.index_operators):
        d = v2 * (mw - mz)
        herm_resid_max = max(
            herm_resid_max, operator_norm(d - adjoint(d)) / max(1.0, operator_norm(d))
        )
        hd = hermitian_part(d)
        eigs = np.linalg.eigvalsh(hd)
        if eigs[0] < -tol.psd * max(1.0, float(np.abs(eigs).max())):
            non_psd += 1
        abs_sum += _spectral_abs(d)
    eps_eff = float(np.sqrt(max(float(np.linalg.eigvalsh(abs_sum)[-1]), 0.0)))

    bw = controlled_bounds(w, tol)
    a, b = bw.bounds.lower, bw.bounds.upper
    is_frame = bw.classification in FRAME_CLASSES
    hypothesis = (
        is_frame
        and eps_eff <= epsilon + tol.containment
        and 0.0 < epsilon
        and epsilon < np.sqrt(max(a, 0.0))
    )
    predicted = FrameBounds(lower=a - epsilon**2, upper=b + epsilon**2, optimal=False)
    actual = controlled_bounds(z, tol).bounds
    return TheoremReport(
        theorem_id="subspace-perturbation",
        hypothesis_satisfied=hypothesis,
        predicted_bounds=predicted,
        actual_bounds=actual,
        containment_ok=_contains(predicted, actual, tol.containment),
        diagnostics={
            "epsilon": epsilon,
            "epsilon_effective": eps_eff,
            "sqrt_lower": float(np.sqrt(max(a, 0.0))),
            "difference_non_psd_count": float(non_psd),
            "difference_hermitian_residual_max": float(herm_resid_max),
        },
    )


def verify_lambda_perturbation(
    w: ControlledFusionFrame,
    z: ControlledFusionFrame,
    params: PerturbationParams,
    samples: int = 1000,
    seed: int = 0,
    tol: Tolerances = TOL,
) -> TheoremReport:
    """Relative perturbation of the block norms, checked by seeded sampling.

    For each seeded unit vector f the inequality

        lhs(f) <= lambda1 * ||blocks_W(f)|| + lambda2 * ||blocks_Z(f)|| + ||beta||_2

    is checked, where every block norm is computed through the form identity
    ||v_i (M_i)^{1/2} f||^2 = sum_i v_i^2 <M_i f, f> (no square roots needed).
    Any negative per-index form makes the square-root objects ill-defined and
    fails the hypothesis.  Predicted bounds follow the closed formulas
    ((1-l1) sqrt(A) - ||b||)^2 / (1+l2)^2 and ((1+l1) sqrt(B) + ||b||)^2 / (1-l2)^2.
    """
    if not isinstance(params, PerturbationParams):
        raise InvalidParams("params must be a PerturbationParams instance")
    if w.dim != z.dim or w.size != z.size:
        raise DimensionMismatch("frames must have equal ambient dimension and family size")
    _require_same_controls(w, z, tol)
    if not np.allclose(w.weights, z.weights, rtol=0.0, atol=1e-12):
        raise InvalidParams("the perturbed family must reuse the original weights")
    samples = int(samples)
    if samples < 1:
        raise InvalidParams("samples must be >= 1")

    bw = controlled_bounds(w, tol)
    a, b = bw.bounds.lower, bw.bounds.upper
    is_frame = bw.classification in FRAME_CLASSES
    bn = params.beta_norm
    margin = (1.0 - params.lambda1) * np.sqrt(max(a, 0.0)) - bn

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    f = unit_vectors(w.dim, samples, rng, w.field)
    neg_tol = 1e-12 * max(1.0, abs(b))
    qw = np.zeros(samples)
    qz = np.zeros(samples)
    qd = np.zeros(samples)
    negative_terms = 0
    for v2, mw, mz in zip(w.weights**2, w.index_operators, z.index_operators):
        tw_ = np.sum(f.conj() * (mw @ f), axis=0).real * v2
        tz_ = np.sum(f.conj() * (mz @ f), axis=0).real * v2
        td_ = tw_ - tz_
        negative_terms += int(np.count_nonzero(tw_ < -neg_tol))
        negative_terms += int(np.count_nonzero(tz_ < -neg_tol))
        negative_terms += int(np.count_nonzero(td_ < -neg_tol))
        qw += tw_
        qz += tz_
        qd += td_
    lhs = np.sqrt(np.clip(qd, 0.0, None))
    rhs = (
        params.lambda1 * np.sqrt(np.clip(qw, 0.0, None))
        + params.lambda2 * np.sqrt(np.clip(qz, 0.0, None))
        + bn
    )
    max_slack = float(np.max(lhs - rhs))
    hypothesis = (
        is_frame
        and margin > 0.0
        and negative_terms == 0
        and max_slack <= tol.hypothesis
    )
    pred_lower = (margin / (1.0 + params.lambda2)) ** 2 if margin > 0.0 else 0.0
    pred_upper = (
        ((1.0 + params.lambda1) * np.sqrt(max(b, 0.0)) + bn) / (1.0 - params.lambda2)
    ) ** 2
    predicted = FrameBounds(lower=float(pred_lower), upper=float(pred_upper), optimal=False)
    actual = controlled_bounds(z, tol).bounds
    return TheoremReport(
        theorem_id="lambda-perturbation",
        hypothesis_satisfied=hypothesis,
        predicted_bounds=predicted,
        actual_bounds=actual,
        containment_ok=_contains(predicted, actual, tol.containment),
        diagnostics={
            "beta_norm": bn,
            "lower_margin": float(margin),
            "max_inequality_slack": max_slack,
            "negative_form_terms": float(negative_terms),
            "samples": float(samples),
        },
    )


def construct_q_dual(
    w: ControlledFusionFrame,
    w_tilde: ControlledFusionFrame,
    tol: Tolerances = TOL,
) -> QDual:
    """Canonical Q between coefficient spaces via composed pseudo-inverses.

    Q = (T*_W)^dagger (T_Wt)^dagger, so T*_W Q T_Wt = Id whenever W is a frame
    (surjective synthesis) and the dual family's analysis map is injective.
    Raises NotSurjective when W's synthesis operator is rank deficient.
    """
    if w.dim != w_tilde.dim:
        raise DimensionMismatch("frames live in different ambient spaces")
    _require_same_controls(w, w_tilde, tol)
    tw = analysis_matrix(w, tol)
    twt = analysis_matrix(w_tilde, tol)
    s = np.linalg.svd(tw, compute_uv=False)
    if s[-1] <= tol.inv * s[0]:
        raise NotSurjective("synthesis operator of the primary frame has rank < n")
    q = pseudo_inverse(adjoint(tw), tol) @ pseudo_inverse(twt, tol)
    defect = operator_norm(adjoint(tw) @ q @ twt - np.eye(w.dim))
    return QDual(matrix=q, defect=float(defect))


def qdual_condition_residuals(
    w: ControlledFusionFrame,
    w_tilde: ControlledFusionFrame,
    q: QDual,
    pairs: int = 100,
    seed: int = 0,
    tol: Tolerances = TOL,
) -> dict:
    """Residuals of the three equivalent duality identities.

    (1) ||T*_Wt Q* T_W - I||, (2) ||T*_W Q T_Wt - I||, and (3) the worst
    mismatch of <f, g> against both coefficient-space pairings over seeded
    unit pairs (f, g).
    """
    tw = analysis_matrix(w, tol)
    twt = analysis_matrix(w_tilde, tol)
    eye = np.eye(w.dim)
    r1 = operator_norm(adjoint(twt) @ adjoint(q.matrix) @ tw - eye)
    r2 = operator_norm(adjoint(tw) @ q.matrix @ twt - eye)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    fs = unit_vectors(w.dim, pairs, rng, w.field)
    gs = unit_vectors(w.dim, pairs, rng, w.field)
    r3 = 0.0
    for k in range(pairs):
        f, g = fs[:, k], gs[:, k]
        ref = complex(np.vdot(g, f))  # <f, g> under <x, y> = y* x
        lhs1 = complex(np.vdot(twt @ g, adjoint(q.matrix) @ (tw @ f)))
        lhs2 = complex(np.vdot(tw @ g, q.matrix @ (twt @ f)))
        r3 = max(r3, abs(lhs1 - ref), abs(lhs2 - ref))
    return {
        "adjoint_identity": float(r1),
        "identity": float(r2),
        "pairing_mismatch_max": float(r3),
    }


def verify_q_dual_bounds(
    w: ControlledFusionFrame,
    w_tilde: ControlledFusionFrame,
    q: QDual,
    tol: Tolerances = TOL,
) -> TheoremReport:
    """Lower-bound inequalities certified by a Q-dual.

    With (A, B) the optimal bounds of the primary frame and (C_op, D_op) those
    of the dual family, a valid Q-dual forces C_op >= B^-1 ||Q||^-2 and
    D_op >= A^-1 ||Q||^-2.  Raises InvalidQDual when the defect is too large.
    """
    if q.defect > tol.qdual_defect:
        raise InvalidQDual(f"Q-dual defect {q.defect:.3e} exceeds {tol.qdual_defect:.1e}")
    bw = controlled_bounds(w, tol)
    bwt = controlled_bounds(w_tilde, tol)
    a, b = bw.bounds.lower, bw.bounds.upper
    qn = operator_norm(q.matrix)
    floor_lower = 1.0 / (b * qn * qn) if b > 0 and qn > 0 else 0.0
    floor_upper = 1.0 / (a * qn * qn) if a > 0 and qn > 0 else 0.0
    hypothesis = bw.classification in FRAME_CLASSES and q.defect <= tol.qdual_defect
    contains = (
        bwt.bounds.lower >= floor_lower - tol.containment
        and bwt.bounds.upper >= floor_upper - tol.containment
    )
    predicted = FrameBounds(lower=floor_lower, upper=bwt.bounds.upper, optimal=False)
    return TheoremReport(
        theorem_id="q-dual-bounds",
        hypothesis_satisfied=hypothesis,
        predicted_bounds=predicted,
        actual_bounds=bwt.bounds,
        containment_ok=contains,
        diagnostics={
            "q_norm": float(qn),
            "defect": q.defect,
            "dual_lower_floor": float(floor_lower),
            "dual_upper_floor": float(floor_upper),
            "primary_lower": a,
            "primary_upper": b,
        },
    )
