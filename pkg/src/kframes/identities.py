"""Scalar identities and inequalities for K-frames and their duals.

Every checker evaluates both sides of its claim from explicit coefficient
sums (inner products against the individual frame/dual vectors), not from
collapsed operator algebra; the test-suite recomputes the same quantities
through mixed/partial operators as an independent oracle.  All claims are
per-vector unless stated otherwise, with the inner product <x, y> = y^H x.

The checked claims, for a K-dual pair (Kf = sum_i <f, g_i> f_i):

* split identity: for any index set J,
    sum_{i in J} <f,g_i> conj<Kf,f_i> - ||sum_{i in J} <f,g_i> f_i||^2
  equals the mirrored expression over the complement;
* weighted split identity: the same with an arbitrary bounded weight
  sequence (alpha_i) replacing the indicator of J;
* and, for Parseval K-frames (S_F = KK^H), a family of energy identities
  and bounds built from the partial sums S_J = sum_{i in J} f_i f_i^H,
  including the 3/4 lower bound and the extremal constants v+/v- of the
  split energy ratio over range(K).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .defaults import resolve_tol
from .errors import (
    DimensionMismatch,
    NotKFrame,
    NotParseval,
    OverlappingSubsets,
    ZeroOperator,
)
from .frames import (
    DualPair,
    IndexSubset,
    KFrame,
    frame_operator,
    is_parseval_kframe,
    kframe_bounds,
    partial_frame_operator,
    reduced_lower_solution,
)
from .douglas import canonical_kdual
from .linalg import (
    as_cmat,
    as_cvec,
    hermitian_part,
    op_norm,
    pinv,
    range_basis,
    rayleigh_extrema_on_subspace,
)
from .reports import EquivalenceReport, IdentityReport, InequalityReport

__all__ = [
    "VConstants",
    "SplitConstantsReport",
    "check_dual_split_identity",
    "check_canonical_split_identity",
    "check_weighted_split_identity",
    "check_subset_transfer_identity",
    "check_three_quarters_bound",
    "v_constants",
    "check_split_constant_properties",
    "check_coefficient_norm_bounds",
    "check_unit_constant_equivalence",
    "check_orthogonal_split_equivalence",
]


def _operator_for(frame: KFrame, k) -> np.ndarray:
    k = as_cmat(k, "operator K")
    if k.shape != (frame.dim, frame.dim):
        raise DimensionMismatch(
            f"operator shape {k.shape} does not match frame dim {frame.dim}"
        )
    return k


def _require_parseval(frame: KFrame, k, tol: float) -> np.ndarray:
    k = _operator_for(frame, k)
    ok, residual = is_parseval_kframe(frame, k, tol)
    if not ok:
        raise NotParseval(f"||S_F - KK^H|| = {residual:.3e} beyond tolerance")
    return k


def _sqnorm(v: np.ndarray) -> float:
    return float(np.real(np.vdot(v, v)))


def check_dual_split_identity(
    pair: DualPair, subset: IndexSubset, f, tol: float | None = None
) -> IdentityReport:
    """Split identity for a K-dual pair and an index set J.

    lhs = sum_{i in J} <f,g_i> conj<Kf,f_i> - ||sum_{i in J} <f,g_i> f_i||^2,
    rhs = the same expression over J^c with the scalar sum conjugated.
    Both sides are complex and equal for every f when G is a K-dual of F.
    """
    tol = resolve_tol(tol)
    n = pair.frame.count
    subset.validate_for(n)
    f = as_cvec(f, pair.frame.dim, "f")
    fv = pair.frame.vectors
    c = pair.dual_vectors.conj().T @ f          # c_i = <f, g_i>
    kc = fv.conj().T @ (pair.operator @ f)      # kc_i = <Kf, f_i>
    j = subset.as_array()
    jc = subset.complement(n).as_array()
    lhs = np.sum(c[j] * np.conj(kc[j])) - _sqnorm(fv[:, j] @ c[j])
    rhs = np.sum(np.conj(c[jc]) * kc[jc]) - _sqnorm(fv[:, jc] @ c[jc])
    return IdentityReport.compare(lhs, rhs, tol)


def check_canonical_split_identity(
    frame: KFrame, k, subset: IndexSubset, f, tol: float | None = None
) -> IdentityReport:
    """Split identity with the canonical coefficients (X_F f)_i.

    Builds the canonical K-dual and delegates, so the coefficients are
    exactly <f, g_i> for g_i the canonical dual vectors.
    """
    pair = canonical_kdual(frame, k, tol)
    return check_dual_split_identity(pair, subset, f, tol)


def check_weighted_split_identity(
    pair: DualPair, alpha, f, tol: float | None = None
) -> IdentityReport:
    """Split identity with an arbitrary bounded weight sequence (alpha_i).

    lhs = sum_i alpha_i <f,g_i> conj<Kf,f_i> - ||sum_i alpha_i <f,g_i> f_i||^2,
    rhs = sum_i (1-conj(alpha_i)) conj<f,g_i> <Kf,f_i>
          - ||sum_i (1-alpha_i) <f,g_i> f_i||^2.
    Indicator weights recover the plain split identity.
    """
    tol = resolve_tol(tol)
    alpha = as_cvec(alpha, pair.frame.count, "alpha")
    f = as_cvec(f, pair.frame.dim, "f")
    fv = pair.frame.vectors
    c = pair.dual_vectors.conj().T @ f
    kc = fv.conj().T @ (pair.operator @ f)
    lhs = np.sum(alpha * c * np.conj(kc)) - _sqnorm(fv @ (alpha * c))
    beta = 1.0 - alpha
    rhs = np.sum(np.conj(beta) * np.conj(c) * kc) - _sqnorm(fv @ (beta * c))
    return IdentityReport.compare(lhs, rhs, tol)


def check_subset_transfer_identity(
    frame: KFrame,
    k,
    subset: IndexSubset,
    extra: IndexSubset,
    f,
    tol: float | None = None,
) -> IdentityReport:
    """Moving a set E disjoint from J across the split (Parseval case).

    ||S_{J u E} f||^2 - ||S_{(J u E)^c} f||^2
      = ||S_J f||^2 - ||S_{J^c} f||^2
        + 2 Re sum_{i in E} <f,f_i> conj<KK^H f, f_i>.
    The left side uses partial frame operators, the right side partial
    operators plus explicit coefficient sums.
    """
    tol = resolve_tol(tol)
    k = _require_parseval(frame, k, tol)
    n = frame.count
    subset.validate_for(n)
    extra.validate_for(n)
    if extra.intersects(subset):
        raise OverlappingSubsets(f"E {extra.indices} meets J {subset.indices}")
    f = as_cvec(f, frame.dim, "f")
    union = subset.union(extra)
    lhs = _sqnorm(partial_frame_operator(frame, union) @ f) - _sqnorm(
        partial_frame_operator(frame, union.complement(n)) @ f
    )
    a = frame.vectors.conj().T @ f
    b = frame.vectors.conj().T @ (k @ (k.conj().T @ f))
    e = extra.as_array()
    rhs = (
        _sqnorm(partial_frame_operator(frame, subset) @ f)
        - _sqnorm(partial_frame_operator(frame, subset.complement(n)) @ f)
        + 2.0 * float(np.real(np.sum(a[e] * np.conj(b[e]))))
    )
    return IdentityReport.compare(lhs, rhs, tol)


def check_three_quarters_bound(
    frame: KFrame, k, subset: IndexSubset, f, tol: float | None = None
):
    """Symmetric split energy: identity across J/J^c plus the 3/4 bound.

    With t_i = <f,f_i> conj<KK^H f,f_i>, the quantity
        Re sum_{i in J^c} t_i + ||S_J f||^2
    equals its mirror image (J <-> J^c) and dominates 0.75 ||KK^H f||^2.
    Returns (IdentityReport, InequalityReport).
    """
    tol = resolve_tol(tol)
    k = _require_parseval(frame, k, tol)
    n = frame.count
    subset.validate_for(n)
    f = as_cvec(f, frame.dim, "f")
    fv = frame.vectors
    gf = k @ (k.conj().T @ f)
    a = fv.conj().T @ f
    b = fv.conj().T @ gf
    t = a * np.conj(b)
    j = subset.as_array()
    jc = subset.complement(n).as_array()
    sj = fv[:, j] @ a[j]
    sjc = fv[:, jc] @ a[jc]
    lhs = float(np.real(np.sum(t[jc]))) + _sqnorm(sj)
    rhs = float(np.real(np.sum(t[j]))) + _sqnorm(sjc)
    ident = IdentityReport.compare(lhs, rhs, tol)
    bound = 0.75 * _sqnorm(gf)
    ineq = InequalityReport.compare(bound, lhs, tol)
    return ident, ineq


@dataclass(frozen=True)
class VConstants:
    """Extrema of the split energy ratio over range(K).

    For a Parseval K-frame and an index set J the ratio

        [ Re sum_{i in J^c} conj<f,f_i> <KK^H f,f_i> + ||S_J f||^2 ]
        / ||KK^H f||^2

    attains its supremum v_plus and infimum v_minus over nonzero f in
    range(K); restricted_dim is the dimension of that subspace.
    """

    v_plus: float
    v_minus: float
    subset: IndexSubset
    restricted_dim: int


def v_constants(
    frame: KFrame, k, subset: IndexSubset, tol: float | None = None
) -> VConstants:
    """Compute v_plus/v_minus as generalized Rayleigh extrema.

    Numerator and denominator are the quadratic forms of
    Q = Herm(KK^H S_{J^c}) + S_J^2 and D = (KK^H)^2; both vanish on the
    orthogonal complement of range(K), so the extrema are computed from the
    pencil compressed onto an orthonormal basis of range(K).
    """
    tol = resolve_tol(tol)
    k = _require_parseval(frame, k, tol)
    subset.validate_for(frame.count)
    w = range_basis(k)
    if w.shape[1] == 0:
        raise ZeroOperator("K is numerically zero; the ratio is undefined")
    gram = k @ k.conj().T
    s_j = partial_frame_operator(frame, subset)
    s_jc = partial_frame_operator(frame, subset.complement(frame.count))
    q = hermitian_part(gram @ s_jc) + s_j @ s_j
    d = gram @ gram
    vmin, vmax = rayleigh_extrema_on_subspace(q, d, w, tol)
    return VConstants(
        v_plus=vmax, v_minus=vmin, subset=subset, restricted_dim=int(w.shape[1])
    )


@dataclass(frozen=True)
class SplitConstantsReport:
    """Joint verdict on the structural properties of v_plus/v_minus.

    lower_ok: v_minus >= 3/4 (within tol);
    upper_ok: v_plus <= ||K|| ||K^+|| (1 + ||K|| ||K^+||) (within tol);
    stated_upper_holds: the sharper ||K|| ||K^+|| (1 + ||K||) bound,
        recorded empirically but never asserted;
    complement_ok: v_plus/v_minus agree between J and J^c;
    boundary_ok: v_plus = v_minus = 1 when J is empty or full (None when
        the subset is proper, where no boundary claim applies).
    """

    subset_constants: VConstants
    complement_constants: VConstants
    proof_bound: float
    stated_bound: float
    lower_ok: bool
    upper_ok: bool
    stated_upper_holds: bool
    complement_ok: bool
    boundary_ok: bool | None
    passed: bool


def check_split_constant_properties(
    frame: KFrame, k, subset: IndexSubset, tol: float | None = None
) -> SplitConstantsReport:
    """Verify the bracket 3/4 <= v_minus <= v_plus <= bound and symmetries."""
    tol = resolve_tol(tol)
    k_arr = _require_parseval(frame, k, tol)
    n = frame.count
    vj = v_constants(frame, k_arr, subset, tol)
    vjc = v_constants(frame, k_arr, subset.complement(n), tol)
    norm_k = op_norm(k_arr)
    norm_kp = op_norm(pinv(k_arr))
    proof_bound = norm_k * norm_kp * (1.0 + norm_k * norm_kp)
    stated_bound = norm_k * norm_kp * (1.0 + norm_k)
    lower_ok = vj.v_minus >= 0.75 - tol
    upper_ok = vj.v_plus <= proof_bound + tol
    stated_upper_holds = vj.v_plus <= stated_bound + tol
    complement_ok = (
        IdentityReport.compare(vj.v_plus, vjc.v_plus, tol).passed
        and IdentityReport.compare(vj.v_minus, vjc.v_minus, tol).passed
    )
    if len(subset) in (0, n):
        boundary_ok = abs(vj.v_plus - 1.0) <= tol and abs(vj.v_minus - 1.0) <= tol
    else:
        boundary_ok = None
    passed = bool(
        lower_ok
        and upper_ok
        and complement_ok
        and vj.v_minus <= vj.v_plus + tol
        and boundary_ok is not False
    )
    return SplitConstantsReport(
        subset_constants=vj,
        complement_constants=vjc,
        proof_bound=proof_bound,
        stated_bound=stated_bound,
        lower_ok=lower_ok,
        upper_ok=upper_ok,
        stated_upper_holds=stated_upper_holds,
        complement_ok=complement_ok,
        boundary_ok=boundary_ok,
        passed=passed,
    )


def check_coefficient_norm_bounds(frame: KFrame, k, f, tol: float | None = None):
    """Frame-operator norm bounds on the analysis coefficients.

    (i)  ||S_F f||^2 <= ||S_F|| * sum_i |<f,f_i>|^2              (all f);
    (ii) sum_i |<f,f_i>|^2 <= ||K^+||^2 ||X_F||^2 ||S_F f||^2    (f in range K),
    where the input f is orthogonally projected onto range(K) for (ii).
    Returns a pair of InequalityReports.
    """
    tol = resolve_tol(tol)
    k = _operator_for(frame, k)
    f = as_cvec(f, frame.dim, "f")
    bounds = kframe_bounds(frame, k, tol)
    if not bounds.is_kframe:
        raise NotKFrame(
            f"range residual {bounds.range_residual:.3e} exceeds tolerance"
        )
    s = frame_operator(frame)
    a = frame.vectors.conj().T @ f
    first = InequalityReport.compare(
        _sqnorm(s @ f), op_norm(s) * float(np.sum(np.abs(a) ** 2)), tol
    )
    w = range_basis(k)
    fr = w @ (w.conj().T @ f)
    ar = frame.vectors.conj().T @ fr
    x = reduced_lower_solution(frame, k)
    factor = op_norm(pinv(k)) ** 2 * op_norm(x) ** 2
    second = InequalityReport.compare(
        float(np.sum(np.abs(ar) ** 2)), factor * _sqnorm(s @ fr), tol
    )
    return first, second


def check_unit_constant_equivalence(
    frame: KFrame, k, subset: IndexSubset, vectors, tol: float | None = None
) -> EquivalenceReport:
    """Three-way equivalence tying v_plus = v_minus = 1 to split identities.

    (a) v_plus = v_minus = 1;
    (b) ||S_J f||^2 = Re sum_{i in J} <f,f_i> conj<KK^H f,f_i>  for all f;
    (c) the same over J^c.
    (b)/(c) are quantified over the supplied batch of test vectors (rows of
    `vectors`); the report states whether the three verdicts coincide.
    """
    tol = resolve_tol(tol)
    k = _require_parseval(frame, k, tol)
    n = frame.count
    subset.validate_for(n)
    fs = np.asarray(vectors, dtype=np.complex128)
    if fs.ndim == 1:
        fs = fs[None, :]
    if fs.ndim != 2 or fs.shape[0] < 1 or fs.shape[1] != frame.dim:
        raise DimensionMismatch(
            f"vectors: expected (batch, {frame.dim}), got {fs.shape}"
        )
    vc = v_constants(frame, k, subset, tol)
    res_a = max(
        IdentityReport.compare(vc.v_plus, 1.0, tol).rel_err,
        IdentityReport.compare(vc.v_minus, 1.0, tol).rel_err,
    )
    verdict_a = res_a <= tol

    fv = frame.vectors
    gram = k @ k.conj().T
    coeff = fv.conj().T @ fs.T                    # a_i per test vector
    gcoeff = fv.conj().T @ (gram @ fs.T)          # <KK^H f, f_i> per vector
    cross = np.real(coeff * np.conj(gcoeff))      # Re t_i per vector

    def _side(idx: np.ndarray):
        parts = fv[:, idx] @ coeff[idx, :]
        lhs = np.sum(np.abs(parts) ** 2, axis=0)
        rhs = np.sum(cross[idx, :], axis=0)
        rel = np.abs(lhs - rhs) / (1.0 + np.abs(lhs) + np.abs(rhs))
        return float(rel.max())

    res_b = _side(subset.as_array())
    res_c = _side(subset.complement(n).as_array())
    return EquivalenceReport.collect(
        [
            ("unit-extrema", verdict_a, res_a),
            ("split-identity", res_b <= tol, res_b),
            ("split-identity-complement", res_c <= tol, res_c),
        ]
    )


def check_orthogonal_split_equivalence(
    frame: KFrame, k, subset: IndexSubset, f, tol: float | None = None
) -> EquivalenceReport:
    """Four per-vector conditions that hold or fail together.

    (a) ||S_J f||^2 = sum_{i in J} <f,f_i> conj<KK^H f,f_i>   (complex
        equality: matching real parts and vanishing imaginary part);
    (b) the same over J^c;
    (c) S_J f is orthogonal to S_{J^c} f;
    (d) <f, S_{J^c} S_J f> = 0 (evaluated through the partial operators).
    Each condition is computed along its own path; the report records
    whether all four verdicts coincide.
    """
    tol = resolve_tol(tol)
    k = _require_parseval(frame, k, tol)
    n = frame.count
    subset.validate_for(n)
    f = as_cvec(f, frame.dim, "f")
    fv = frame.vectors
    gram = k @ k.conj().T
    a = fv.conj().T @ f
    b = fv.conj().T @ (gram @ f)
    j = subset.as_array()
    jc = subset.complement(n).as_array()
    sj = fv[:, j] @ a[j]
    sjc = fv[:, jc] @ a[jc]

    rep_a = IdentityReport.compare(_sqnorm(sj), np.sum(a[j] * np.conj(b[j])), tol)
    rep_b = IdentityReport.compare(_sqnorm(sjc), np.sum(a[jc] * np.conj(b[jc])), tol)

    z_c = np.vdot(sjc, sj)                        # <S_J f, S_{J^c} f>
    res_c = abs(z_c) / (1.0 + float(np.linalg.norm(sj) * np.linalg.norm(sjc)))

    wvec = partial_frame_operator(frame, subset.complement(n)) @ (
        partial_frame_operator(frame, subset) @ f
    )
    z_d = np.vdot(wvec, f)                        # <f, S_{J^c} S_J f>
    res_d = abs(z_d) / (1.0 + float(np.linalg.norm(f) * np.linalg.norm(wvec)))

    return EquivalenceReport.collect(
        [
            ("coefficient-split", rep_a.passed, rep_a.rel_err),
            ("coefficient-split-complement", rep_b.passed, rep_b.rel_err),
            ("orthogonal-parts", res_c <= tol, res_c),
            ("operator-cross-term", res_d <= tol, res_d),
        ]
    )
