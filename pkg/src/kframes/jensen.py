"""Jensen-type operator inequalities for unital positive map families.

A family (Phi_1, ..., Phi_m) of positive linear maps is *unital* when
sum_i Phi_i(I) = I.  Two inequality templates are checked in the Loewner
order, for Hermitian operators A_i with spectra in the relevant interval:

  (J1) h( sum_i Phi_i(A_i) ) <= sum_i Phi_i( h(A_i) )
       for operator convex h;
  (J2) h( (m + M) I - sum_i Phi_i(A_i) )
          <= (h(m) + h(M)) I - sum_i Phi_i( h(A_i) )
       for (merely) convex continuous h on [m, M] containing all spectra.

Specializing to the two-member family {Id/2, Id/2} applied to the partial
frame operators (S_J, S_{J^c}) of a Parseval K-frame (so the average is
S_F/2 = KK^H/2, spectra inside [0, ||K||^2]) yields the frame-split
inequalities, including the per-vector energy sandwich

  1/2 ||KK^H f||^2 <= ||S_J f||^2 + ||S_{J^c} f||^2
                   <= 2 ||K||^2 ||K^H f||^2 - 1/2 ||KK^H f||^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .defaults import resolve_tol
from .errors import (
    DimensionMismatch,
    DomainViolation,
    NotConvex,
    NotOperatorConvex,
    NotUnital,
    SpectrumOutOfBracket,
    ZeroOperator,
)
from .frames import IndexSubset, KFrame, partial_frame_operator
from .functions import ScalarFunctionSpec
from .identities import _require_parseval, _sqnorm
from .linalg import LoewnerReport, as_cmat, as_cvec, herm_eig, loewner_le, matfunc, op_norm
from .reports import InequalityReport

__all__ = [
    "PositiveMapFamily",
    "check_jensen_operator_convex",
    "check_jensen_convex_bracket",
    "check_split_jensen",
    "check_split_jensen_reflected",
    "check_energy_sandwich",
]


@dataclass(frozen=True, eq=False)
class PositiveMapFamily:
    """A finite family of positive linear maps on matrices.

    Each member is either a nonnegative weight w (the map A -> w*A) or a
    congruence matrix V of shape (input_dim, output_dim) (the map
    A -> V^H A V).  The family is unital when the members applied to the
    identity sum to the identity.
    """

    maps: tuple
    input_dim: int
    output_dim: int

    @classmethod
    def from_weights(cls, weights, dim: int) -> "PositiveMapFamily":
        ws = [float(w) for w in weights]
        if not ws:
            raise DimensionMismatch("need at least one map")
        if any(w < 0 for w in ws):
            raise ValueError(f"weights must be nonnegative, got {ws}")
        return cls(maps=tuple(ws), input_dim=int(dim), output_dim=int(dim))

    @classmethod
    def from_congruences(cls, matrices) -> "PositiveMapFamily":
        vs = [as_cmat(v, "congruence matrix") for v in matrices]
        if not vs:
            raise DimensionMismatch("need at least one map")
        din, dout = vs[0].shape
        for v in vs:
            if v.shape != (din, dout):
                raise DimensionMismatch(
                    f"congruence shapes disagree: {v.shape} vs {(din, dout)}"
                )
        return cls(maps=tuple(vs), input_dim=din, output_dim=dout)

    def __len__(self) -> int:
        return len(self.maps)

    def apply(self, index: int, a: np.ndarray) -> np.ndarray:
        m = self.maps[index]
        if isinstance(m, float):
            return m * a
        return m.conj().T @ a @ m

    def apply_sum(self, operators) -> np.ndarray:
        total = np.zeros((self.output_dim, self.output_dim), dtype=np.complex128)
        for i, a in enumerate(operators):
            total = total + self.apply(i, a)
        return total

    def unitality_residual(self) -> float:
        eye_in = np.eye(self.input_dim, dtype=np.complex128)
        total = self.apply_sum([eye_in] * len(self.maps))
        return op_norm(total - np.eye(self.output_dim))

    def require_unital(self, tol: float) -> None:
        residual = self.unitality_residual()
        if residual > tol * (1.0 + 1.0):
            raise NotUnital(f"sum Phi_i(I) deviates from I by {residual:.3e}")


def _validated_operators(operators, family: PositiveMapFamily):
    ops = [as_cmat(a, f"A[{i}]") for i, a in enumerate(operators)]
    if len(ops) != len(family):
        raise DimensionMismatch(
            f"{len(ops)} operators for {len(family)} maps"
        )
    for a in ops:
        if a.shape != (family.input_dim, family.input_dim):
            raise DimensionMismatch(
                f"operator shape {a.shape} vs input dim {family.input_dim}"
            )
    return ops


def check_jensen_operator_convex(
    operators, family: PositiveMapFamily, h: ScalarFunctionSpec, tol: float | None = None
) -> LoewnerReport:
    """Check h(sum Phi_i(A_i)) <= sum Phi_i(h(A_i)) for operator convex h."""
    tol = resolve_tol(tol)
    if not h.operator_convex:
        raise NotOperatorConvex(f"{h.name} is not flagged operator convex")
    family.require_unital(tol)
    ops = _validated_operators(operators, family)
    mean = family.apply_sum(ops)
    lhs = matfunc(h, mean, tol)
    rhs = family.apply_sum([matfunc(h, a, tol) for a in ops])
    return loewner_le(lhs, rhs, tol)


def check_jensen_convex_bracket(
    operators,
    family: PositiveMapFamily,
    h: ScalarFunctionSpec,
    m: float,
    big_m: float,
    tol: float | None = None,
) -> LoewnerReport:
    """Check the reflected bound for merely convex h on [m, M]:

    h((m+M) I - sum Phi_i(A_i)) <= (h(m)+h(M)) I - sum Phi_i(h(A_i)).
    All spectra must lie inside [m, M] (within slack); the bracket must sit
    inside h's domain.
    """
    tol = resolve_tol(tol)
    if not h.convex:
        raise NotConvex(f"{h.name} is not flagged convex")
    m = float(m)
    big_m = float(big_m)
    if not m < big_m:
        raise SpectrumOutOfBracket(f"need m < M, got [{m}, {big_m}]")
    lo, hi = h.domain
    slack = tol * (1.0 + max(abs(m), abs(big_m)))
    if m < lo - slack or big_m > hi + slack:
        raise DomainViolation(
            f"[{m}, {big_m}] escapes the domain [{lo}, {hi}] of {h.name}"
        )
    family.require_unital(tol)
    ops = _validated_operators(operators, family)
    for i, a in enumerate(ops):
        vals = herm_eig(a, tol).values
        bound_slack = tol * (1.0 + float(np.abs(vals).max()))
        if vals.min() < m - bound_slack or vals.max() > big_m + bound_slack:
            raise SpectrumOutOfBracket(
                f"A[{i}] spectrum [{vals.min():.6g}, {vals.max():.6g}] "
                f"escapes [{m}, {big_m}]"
            )
    eye_out = np.eye(family.output_dim, dtype=np.complex128)
    lhs = matfunc(h, (m + big_m) * eye_out - family.apply_sum(ops), tol)
    hm = float(h(np.array([m]))[0])
    hbm = float(h(np.array([big_m]))[0])
    rhs = (hm + hbm) * eye_out - family.apply_sum([matfunc(h, a, tol) for a in ops])
    return loewner_le(lhs, rhs, tol)


def _split_parts(frame: KFrame, k, subset: IndexSubset, tol: float):
    k = _require_parseval(frame, k, tol)
    subset.validate_for(frame.count)
    s_j = partial_frame_operator(frame, subset)
    s_jc = partial_frame_operator(frame, subset.complement(frame.count))
    return k, s_j, s_jc


def check_split_jensen(
    frame: KFrame, k, subset: IndexSubset, h: ScalarFunctionSpec, tol: float | None = None
) -> LoewnerReport:
    """Frame split of (J1): h(KK^H/2) <= (h(S_J) + h(S_{J^c}))/2.

    Runs the generic operator-convex check on (S_J, S_{J^c}) with the family
    {Id/2, Id/2}; for a Parseval K-frame the averaged operator is exactly
    S_F/2 = KK^H/2.  h must be defined on [0, ||K||^2].
    """
    tol = resolve_tol(tol)
    k, s_j, s_jc = _split_parts(frame, k, subset, tol)
    lo, hi = h.domain
    top = op_norm(k) ** 2
    slack = tol * (1.0 + top)
    if lo > 0.0 + slack or hi < top - slack:
        raise DomainViolation(
            f"domain [{lo}, {hi}] of {h.name} does not cover [0, {top:.6g}]"
        )
    family = PositiveMapFamily.from_weights([0.5, 0.5], frame.dim)
    return check_jensen_operator_convex([s_j, s_jc], family, h, tol)


def check_split_jensen_reflected(
    frame: KFrame, k, subset: IndexSubset, h: ScalarFunctionSpec, tol: float | None = None
) -> LoewnerReport:
    """Frame split of (J2) with the bracket [0, ||K||^2]:

    h(||K||^2 I - KK^H/2) <= (h(0) + h(||K||^2)) I - (h(S_J)+h(S_{J^c}))/2,
    for convex h defined on [0, ||K||^2] (scalar h at the endpoints).
    Delegates to the generic bracket check on (S_J, S_{J^c}).
    """
    tol = resolve_tol(tol)
    k, s_j, s_jc = _split_parts(frame, k, subset, tol)
    top = op_norm(k) ** 2
    if top <= 0.0:
        raise ZeroOperator("K is zero; the bracket [0, ||K||^2] is degenerate")
    family = PositiveMapFamily.from_weights([0.5, 0.5], frame.dim)
    return check_jensen_convex_bracket([s_j, s_jc], family, h, 0.0, top, tol)


def check_energy_sandwich(
    frame: KFrame, k, subset: IndexSubset, f, tol: float | None = None
):
    """Per-vector two-sided bound on the split energy of a Parseval K-frame:

    1/2 ||KK^H f||^2 <= ||S_J f||^2 + ||S_{J^c} f||^2
                     <= 2 ||K||^2 ||K^H f||^2 - 1/2 ||KK^H f||^2.
    The middle term is evaluated from coefficient sums, the outer terms from
    operator norms.  Returns (lower InequalityReport, upper InequalityReport).
    """
    tol = resolve_tol(tol)
    k = _require_parseval(frame, k, tol)
    subset.validate_for(frame.count)
    f = as_cvec(f, frame.dim, "f")
    fv = frame.vectors
    a = fv.conj().T @ f
    j = subset.as_array()
    jc = subset.complement(frame.count).as_array()
    middle = _sqnorm(fv[:, j] @ a[j]) + _sqnorm(fv[:, jc] @ a[jc])
    kstar_f = k.conj().T @ f
    gram_f = k @ kstar_f
    low = 0.5 * _sqnorm(gram_f)
    high = 2.0 * op_norm(k) ** 2 * _sqnorm(kstar_f) - 0.5 * _sqnorm(gram_f)
    return (
        InequalityReport.compare(low, middle, tol),
        InequalityReport.compare(middle, high, tol),
    )
