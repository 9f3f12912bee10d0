"""Range inclusion, factorization, and canonical K-duals.

For operators L1, L2 on C^d the following are equivalent:

  (i)   range(L1) is contained in range(L2);
  (ii)  L1 L1^H <= lambda^2 L2 L2^H for some lambda >= 0;
  (iii) L1 = L2 X for some bounded X.

Among the factors X there is a unique *reduced* one, X = L2^+ L1, with

  (a) ||X||^2 = inf { alpha > 0 : L1 L1^H <= alpha L2 L2^H },
  (b) null(X) = null(L1),
  (c) range(X) inside range(L2^H).

Applied to L1 = K and L2 = T_F this produces the canonical coefficient
operator X_F (so T_F X_F = K), the optimal lower frame bound ||X_F||^-2,
and the canonical K-dual family G = X_F^H.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .defaults import resolve_tol
from .errors import NotKFrame, NotSolvable, DimensionMismatch
from .frames import DualPair, KFrame, kframe_bounds, reduced_lower_solution
from .linalg import as_cmat, loewner_le, null_projector, op_norm, pinv

__all__ = [
    "DouglasSolution",
    "DouglasInfimumReport",
    "douglas_solve",
    "douglas_infimum_check",
    "canonical_xf",
    "canonical_kdual",
    "parametrized_kdual",
]


@dataclass(frozen=True, eq=False)
class DouglasSolution:
    """Reduced factor X of L1 = L2 X plus its certification numbers.

    factor_residual = ||L2 X - L1||, norm_sq = ||X||^2,
    kernel_match = gap between the null-space projectors of L1 and X,
    range_residual = ||(I - L2^+ L2) X|| with range_ok its tolerance verdict.
    """

    x: np.ndarray
    factor_residual: float
    norm_sq: float
    kernel_match: float
    range_residual: float
    range_ok: bool


def douglas_solve(l1, l2, tol: float | None = None) -> DouglasSolution:
    """Compute the reduced solution X = L2^+ L1 of L1 = L2 X.

    Raises NotSolvable when the range-inclusion test
    ||(I - L2 L2^+) L1|| <= tol * (1 + ||L1||) fails.
    """
    l1 = as_cmat(l1, "L1")
    l2 = as_cmat(l2, "L2")
    if l1.shape[0] != l2.shape[0]:
        raise DimensionMismatch(f"L1 rows {l1.shape[0]} vs L2 rows {l2.shape[0]}")
    tol = resolve_tol(tol)
    l2p = pinv(l2)
    x = l2p @ l1
    inclusion = op_norm(l1 - l2 @ x)
    if inclusion > tol * (1.0 + op_norm(l1)):
        raise NotSolvable(
            f"range inclusion residual {inclusion:.3e} exceeds "
            f"{tol:.1e} * (1 + ||L1||)"
        )
    factor_residual = float(inclusion)
    norm_x = op_norm(x)
    kernel_match = float(op_norm(null_projector(l1) - null_projector(x)))
    range_residual = float(op_norm(x - l2p @ (l2 @ x)))
    range_ok = range_residual <= tol * (1.0 + norm_x)
    return DouglasSolution(
        x=x,
        factor_residual=factor_residual,
        norm_sq=float(norm_x**2),
        kernel_match=kernel_match,
        range_residual=range_residual,
        range_ok=range_ok,
    )


@dataclass(frozen=True)
class DouglasInfimumReport:
    """Two-sided certificate that ||X||^2 is the optimal majorization constant.

    upper_margin: min eigenvalue of ||X||^2 L2 L2^H - L1 L1^H (must clear
    -tol*scale), shaved_margin: the same at alpha = ||X||^2 (1 - delta)
    (must dip below, proving nothing smaller works).
    """

    norm_sq: float
    delta: float
    upper_margin: float
    shaved_margin: float
    scale: float
    passed: bool


def douglas_infimum_check(
    l1, l2, x, tol: float | None = None, delta: float = 1e-6
) -> DouglasInfimumReport:
    """Certify that L1 L1^H <= alpha L2 L2^H holds at alpha = ||X||^2 and
    fails at alpha = ||X||^2 (1 - delta)."""
    l1 = as_cmat(l1, "L1")
    l2 = as_cmat(l2, "L2")
    x = as_cmat(x, "X")
    tol = resolve_tol(tol)
    a1 = l1 @ l1.conj().T
    a2 = l2 @ l2.conj().T
    norm_sq = op_norm(x) ** 2
    upper = loewner_le(a1, norm_sq * a2, tol)
    if norm_sq == 0.0:
        # L1 = 0: the infimum over alpha > 0 is 0 and cannot be shaved.
        return DouglasInfimumReport(
            norm_sq=0.0,
            delta=delta,
            upper_margin=upper.min_eig,
            shaved_margin=upper.min_eig,
            scale=upper.scale,
            passed=upper.passed,
        )
    shaved = loewner_le(a1, norm_sq * (1.0 - delta) * a2, tol)
    return DouglasInfimumReport(
        norm_sq=float(norm_sq),
        delta=delta,
        upper_margin=upper.min_eig,
        shaved_margin=shaved.min_eig,
        scale=upper.scale,
        passed=bool(upper.passed and not shaved.passed),
    )


def canonical_xf(frame: KFrame, k, tol: float | None = None) -> np.ndarray:
    """The canonical coefficient operator X_F = T_F^+ K (n x d).

    ||X_F||^-2 equals the optimal lower bound from kframe_bounds by
    construction (identical code path).  Raises NotKFrame when range(K)
    escapes range(T_F).
    """
    tol = resolve_tol(tol)
    bounds = kframe_bounds(frame, k, tol)
    if not bounds.is_kframe:
        raise NotKFrame(
            f"range residual {bounds.range_residual:.3e} exceeds tolerance"
        )
    return reduced_lower_solution(frame, k)


def canonical_kdual(frame: KFrame, k, tol: float | None = None) -> DualPair:
    """Canonical K-dual family: g_i = column i of X_F^H, so T_F G^H = K."""
    x = canonical_xf(frame, k, tol)
    return DualPair(frame=frame, dual_vectors=x.conj().T, operator=k)


def parametrized_kdual(frame: KFrame, k, z, tol: float | None = None) -> DualPair:
    """K-dual from the affine family X = X_F + (I - T_F^+ T_F) Z.

    Every Z (n x d) gives a valid K-dual; Z = 0 recovers the canonical one,
    and for frames with trivial analysis kernel (n = rank T_F) the family
    collapses to the canonical dual.
    """
    z = as_cmat(z, "Z")
    if z.shape != (frame.count, frame.dim):
        raise DimensionMismatch(
            f"Z shape {z.shape}, expected {(frame.count, frame.dim)}"
        )
    x0 = canonical_xf(frame, k, tol)
    t = frame.vectors
    tp = pinv(t)
    x = x0 + (z - tp @ (t @ z))
    return DualPair(frame=frame, dual_vectors=x.conj().T, operator=k)
