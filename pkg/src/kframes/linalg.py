"""Dense complex linear algebra kernel.

Everything downstream funnels through this module: Hermitian
eigendecompositions, SVD, Moore-Penrose pseudoinverses, operator norms,
Loewner-order comparisons, spectral matrix functions, and Rayleigh-quotient
extrema of a Hermitian pencil restricted to a subspace.

Conventions
-----------
* matrices are dense complex128 2-d arrays ("CMat"), vectors 1-d complex128;
* the inner product is <x, y> = y^H x (linear in the first argument);
* Hermitian inputs are validated against ||A - A^H|| <= tol * (1 + ||A||)
  and then symmetrized as (A + A^H)/2 before factorization;
* rank decisions truncate singular values sigma <= rank_tol * sigma_max,
  with rank_tol defaulting to machine-eps * max(rows, cols).

For fixed input bytes every routine here is deterministic (LAPACK paths,
no randomized algorithms).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .defaults import resolve_tol
from .errors import (
    DimensionMismatch,
    DomainViolation,
    NoConvergence,
    NotHermitian,
    SingularDenominator,
)
from .functions import ScalarFunctionSpec

__all__ = [
    "EPS",
    "HermEig",
    "LoewnerReport",
    "as_cmat",
    "as_cvec",
    "herm_eig",
    "svd",
    "svdvals",
    "pinv",
    "op_norm",
    "matrix_rank",
    "range_basis",
    "null_projector",
    "hermitian_part",
    "loewner_le",
    "matfunc",
    "rayleigh_extrema_on_subspace",
]

EPS = float(np.finfo(np.float64).eps)


def as_cmat(a, name: str = "matrix") -> np.ndarray:
    """Validate and return `a` as a dense complex128 matrix.

    Rejects non-2d input, empty axes, and non-finite entries.
    """
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name}: expected a 2-d array, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatch(f"{name}: empty axis in shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: non-finite entries")
    return arr


def as_cvec(v, length: int | None = None, name: str = "vector") -> np.ndarray:
    """Validate and return `v` as a 1-d complex128 vector."""
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size < 1:
        raise DimensionMismatch(f"{name}: expected a non-empty 1-d array")
    if length is not None and arr.size != length:
        raise DimensionMismatch(f"{name}: expected length {length}, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: non-finite entries")
    return arr


def _require_square(a: np.ndarray, name: str) -> None:
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name}: expected square, got {a.shape}")


def hermitian_part(a) -> np.ndarray:
    """(A + A^H)/2."""
    a = as_cmat(a)
    _require_square(a, "hermitian_part")
    return 0.5 * (a + a.conj().T)


def svd(a):
    """Thin SVD: returns (U, sigma, V) with A = U @ diag(sigma) @ V^H.

    sigma is real, descending; U and V have orthonormal columns.
    """
    a = as_cmat(a)
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"SVD failed to converge: {exc}") from exc
    return u, s, vh.conj().T


def svdvals(a) -> np.ndarray:
    """Singular values only, descending."""
    a = as_cmat(a)
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"SVD failed to converge: {exc}") from exc


def op_norm(a) -> float:
    """Operator (spectral) norm = largest singular value."""
    return float(svdvals(a)[0])


@dataclass(frozen=True)
class HermEig:
    """Eigendecomposition of a Hermitian matrix.

    values: real eigenvalues, ascending.
    vectors: matching orthonormal eigenvector columns.
    """

    values: np.ndarray
    vectors: np.ndarray


def herm_eig(a, tol: float | None = None) -> HermEig:
    """Eigendecomposition of a (tolerantly) Hermitian matrix.

    Raises NotHermitian when ||A - A^H|| > tol * (1 + ||A||); otherwise the
    input is symmetrized before factorization so roundoff-level asymmetry
    never leaks into the spectrum.
    """
    a = as_cmat(a)
    _require_square(a, "herm_eig")
    tol = resolve_tol(tol)
    norm_a = op_norm(a)
    asym = op_norm(a - a.conj().T)
    if asym > tol * (1.0 + norm_a):
        raise NotHermitian(
            f"asymmetry {asym:.3e} exceeds {tol:.1e} * (1 + {norm_a:.3e})"
        )
    h = 0.5 * (a + a.conj().T)
    try:
        values, vectors = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigensolver failed to converge: {exc}") from exc
    return HermEig(values=values, vectors=vectors)


def _rank_cutoff(shape, s: np.ndarray, rank_tol: float | None) -> float:
    if rank_tol is None:
        rank_tol = EPS * max(shape)
    return rank_tol * (float(s[0]) if s.size else 0.0)


def pinv(a, rank_tol: float | None = None) -> np.ndarray:
    """Moore-Penrose pseudoinverse via SVD truncation.

    Singular values sigma <= rank_tol * sigma_max are treated as zero;
    rank_tol defaults to machine-eps * max(rows, cols).
    """
    a = as_cmat(a)
    u, s, v = svd(a)
    cutoff = _rank_cutoff(a.shape, s, rank_tol)
    inv = np.zeros_like(s)
    keep = s > cutoff
    inv[keep] = 1.0 / s[keep]
    return (v * inv) @ u.conj().T


def matrix_rank(a, rank_tol: float | None = None) -> int:
    """Numerical rank under the shared truncation rule."""
    a = as_cmat(a)
    s = svdvals(a)
    return int(np.count_nonzero(s > _rank_cutoff(a.shape, s, rank_tol)))


def range_basis(a, rank_tol: float | None = None) -> np.ndarray:
    """Orthonormal basis (columns) of range(A); shape (rows, rank)."""
    a = as_cmat(a)
    u, s, _ = svd(a)
    keep = s > _rank_cutoff(a.shape, s, rank_tol)
    return u[:, keep]


def null_projector(a, rank_tol: float | None = None) -> np.ndarray:
    """Orthogonal projector onto null(A); shape (cols, cols)."""
    a = as_cmat(a)
    _, s, v = svd(a)
    keep = s > _rank_cutoff(a.shape, s, rank_tol)
    vr = v[:, keep]
    return np.eye(a.shape[1], dtype=np.complex128) - vr @ vr.conj().T


@dataclass(frozen=True)
class LoewnerReport:
    """Outcome of the one-sided comparison A <= B in the Loewner order.

    min_eig is the smallest eigenvalue of B - A; the comparison passes when
    min_eig >= -tol * scale with scale = 1 + ||A|| + ||B||.
    """

    min_eig: float
    scale: float
    passed: bool


def loewner_le(a, b, tol: float | None = None) -> LoewnerReport:
    """Check A <= B (Loewner order) for Hermitian A, B."""
    a = as_cmat(a, "A")
    b = as_cmat(b, "B")
    _require_square(a, "A")
    if a.shape != b.shape:
        raise DimensionMismatch(f"A {a.shape} vs B {b.shape}")
    tol = resolve_tol(tol)
    norm_a = op_norm(a)
    norm_b = op_norm(b)
    if op_norm(a - a.conj().T) > tol * (1.0 + norm_a):
        raise NotHermitian("A is not Hermitian within tolerance")
    if op_norm(b - b.conj().T) > tol * (1.0 + norm_b):
        raise NotHermitian("B is not Hermitian within tolerance")
    diff = hermitian_part(b - a)
    try:
        min_eig = float(np.linalg.eigvalsh(diff)[0])
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigensolver failed to converge: {exc}") from exc
    scale = 1.0 + norm_a + norm_b
    return LoewnerReport(min_eig=min_eig, scale=scale, passed=min_eig >= -tol * scale)


def matfunc(h: ScalarFunctionSpec, a, tol: float | None = None) -> np.ndarray:
    """Spectral matrix function h(A) = V diag(h(lambda)) V^H for Hermitian A.

    Eigenvalues must lie in h's domain up to a slack of tol * (1 + ||A||);
    values inside the slack are clamped onto the interval, anything further
    out raises DomainViolation.
    """
    tol = resolve_tol(tol)
    eig = herm_eig(a, tol)
    lo, hi = h.domain
    vals = eig.values
    scale = 1.0 + float(np.abs(vals).max())
    slack = tol * scale
    if vals.min() < lo - slack or vals.max() > hi + slack:
        raise DomainViolation(
            f"spectrum [{vals.min():.6g}, {vals.max():.6g}] escapes domain "
            f"[{lo:.6g}, {hi:.6g}] of {h.name} beyond slack {slack:.3e}"
        )
    clamped = np.clip(vals, lo, hi)
    w = h(clamped)
    m = (eig.vectors * w) @ eig.vectors.conj().T
    return 0.5 * (m + m.conj().T)


def rayleigh_extrema_on_subspace(q, d, w, tol: float | None = None):
    """Extrema of <Qx,x>/<Dx,x> over the column span of W.

    Q and D are Hermitian, D positive semidefinite, and W holds orthonormal
    columns spanning the subspace.  The compressed pencil (W^H Q W, W^H D W)
    must have a positive definite denominator; otherwise SingularDenominator
    is raised.  Returns (minimum, maximum) generalized eigenvalues.
    """
    q = as_cmat(q, "Q")
    d = as_cmat(d, "D")
    w = as_cmat(w, "W")
    _require_square(q, "Q")
    if q.shape != d.shape:
        raise DimensionMismatch(f"Q {q.shape} vs D {d.shape}")
    if w.shape[0] != q.shape[0]:
        raise DimensionMismatch(f"W rows {w.shape[0]} vs Q dim {q.shape[0]}")
    tol = resolve_tol(tol)
    if op_norm(q - q.conj().T) > tol * (1.0 + op_norm(q)):
        raise NotHermitian("Q is not Hermitian within tolerance")
    if op_norm(d - d.conj().T) > tol * (1.0 + op_norm(d)):
        raise NotHermitian("D is not Hermitian within tolerance")
    gram = w.conj().T @ w
    if op_norm(gram - np.eye(w.shape[1])) > 1e-8 * max(1, w.shape[1]):
        raise ValueError("W must have orthonormal columns")
    qw = hermitian_part(w.conj().T @ q @ w)
    dw = hermitian_part(w.conj().T @ d @ w)
    dmin = float(np.linalg.eigvalsh(dw)[0])
    if dmin <= tol * (1.0 + op_norm(dw)):
        raise SingularDenominator(
            f"restricted denominator has min eigenvalue {dmin:.3e}"
        )
    try:
        vals = scipy.linalg.eigh(qw, dw, eigvals_only=True)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - tiny pencils
        raise NoConvergence(f"generalized eigensolver failed: {exc}") from exc
    return float(vals[0]), float(vals[-1])
