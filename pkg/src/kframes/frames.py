"""Finite K-frames: synthesis/analysis, frame operators, optimal bounds.

A family F = (f_1, ..., f_n) in C^d is a K-frame for an operator K on C^d
when there are constants 0 < A <= B with

    A * ||K^H f||^2  <=  sum_i |<f, f_i>|^2  <=  B * ||f||^2   for all f.

In finite dimensions this is equivalent to range(K) being contained in
range(T_F), where T_F is the synthesis operator (the d x n matrix whose
columns are the frame vectors).  The optimal constants are

    B = ||S_F||          (S_F = T_F T_F^H, the frame operator)
    A = ||T_F^+ K||^-2   (T_F^+ the pseudoinverse),

the lower one coming from the reduced solution of T_F X = K.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import inf

import numpy as np

from .defaults import resolve_tol
from .errors import BadSubset, DimensionMismatch
from .linalg import as_cmat, as_cvec, op_norm, pinv

__all__ = [
    "KFrame",
    "IndexSubset",
    "KFrameBounds",
    "DualPair",
    "synthesis",
    "analysis",
    "frame_operator",
    "partial_frame_operator",
    "mixed_operator",
    "reduced_lower_solution",
    "kframe_bounds",
    "is_parseval_kframe",
]


@dataclass(frozen=True, eq=False)
class KFrame:
    """A finite vector family in C^d, stored as the d x n synthesis matrix.

    Column i is the frame vector f_i.  `label` is free-form metadata.
    """

    vectors: np.ndarray
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "vectors", as_cmat(self.vectors, "frame vectors"))

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @property
    def count(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class IndexSubset:
    """A strictly increasing tuple of zero-based frame indices."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(i < 0 for i in idx):
            raise BadSubset(f"negative index in {idx}")
        if len(set(idx)) != len(idx):
            raise BadSubset(f"duplicate index in {idx}")
        object.__setattr__(self, "indices", tuple(sorted(idx)))

    @classmethod
    def of(cls, *indices: int) -> "IndexSubset":
        return cls(tuple(indices))

    @classmethod
    def empty(cls) -> "IndexSubset":
        return cls(())

    @classmethod
    def full(cls, n: int) -> "IndexSubset":
        return cls(tuple(range(n)))

    def validate_for(self, n: int) -> "IndexSubset":
        if self.indices and self.indices[-1] >= n:
            raise BadSubset(f"index {self.indices[-1]} out of range for count {n}")
        return self

    def complement(self, n: int) -> "IndexSubset":
        self.validate_for(n)
        inside = set(self.indices)
        return IndexSubset(tuple(i for i in range(n) if i not in inside))

    def intersects(self, other: "IndexSubset") -> bool:
        return bool(set(self.indices) & set(other.indices))

    def union(self, other: "IndexSubset") -> "IndexSubset":
        return IndexSubset(tuple(set(self.indices) | set(other.indices)))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=np.intp)

    def __len__(self) -> int:
        return len(self.indices)


def _operator_for(frame: KFrame, k) -> np.ndarray:
    k = as_cmat(k, "operator K")
    if k.shape != (frame.dim, frame.dim):
        raise DimensionMismatch(
            f"operator shape {k.shape} does not match frame dim {frame.dim}"
        )
    return k


def synthesis(frame: KFrame, coeffs) -> np.ndarray:
    """T_F c = sum_i c_i f_i."""
    c = as_cvec(coeffs, frame.count, "coefficients")
    return frame.vectors @ c


def analysis(frame: KFrame, f) -> np.ndarray:
    """T_F^H f = (<f, f_i>)_i."""
    v = as_cvec(f, frame.dim, "f")
    return frame.vectors.conj().T @ v


def frame_operator(frame: KFrame) -> np.ndarray:
    """S_F = T_F T_F^H = sum_i f_i f_i^H (Hermitian PSD)."""
    t = frame.vectors
    return t @ t.conj().T


def partial_frame_operator(frame: KFrame, subset: IndexSubset) -> np.ndarray:
    """S_J = sum_{i in J} f_i f_i^H; the empty subset gives the zero matrix."""
    subset.validate_for(frame.count)
    tj = frame.vectors[:, subset.as_array()]
    if tj.shape[1] == 0:
        return np.zeros((frame.dim, frame.dim), dtype=np.complex128)
    return tj @ tj.conj().T


@dataclass(frozen=True, eq=False)
class DualPair:
    """A frame together with a candidate K-dual family G.

    G is d x n; the pair reproduces K when T_F G^H = K, i.e.
    K f = sum_i <f, g_i> f_i for every f.  `residual` records
    ||T_F G^H - K|| and is computed at construction, so corrupted duals can
    be represented (the checkers will then fail honestly).
    """

    frame: KFrame
    dual_vectors: np.ndarray
    operator: np.ndarray
    residual: float = field(init=False)

    def __post_init__(self):
        g = as_cmat(self.dual_vectors, "dual vectors")
        if g.shape != self.frame.vectors.shape:
            raise DimensionMismatch(
                f"dual shape {g.shape} does not match frame {self.frame.vectors.shape}"
            )
        k = _operator_for(self.frame, self.operator)
        object.__setattr__(self, "dual_vectors", g)
        object.__setattr__(self, "operator", k)
        res = op_norm(self.frame.vectors @ g.conj().T - k)
        object.__setattr__(self, "residual", float(res))

    def is_valid(self, tol: float | None = None) -> bool:
        tol = resolve_tol(tol)
        return self.residual <= tol * (1.0 + op_norm(self.operator))


def mixed_operator(pair: DualPair, subset: IndexSubset) -> np.ndarray:
    """M_J = sum_{i in J} f_i g_i^H.  M_J + M_{J^c} = T_F G^H (= K for true
    duals)."""
    subset.validate_for(pair.frame.count)
    idx = subset.as_array()
    fj = pair.frame.vectors[:, idx]
    gj = pair.dual_vectors[:, idx]
    if idx.size == 0:
        return np.zeros((pair.frame.dim, pair.frame.dim), dtype=np.complex128)
    return fj @ gj.conj().T


def reduced_lower_solution(frame: KFrame, k) -> np.ndarray:
    """T_F^+ K: the reduced solution of T_F X = K (shared code path for the
    optimal lower bound and the canonical dual)."""
    k = _operator_for(frame, k)
    return pinv(frame.vectors) @ k


@dataclass(frozen=True)
class KFrameBounds:
    """Optimal K-frame bounds.

    lower_opt is the largest valid A (inf when K = 0, since every positive
    constant works; 0.0 when no positive constant exists), upper_opt the
    smallest valid B = ||S_F||.  range_residual is ||(I - T_F T_F^+) K||,
    the quantity behind the is_kframe verdict.
    """

    lower_opt: float
    upper_opt: float
    is_kframe: bool
    range_residual: float


def kframe_bounds(frame: KFrame, k, tol: float | None = None) -> KFrameBounds:
    """Optimal bounds and the range-inclusion verdict for (F, K)."""
    k = _operator_for(frame, k)
    tol = resolve_tol(tol)
    t = frame.vectors
    upper = op_norm(frame_operator(frame))
    norm_k = op_norm(k)
    x = reduced_lower_solution(frame, k)
    range_residual = op_norm(k - t @ x)
    is_k = range_residual <= tol * (1.0 + norm_k)
    if norm_k == 0.0:
        return KFrameBounds(inf, upper, True, range_residual)
    if not is_k:
        return KFrameBounds(0.0, upper, False, range_residual)
    lower = 1.0 / op_norm(x) ** 2
    return KFrameBounds(lower, upper, True, range_residual)


def is_parseval_kframe(frame: KFrame, k, tol: float | None = None):
    """Whether S_F = K K^H within tolerance; returns (verdict, residual).

    The residual is ||S_F - KK^H|| and passes when it is at most
    tol * (1 + ||KK^H||).
    """
    k = _operator_for(frame, k)
    tol = resolve_tol(tol)
    gram = k @ k.conj().T
    residual = op_norm(frame_operator(frame) - gram)
    return residual <= tol * (1.0 + op_norm(gram)), float(residual)
