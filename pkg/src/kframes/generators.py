"""Seeded random instance generators.

All randomness flows through numpy's PCG64 Generator.  Every draw site
derives its own bit stream from SeedSequence((seed, trial, stream-tag)), so
generation is reproducible seed-for-seed, independent of call order, and
identical whether trials are produced serially or in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadConfig
from .frames import KFrame
from .linalg import as_cmat, range_basis

__all__ = [
    "GenConfig",
    "SUBSET_POLICIES",
    "stream_rng",
    "random_unitary",
    "complex_gaussian",
    "gen_operator",
    "gen_kframe",
    "gen_parseval_kframe",
]

SUBSET_POLICIES = ("random", "exhaustive-small")

_MAX_SEED = 2**64

# Stream tags keep independent draw sites on independent substreams.
STREAM_OPERATOR = 0
STREAM_KFRAME = 1
STREAM_PARSEVAL = 2
STREAM_DUAL = 3
STREAM_VECTORS = 4
STREAM_SUBSETS = 5
STREAM_WEIGHTS = 6
STREAM_JENSEN = 7
STREAM_DOUGLAS = 8
STREAM_FAULT = 9


@dataclass(frozen=True)
class GenConfig:
    """Shared knobs for generators and campaigns.

    seed: master seed (uint64); dim/count: ambient dimension and frame size;
    k_rank: rank of the generated operator (1 <= k_rank <= dim);
    trials: number of independent instances; tol: comparison tolerance;
    subset_policy: "random" or "exhaustive-small" (all 2^count subsets,
    count <= 10).
    """

    seed: int
    dim: int
    count: int
    k_rank: int
    trials: int = 1
    tol: float = 1e-9
    subset_policy: str = "random"

    def __post_init__(self):
        if not 0 <= int(self.seed) < _MAX_SEED:
            raise BadConfig(f"seed must fit in uint64, got {self.seed}")
        if self.dim < 1:
            raise BadConfig(f"dim must be >= 1, got {self.dim}")
        if self.count < 1:
            raise BadConfig(f"count must be >= 1, got {self.count}")
        if not 1 <= self.k_rank <= self.dim:
            raise BadConfig(
                f"k_rank must lie in [1, dim={self.dim}], got {self.k_rank}"
            )
        if self.trials < 1:
            raise BadConfig(f"trials must be >= 1, got {self.trials}")
        if not self.tol > 0:
            raise BadConfig(f"tol must be positive, got {self.tol}")
        if self.subset_policy not in SUBSET_POLICIES:
            raise BadConfig(
                f"subset_policy must be one of {SUBSET_POLICIES}, "
                f"got {self.subset_policy!r}"
            )
        if self.subset_policy == "exhaustive-small" and self.count > 10:
            raise BadConfig(
                f"exhaustive-small enumerates 2^count subsets; "
                f"count={self.count} > 10"
            )


def stream_rng(seed: int, trial: int = 0, stream: int = 0) -> np.random.Generator:
    """Deterministic per-(seed, trial, stream) generator.

    Splitting rule: the SeedSequence entropy is the tuple
    (seed, trial, stream), so distinct trials and draw sites never share a
    stream and aggregation order cannot change the data.
    """
    return np.random.default_rng(np.random.SeedSequence((seed, trial, stream)))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard complex Gaussian entries (unit variance per entry)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-ish random unitary: QR of a complex Gaussian with phase fix."""
    z = complex_gaussian(rng, (n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r).copy()
    d[d == 0] = 1.0
    return q * (d / np.abs(d))


def gen_operator(
    cfg: GenConfig, trial: int = 0, singular_values=None
) -> np.ndarray:
    """Random operator K = U diag(s) V^H of rank k_rank.

    Nonzero singular values are log-uniform in [0.1, 10] unless
    `singular_values` overrides them (length k_rank, positive).
    """
    rng = stream_rng(cfg.seed, trial, STREAM_OPERATOR)
    d = cfg.dim
    u = random_unitary(rng, d)
    v = random_unitary(rng, d)
    if singular_values is None:
        s = 10.0 ** rng.uniform(-1.0, 1.0, size=cfg.k_rank)
    else:
        s = np.asarray(singular_values, dtype=np.float64)
        if s.shape != (cfg.k_rank,) or np.any(s <= 0):
            raise BadConfig(
                f"singular_values must be {cfg.k_rank} positive reals"
            )
    sigma = np.zeros(d)
    sigma[: cfg.k_rank] = s
    return (u * sigma) @ v.conj().T


def gen_kframe(cfg: GenConfig, k, trial: int = 0, label: str | None = None) -> KFrame:
    """Random K-frame: columns span range(K) by construction.

    A basis of range(K) is stacked with complex Gaussian fillers and the
    block is mixed by a random unitary, which preserves the column span, so
    the range-inclusion test holds for every draw.
    """
    k = as_cmat(k, "operator K")
    if k.shape != (cfg.dim, cfg.dim):
        raise BadConfig(f"operator shape {k.shape} does not match dim {cfg.dim}")
    basis = range_basis(k)
    rank = basis.shape[1]
    if cfg.count < rank:
        raise BadConfig(
            f"count={cfg.count} is below rank(K)={rank}; no K-frame exists"
        )
    rng = stream_rng(cfg.seed, trial, STREAM_KFRAME)
    filler = complex_gaussian(rng, (cfg.dim, cfg.count - rank))
    block = np.concatenate([basis, filler], axis=1)
    mixer = random_unitary(rng, cfg.count)
    return KFrame(vectors=block @ mixer, label=label)


def gen_parseval_kframe(
    cfg: GenConfig, k, trial: int = 0, label: str | None = None
) -> KFrame:
    """Random Parseval K-frame: T_F = K W with W the first dim rows of a
    random count x count unitary (so W W^H = I and S_F = K K^H exactly)."""
    k = as_cmat(k, "operator K")
    if k.shape != (cfg.dim, cfg.dim):
        raise BadConfig(f"operator shape {k.shape} does not match dim {cfg.dim}")
    if cfg.count < cfg.dim:
        raise BadConfig(
            f"count={cfg.count} < dim={cfg.dim}: no co-isometry row block exists"
        )
    rng = stream_rng(cfg.seed, trial, STREAM_PARSEVAL)
    w = random_unitary(rng, cfg.count)[: cfg.dim, :]
    return KFrame(vectors=k @ w, label=label)
