"""Catalog of scalar functions used to build spectral matrix functions.

Each entry records the real interval on which the function is defined and
two convexity flags.  `operator_convex` marks functions h for which
h((A+B)/2) <= (h(A)+h(B))/2 holds in the Loewner order for Hermitian A, B
with spectra in the domain; that property is strictly stronger than scalar
convexity and every flagged entry here is a classical example (squares,
powers x^r with 1 <= r <= 2, x*log(x), -sqrt(x), affine maps).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "ScalarFunctionSpec",
    "square",
    "power",
    "xlogx",
    "negative_sqrt",
    "affine",
    "identity_fn",
    "from_table",
    "operator_convex_catalog",
    "convex_catalog",
]

_INF = math.inf


@dataclass(frozen=True)
class ScalarFunctionSpec:
    """A real scalar function together with its domain and convexity flags.

    fn must accept and return float ndarrays (vectorized on eigenvalues).
    Invariant: operator_convex implies convex.
    """

    name: str
    domain: tuple[float, float]
    convex: bool
    operator_convex: bool
    fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)

    def __post_init__(self):
        lo, hi = self.domain
        if not lo < hi:
            raise ValueError(f"empty domain [{lo}, {hi}] for {self.name!r}")
        if self.operator_convex and not self.convex:
            raise ValueError(f"{self.name!r}: operator_convex requires convex")

    def __call__(self, x) -> np.ndarray:
        return np.asarray(self.fn(np.asarray(x, dtype=np.float64)), dtype=np.float64)


def square() -> ScalarFunctionSpec:
    """h(x) = x^2, operator convex on the whole real line."""
    return ScalarFunctionSpec("square", (-_INF, _INF), True, True, lambda x: x * x)


def power(r: float) -> ScalarFunctionSpec:
    """h(x) = x^r on [0, inf); operator convex exactly for 1 <= r <= 2."""
    if not 1.0 <= r <= 2.0:
        raise ValueError(f"power exponent must lie in [1, 2], got {r}")
    return ScalarFunctionSpec(
        f"power[{r:g}]",
        (0.0, _INF),
        True,
        True,
        lambda x: np.power(np.maximum(x, 0.0), r),
    )


def xlogx() -> ScalarFunctionSpec:
    """h(x) = x*log(x) on [0, inf) with h(0) = 0, operator convex."""

    def _fn(x):
        xp = np.maximum(x, 0.0)
        return np.where(xp > 0.0, xp * np.log(np.where(xp > 0.0, xp, 1.0)), 0.0)

    return ScalarFunctionSpec("xlogx", (0.0, _INF), True, True, _fn)


def negative_sqrt() -> ScalarFunctionSpec:
    """h(x) = -sqrt(x) on [0, inf); sqrt is operator concave, so -sqrt is
    operator convex."""
    return ScalarFunctionSpec(
        "negative_sqrt",
        (0.0, _INF),
        True,
        True,
        lambda x: -np.sqrt(np.maximum(x, 0.0)),
    )


def affine(a: float, b: float) -> ScalarFunctionSpec:
    """h(x) = a*x + b; trivially operator convex (and concave)."""
    return ScalarFunctionSpec(
        f"affine[{a:g},{b:g}]",
        (-_INF, _INF),
        True,
        True,
        lambda x: a * x + b,
    )


def identity_fn() -> ScalarFunctionSpec:
    """h(x) = x."""
    return affine(1.0, 0.0)


def from_table(xs, ys) -> ScalarFunctionSpec:
    """Piecewise-linear interpolant of tabulated points.

    The domain is [xs[0], xs[-1]].  The `convex` flag is computed from the
    table (non-decreasing chord slopes); operator convexity is never claimed
    for tabulated data.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
        raise ValueError("table needs matching 1-d xs/ys with at least 2 points")
    if not np.all(np.diff(xs) > 0):
        raise ValueError("table abscissae must be strictly increasing")
    slopes = np.diff(ys) / np.diff(xs)
    scale = 1.0 + float(np.abs(slopes).max())
    convex = bool(np.all(np.diff(slopes) >= -1e-12 * scale))
    xs_c = xs.copy()
    ys_c = ys.copy()

    def _fn(x):
        return np.interp(np.clip(x, xs_c[0], xs_c[-1]), xs_c, ys_c)

    return ScalarFunctionSpec(
        f"table[{xs_c[0]:g},{xs_c[-1]:g};{xs_c.size}]",
        (float(xs_c[0]), float(xs_c[-1])),
        convex,
        False,
        _fn,
    )


def operator_convex_catalog() -> tuple[ScalarFunctionSpec, ...]:
    """Default operator-convex test functions (includes a non-trivial affine)."""
    return (
        square(),
        power(1.25),
        power(1.75),
        xlogx(),
        negative_sqrt(),
        affine(0.8, -0.4),
        identity_fn(),
    )


def convex_catalog(lo: float, hi: float) -> tuple[ScalarFunctionSpec, ...]:
    """Convex test functions safe on [lo, hi]; adds a piecewise-linear table.

    The table is the pointwise max of three affine minorants, sampled on a
    33-point grid over [lo, hi] - convex, continuous, not operator convex.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    grid = np.linspace(lo, hi, 33)
    mid = 0.5 * (lo + hi)
    vals = np.maximum.reduce(
        [
            0.2 * (grid - lo) - 0.1,
            1.0 * (grid - mid),
            2.5 * (grid - hi) + 1.3 * (hi - lo),
        ]
    )
    return operator_convex_catalog() + (from_table(grid, vals),)
