"""Uniform verdict carriers for identity and inequality checks."""

from __future__ import annotations

from dataclasses import dataclass

from .defaults import resolve_tol

__all__ = ["IdentityReport", "InequalityReport", "EquivalenceReport"]


@dataclass(frozen=True)
class IdentityReport:
    """Two-sided equality verdict.

    lhs and rhs may be complex; abs_err = |lhs - rhs| and
    rel_err = abs_err / (1 + |lhs| + |rhs|).  passed <=> rel_err <= tol.
    """

    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    passed: bool

    @classmethod
    def compare(cls, lhs, rhs, tol: float | None = None) -> "IdentityReport":
        tol = resolve_tol(tol)
        lhs = complex(lhs)
        rhs = complex(rhs)
        abs_err = abs(lhs - rhs)
        rel_err = abs_err / (1.0 + abs(lhs) + abs(rhs))
        return cls(lhs, rhs, abs_err, rel_err, rel_err <= tol)


@dataclass(frozen=True)
class InequalityReport:
    """One-sided verdict for the claim lhs <= rhs.

    margin = rhs - lhs; passed <=> margin >= -tol * scale with
    scale = 1 + |lhs| + |rhs|.
    """

    lhs: float
    rhs: float
    margin: float
    scale: float
    passed: bool

    @classmethod
    def compare(cls, lhs, rhs, tol: float | None = None) -> "InequalityReport":
        tol = resolve_tol(tol)
        lhs = float(lhs)
        rhs = float(rhs)
        margin = rhs - lhs
        scale = 1.0 + abs(lhs) + abs(rhs)
        return cls(lhs, rhs, margin, scale, margin >= -tol * scale)


@dataclass(frozen=True)
class EquivalenceReport:
    """Joint verdict for conditions claimed mutually equivalent.

    Each labelled condition is evaluated independently; `agree` states that
    all verdicts coincide (all true or all false).  `residuals` carry the
    per-condition relative residuals for diagnostics.
    """

    labels: tuple[str, ...]
    verdicts: tuple[bool, ...]
    residuals: tuple[float, ...]
    agree: bool

    @classmethod
    def collect(cls, items) -> "EquivalenceReport":
        labels = tuple(label for label, _, _ in items)
        verdicts = tuple(bool(v) for _, v, _ in items)
        residuals = tuple(float(r) for _, _, r in items)
        agree = len(set(verdicts)) <= 1
        return cls(labels, verdicts, residuals, agree)
