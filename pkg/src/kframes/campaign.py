"""Randomized verification campaigns over the check catalog.

A campaign runs every requested check id over `trials` independently
generated instances.  Each trial derives all of its randomness from
SeedSequence((seed, trial, stream)), so sections can be evaluated in any
order (or in parallel) and still produce identical reports; the wall-clock
field is the only non-deterministic entry.

Check ids
---------
thm2.1    split identity for K-dual pairs
cor2.2    split identity with canonical coefficients
thm2.3    weighted split identity
thm2.4    subset transfer identity (Parseval)
thm2.5    symmetric split energy identity + 3/4 bound
lem2.6    coefficient norm bounds
thm2.7    v+/v- bracket, complement symmetry, boundary values
cor2.8    three-way unit-constant equivalence
cor2.9    four-way orthogonal-split equivalence
jensen3.1 operator-convex Jensen inequality
jensen3.2 reflected convex Jensen inequality
thm3.3i   frame split of jensen3.1
thm3.3ii  frame split of jensen3.2
cor3.4    per-vector energy sandwich
douglas   factorization suite (reduced solution + optimality margins)
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from math import inf

import numpy as np

from .douglas import douglas_infimum_check, douglas_solve, parametrized_kdual
from .errors import KFramesError, UnknownTheoremId
from .frames import DualPair, IndexSubset, KFrame
from .functions import convex_catalog, operator_convex_catalog
from .generators import (
    GenConfig,
    STREAM_DOUGLAS,
    STREAM_DUAL,
    STREAM_FAULT,
    STREAM_JENSEN,
    STREAM_SUBSETS,
    STREAM_VECTORS,
    STREAM_WEIGHTS,
    complex_gaussian,
    gen_kframe,
    gen_operator,
    gen_parseval_kframe,
    random_unitary,
    stream_rng,
)
from .identities import (
    check_canonical_split_identity,
    check_dual_split_identity,
    check_orthogonal_split_equivalence,
    check_split_constant_properties,
    check_subset_transfer_identity,
    check_three_quarters_bound,
    check_unit_constant_equivalence,
    check_coefficient_norm_bounds,
    check_weighted_split_identity,
)
from .jensen import (
    PositiveMapFamily,
    check_energy_sandwich,
    check_jensen_convex_bracket,
    check_jensen_operator_convex,
    check_split_jensen,
    check_split_jensen_reflected,
)
from .linalg import op_norm
from .douglas import canonical_kdual

__all__ = [
    "CHECK_IDS",
    "FaultSpec",
    "SectionReport",
    "CampaignReport",
    "TrialContext",
    "run_campaign",
]

CHECK_IDS = (
    "thm2.1",
    "cor2.2",
    "thm2.3",
    "thm2.4",
    "thm2.5",
    "lem2.6",
    "thm2.7",
    "cor2.8",
    "cor2.9",
    "jensen3.1",
    "jensen3.2",
    "thm3.3i",
    "thm3.3ii",
    "cor3.4",
    "douglas",
)

_BATCH_SIZE = 200       # test vectors for the batch-quantified equivalence
_LOOSE_VECTORS = 2      # per-vector checks per instance
_RANDOM_SUBSETS = 3     # proper subsets drawn per instance (plus empty/full)
_MAX_FAILURE_RECORDS = 50


@dataclass(frozen=True)
class FaultSpec:
    """Deliberate corruption injected into generated instances.

    kind "dual" perturbs one dual vector; kind "parseval" perturbs one
    frame vector of the Parseval instance.  `scale` is the relative size.
    """

    kind: str
    scale: float = 1e-3

    def __post_init__(self):
        if self.kind not in ("dual", "parseval"):
            raise ValueError(f"unknown fault kind {self.kind!r}")
        if not self.scale > 0:
            raise ValueError(f"fault scale must be positive, got {self.scale}")


@dataclass(frozen=True)
class CheckOutcome:
    label: str
    residual: float
    passed: bool


class TrialContext:
    """Lazily generated, stream-isolated artifacts for one trial."""

    def __init__(self, cfg: GenConfig, trial: int, fault: FaultSpec | None = None):
        self.cfg = cfg
        self.trial = trial
        self.fault = fault
        self._cache: dict = {}

    def _rng(self, stream: int) -> np.random.Generator:
        return stream_rng(self.cfg.seed, self.trial, stream)

    def _get(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    # --- instances ------------------------------------------------------

    def operator(self) -> np.ndarray:
        return self._get("operator", lambda: gen_operator(self.cfg, self.trial))

    def kframe(self) -> KFrame:
        return self._get(
            "kframe", lambda: gen_kframe(self.cfg, self.operator(), self.trial)
        )

    def parseval(self) -> KFrame:
        def build():
            frame = gen_parseval_kframe(self.cfg, self.operator(), self.trial)
            if self.fault is not None and self.fault.kind == "parseval":
                frame = KFrame(
                    vectors=self._perturb_column(frame.vectors), label=frame.label
                )
            return frame

        return self._get("parseval", build)

    def dual_pair(self) -> DualPair:
        def build():
            rng = self._rng(STREAM_DUAL)
            z = complex_gaussian(rng, (self.cfg.count, self.cfg.dim))
            pair = parametrized_kdual(self.kframe(), self.operator(), z, self.cfg.tol)
            if self.fault is not None and self.fault.kind == "dual":
                pair = DualPair(
                    frame=pair.frame,
                    dual_vectors=self._perturb_column(pair.dual_vectors),
                    operator=pair.operator,
                )
            return pair

        return self._get("dual", build)

    def canonical_pair(self) -> DualPair:
        return self._get(
            "canonical",
            lambda: canonical_kdual(self.kframe(), self.operator(), self.cfg.tol),
        )

    def _perturb_column(self, matrix: np.ndarray) -> np.ndarray:
        rng = self._rng(STREAM_FAULT)
        out = matrix.copy()
        col = int(rng.integers(0, out.shape[1]))
        direction = complex_gaussian(rng, (out.shape[0],))
        direction /= np.linalg.norm(direction)
        size = max(float(np.linalg.norm(out[:, col])), 1.0)
        out[:, col] += self.fault.scale * size * direction
        return out

    # --- auxiliary draws --------------------------------------------------

    def subsets_with_extras(self):
        """List of (J, E) with E a subset of J^c, per the subset policy."""

        def build():
            n = self.cfg.count
            rng = self._rng(STREAM_SUBSETS)
            if self.cfg.subset_policy == "exhaustive-small":
                pool = [
                    IndexSubset(combo)
                    for r in range(n + 1)
                    for combo in itertools.combinations(range(n), r)
                ]
            else:
                pool = [IndexSubset.empty(), IndexSubset.full(n)]
                for _ in range(_RANDOM_SUBSETS):
                    mask = rng.random(n) < 0.5
                    pool.append(IndexSubset(tuple(np.flatnonzero(mask))))
            pairs = []
            for subset in pool:
                comp = subset.complement(n).as_array()
                if comp.size:
                    keep = rng.random(comp.size) < 0.5
                    extra = IndexSubset(tuple(comp[keep]))
                else:
                    extra = IndexSubset.empty()
                pairs.append((subset, extra))
            return pairs

        return self._get("subsets", build)

    def subsets(self):
        return [subset for subset, _ in self.subsets_with_extras()]

    def vectors(self):
        return self._get(
            "vectors",
            lambda: list(
                complex_gaussian(
                    self._rng(STREAM_VECTORS), (_LOOSE_VECTORS + _BATCH_SIZE, self.cfg.dim)
                )
            ),
        )[:_LOOSE_VECTORS]

    def batch(self) -> np.ndarray:
        all_vecs = self._get(
            "vectors",
            lambda: list(
                complex_gaussian(
                    self._rng(STREAM_VECTORS), (_LOOSE_VECTORS + _BATCH_SIZE, self.cfg.dim)
                )
            ),
        )
        return np.asarray(all_vecs[_LOOSE_VECTORS:])

    def alphas(self):
        def build():
            rng = self._rng(STREAM_WEIGHTS)
            out = [complex_gaussian(rng, (self.cfg.count,)) for _ in range(2)]
            subset = self.subsets()[min(2, len(self.subsets()) - 1)]
            indicator = np.zeros(self.cfg.count, dtype=np.complex128)
            indicator[subset.as_array()] = 1.0
            out.append(indicator)
            return out

        return self._get("alphas", build)

    def jensen_instance(self):
        """(operators, family): PSD operators with spectra in [0, 3]."""

        def build():
            rng = self._rng(STREAM_JENSEN)
            d = self.cfg.dim
            if self.trial % 2 == 0:
                k_maps = 3
                family = PositiveMapFamily.from_weights(rng.dirichlet(np.ones(k_maps)), d)
                out_dim = d
            else:
                k_maps = 2
                out_dim = max(1, d - 1)
                block = complex_gaussian(rng, (k_maps * d, out_dim))
                q, _ = np.linalg.qr(block)
                family = PositiveMapFamily.from_congruences(
                    [q[i * d : (i + 1) * d, :] for i in range(k_maps)]
                )
            ops = []
            for _ in range(k_maps):
                w = random_unitary(rng, d)
                vals = rng.uniform(0.0, 3.0, size=d)
                ops.append((w * vals) @ w.conj().T)
            return ops, family

        return self._get("jensen", build)

    def douglas_instance(self):
        def build():
            rng = self._rng(STREAM_DOUGLAS)
            l2 = complex_gaussian(rng, (self.cfg.dim, self.cfg.count))
            r = complex_gaussian(rng, (self.cfg.count, self.cfg.dim))
            return l2, r

        return self._get("douglas", build)


def _fmt_subset(subset: IndexSubset) -> str:
    return ",".join(str(i) for i in subset.indices) if len(subset) else "empty"


def _loewner_badness(report) -> float:
    return max(0.0, -report.min_eig) / report.scale


def _inequality_badness(report) -> float:
    return max(0.0, -report.margin) / report.scale


def _guarded(outcomes, label, fn):
    """Run one check; failed preconditions become failing outcomes."""
    try:
        fn()
    except KFramesError as exc:
        outcomes.append(
            CheckOutcome(f"{label};error={type(exc).__name__}", inf, False)
        )


def _run_thm21(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    pairs = [("canonical", ctx.canonical_pair()), ("parametrized", ctx.dual_pair())]
    for pair_name, pair in pairs:
        for subset in ctx.subsets():
            for fi, f in enumerate(ctx.vectors()):
                label = f"{pair_name};J={_fmt_subset(subset)};f{fi}"

                def run(pair=pair, subset=subset, f=f, label=label):
                    rep = check_dual_split_identity(pair, subset, f, tol)
                    outcomes.append(CheckOutcome(label, rep.rel_err, rep.passed))

                _guarded(outcomes, label, run)
    return outcomes


def _run_cor22(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    frame, k = ctx.kframe(), ctx.operator()
    for subset in ctx.subsets():
        for fi, f in enumerate(ctx.vectors()):
            label = f"J={_fmt_subset(subset)};f{fi}"

            def run(subset=subset, f=f, label=label):
                rep = check_canonical_split_identity(frame, k, subset, f, tol)
                outcomes.append(CheckOutcome(label, rep.rel_err, rep.passed))

            _guarded(outcomes, label, run)
    return outcomes


def _run_thm23(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    pair = ctx.dual_pair()
    for ai, alpha in enumerate(ctx.alphas()):
        for fi, f in enumerate(ctx.vectors()):
            label = f"alpha{ai};f{fi}"

            def run(alpha=alpha, f=f, label=label):
                rep = check_weighted_split_identity(pair, alpha, f, tol)
                outcomes.append(CheckOutcome(label, rep.rel_err, rep.passed))

            _guarded(outcomes, label, run)
    return outcomes


def _run_thm24(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    frame, k = ctx.parseval(), ctx.operator()
    for subset, extra in ctx.subsets_with_extras():
        for fi, f in enumerate(ctx.vectors()):
            label = f"J={_fmt_subset(subset)};E={_fmt_subset(extra)};f{fi}"

            def run(subset=subset, extra=extra, f=f, label=label):
                rep = check_subset_transfer_identity(frame, k, subset, extra, f, tol)
                outcomes.append(CheckOutcome(label, rep.rel_err, rep.passed))

            _guarded(outcomes, label, run)
    return outcomes


def _run_thm25(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    frame, k = ctx.parseval(), ctx.operator()
    for subset in ctx.subsets():
        for fi, f in enumerate(ctx.vectors()):
            label = f"J={_fmt_subset(subset)};f{fi}"

            def run(subset=subset, f=f, label=label):
                ident, ineq = check_three_quarters_bound(frame, k, subset, f, tol)
                outcomes.append(
                    CheckOutcome(f"{label};identity", ident.rel_err, ident.passed)
                )
                outcomes.append(
                    CheckOutcome(
                        f"{label};bound", _inequality_badness(ineq), ineq.passed
                    )
                )

            _guarded(outcomes, label, run)
    return outcomes


def _run_lem26(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    frame, k = ctx.kframe(), ctx.operator()
    for fi, f in enumerate(ctx.vectors()):
        label = f"f{fi}"

        def run(f=f, label=label):
            first, second = check_coefficient_norm_bounds(frame, k, f, tol)
            outcomes.append(
                CheckOutcome(f"{label};bessel", _inequality_badness(first), first.passed)
            )
            outcomes.append(
                CheckOutcome(
                    f"{label};range-lower", _inequality_badness(second), second.passed
                )
            )

        _guarded(outcomes, label, run)
    return outcomes


def _run_thm27(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    frame, k = ctx.parseval(), ctx.operator()
    for subset in ctx.subsets()[: 2 + _RANDOM_SUBSETS]:
        label = f"J={_fmt_subset(subset)}"

        def run(subset=subset, label=label):
            rep = check_split_constant_properties(frame, k, subset, tol)
            vj = rep.subset_constants
            vjc = rep.complement_constants
            residual = max(
                0.0,
                0.75 - vj.v_minus,
                vj.v_plus - rep.proof_bound,
                abs(vj.v_plus - vjc.v_plus),
                abs(vj.v_minus - vjc.v_minus),
            )
            if rep.boundary_ok is not None:
                residual = max(
                    residual, abs(vj.v_plus - 1.0), abs(vj.v_minus - 1.0)
                )
            outcomes.append(CheckOutcome(label, residual, rep.passed))

        _guarded(outcomes, label, run)
    return outcomes


def _run_cor28(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    frame, k = ctx.parseval(), ctx.operator()
    batch = ctx.batch()
    for subset in ctx.subsets()[: 2 + _RANDOM_SUBSETS]:
        label = f"J={_fmt_subset(subset)}"

        def run(subset=subset, label=label):
            rep = check_unit_constant_equivalence(frame, k, subset, batch, tol)
            outcomes.append(
                CheckOutcome(label, 0.0 if rep.agree else 1.0, rep.agree)
            )

        _guarded(outcomes, label, run)
    return outcomes


def _run_cor29(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    frame, k = ctx.parseval(), ctx.operator()
    for subset in ctx.subsets():
        for fi, f in enumerate(ctx.vectors()):
            label = f"J={_fmt_subset(subset)};f{fi}"

            def run(subset=subset, f=f, label=label):
                rep = check_orthogonal_split_equivalence(frame, k, subset, f, tol)
                outcomes.append(
                    CheckOutcome(label, 0.0 if rep.agree else 1.0, rep.agree)
                )

            _guarded(outcomes, label, run)
    return outcomes


def _run_jensen31(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    ops, family = ctx.jensen_instance()
    for h in operator_convex_catalog():
        label = f"h={h.name}"

        def run(h=h, label=label):
            rep = check_jensen_operator_convex(ops, family, h, tol)
            outcomes.append(CheckOutcome(label, _loewner_badness(rep), rep.passed))

        _guarded(outcomes, label, run)
    return outcomes


def _run_jensen32(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    ops, family = ctx.jensen_instance()
    top = max(op_norm(a) for a in ops) + 0.25
    for h in convex_catalog(0.0, top):
        label = f"h={h.name}"

        def run(h=h, label=label):
            rep = check_jensen_convex_bracket(ops, family, h, 0.0, top, tol)
            outcomes.append(CheckOutcome(label, _loewner_badness(rep), rep.passed))

        _guarded(outcomes, label, run)
    return outcomes


def _run_thm33i(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    frame, k = ctx.parseval(), ctx.operator()
    subset = ctx.subsets()[2 % len(ctx.subsets())]
    for h in operator_convex_catalog():
        label = f"J={_fmt_subset(subset)};h={h.name}"

        def run(h=h, label=label):
            rep = check_split_jensen(frame, k, subset, h, tol)
            outcomes.append(CheckOutcome(label, _loewner_badness(rep), rep.passed))

        _guarded(outcomes, label, run)
    return outcomes


def _run_thm33ii(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    frame, k = ctx.parseval(), ctx.operator()
    subset = ctx.subsets()[2 % len(ctx.subsets())]
    top = op_norm(k) ** 2
    for h in convex_catalog(0.0, top):
        label = f"J={_fmt_subset(subset)};h={h.name}"

        def run(h=h, label=label):
            rep = check_split_jensen_reflected(frame, k, subset, h, tol)
            outcomes.append(CheckOutcome(label, _loewner_badness(rep), rep.passed))

        _guarded(outcomes, label, run)
    return outcomes


def _run_cor34(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    frame, k = ctx.parseval(), ctx.operator()
    for subset in ctx.subsets():
        for fi, f in enumerate(ctx.vectors()):
            label = f"J={_fmt_subset(subset)};f{fi}"

            def run(subset=subset, f=f, label=label):
                low, high = check_energy_sandwich(frame, k, subset, f, tol)
                outcomes.append(
                    CheckOutcome(f"{label};lower", _inequality_badness(low), low.passed)
                )
                outcomes.append(
                    CheckOutcome(f"{label};upper", _inequality_badness(high), high.passed)
                )

            _guarded(outcomes, label, run)
    return outcomes


def _run_douglas(ctx: TrialContext):
    outcomes = []
    tol = ctx.cfg.tol
    l2, r = ctx.douglas_instance()
    l1 = l2 @ r

    def run():
        sol = douglas_solve(l1, l2, tol)
        norm_l1 = op_norm(l1)
        outcomes.append(
            CheckOutcome(
                "factor-residual",
                sol.factor_residual / (1.0 + norm_l1),
                sol.factor_residual <= tol * (1.0 + norm_l1),
            )
        )
        norm_r = op_norm(r)
        norm_x = sol.norm_sq**0.5
        outcomes.append(
            CheckOutcome(
                "minimality",
                max(0.0, norm_x - norm_r) / (1.0 + norm_r),
                norm_x <= norm_r + tol * (1.0 + norm_r),
            )
        )
        outcomes.append(
            CheckOutcome("kernel-match", sol.kernel_match, sol.kernel_match <= tol)
        )
        outcomes.append(
            CheckOutcome(
                "range-containment",
                sol.range_residual / (1.0 + norm_x),
                sol.range_ok,
            )
        )
        inf_rep = douglas_infimum_check(l1, l2, sol.x, tol)
        badness = max(0.0, -inf_rep.upper_margin) / inf_rep.scale
        if inf_rep.shaved_margin >= -tol * inf_rep.scale:
            badness = max(badness, 1.0)
        outcomes.append(CheckOutcome("infimum", badness, inf_rep.passed))

    _guarded(outcomes, "solve", run)
    return outcomes


_RUNNERS = {
    "thm2.1": _run_thm21,
    "cor2.2": _run_cor22,
    "thm2.3": _run_thm23,
    "thm2.4": _run_thm24,
    "thm2.5": _run_thm25,
    "lem2.6": _run_lem26,
    "thm2.7": _run_thm27,
    "cor2.8": _run_cor28,
    "cor2.9": _run_cor29,
    "jensen3.1": _run_jensen31,
    "jensen3.2": _run_jensen32,
    "thm3.3i": _run_thm33i,
    "thm3.3ii": _run_thm33ii,
    "cor3.4": _run_cor34,
    "douglas": _run_douglas,
}


@dataclass
class SectionReport:
    id: str
    trials: int
    checks: int
    failures: int
    worst_residual: float
    worst_case: dict | None
    failure_records: list = field(default_factory=list)
    passed: bool = True


@dataclass
class CampaignReport:
    config: GenConfig
    check_ids: tuple
    fault: FaultSpec | None
    sections: list
    passed: bool
    wall_clock_s: float


def run_campaign(
    cfg: GenConfig, check_ids=None, fault: FaultSpec | None = None
) -> CampaignReport:
    """Run the requested checks over `cfg.trials` generated instances."""
    ids = tuple(check_ids) if check_ids is not None else CHECK_IDS
    for cid in ids:
        if cid not in _RUNNERS:
            raise UnknownTheoremId(
                f"{cid!r}; known ids: {', '.join(CHECK_IDS)}"
            )
    start = time.perf_counter()
    contexts = [TrialContext(cfg, t, fault) for t in range(cfg.trials)]
    sections = []
    for cid in ids:
        runner = _RUNNERS[cid]
        checks = 0
        failures = 0
        worst = -1.0
        worst_case = None
        records = []
        for ctx in contexts:
            for outcome in runner(ctx):
                checks += 1
                if outcome.residual > worst:
                    worst = outcome.residual
                    worst_case = {
                        "seed": cfg.seed,
                        "trial": ctx.trial,
                        "check": outcome.label,
                        "residual": outcome.residual,
                    }
                if not outcome.passed:
                    failures += 1
                    if len(records) < _MAX_FAILURE_RECORDS:
                        records.append(
                            {
                                "seed": cfg.seed,
                                "trial": ctx.trial,
                                "check": outcome.label,
                                "residual": outcome.residual,
                            }
                        )
        sections.append(
            SectionReport(
                id=cid,
                trials=cfg.trials,
                checks=checks,
                failures=failures,
                worst_residual=max(worst, 0.0),
                worst_case=worst_case,
                failure_records=records,
                passed=failures == 0,
            )
        )
    passed = all(s.passed for s in sections)
    wall = time.perf_counter() - start
    return CampaignReport(
        config=cfg,
        check_ids=ids,
        fault=fault,
        sections=sections,
        passed=passed,
        wall_clock_s=wall,
    )
