"""Seeded empirical lower-bound search and the random-form norm scaling
experiment.

Every reported ratio uses an exact norm, so it is a mathematically valid
lower bound for the matching optimal constant; results are deterministic for
a fixed seed (restart seeds come from SeedSequence.spawn).
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .core import MultilinearForm
from .generators import a_family, ksz_random, r_family, s_family
from .norms import DEFAULT_BUDGET, exact_norm_real
from .sums import (
    FULL,
    RatioReport,
    Restriction,
    bh_exponent,
    lp_sum,
    restricted_sum,
    theorem_upper_bound,
)


@dataclass(frozen=True)
class SearchConfig:
    m: int
    dims: tuple[int, ...]
    p: float | None = None
    restriction: Restriction = FULL
    budget: int = 10_000
    restarts: int = 4
    seed: int = 0
    norm_budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.budget < self.restarts:
            raise ValueError(
                f"budget {self.budget} too small for {self.restarts} restarts"
            )
        if len(self.dims) != self.m:
            raise ValueError(f"expected {self.m} dims, got {len(self.dims)}")

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "dims": list(self.dims),
            "p": self.p,
            "restriction": self.restriction.to_json(),
            "budget": self.budget,
            "restarts": self.restarts,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class ExperimentTable:
    """Reproducible experiment rows; identical config reproduces identical
    values (the timestamp lives only in metadata)."""

    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "columns": list(self.columns),
            "rows": [list(r) for r in self.rows],
            "metadata": self.metadata,
        }

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for r in self.rows:
            lines.append(",".join(str(v) for v in r))
        return "\n".join(lines) + "\n"


def config_hash(obj) -> str:
    return hashlib.sha256(
        json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()[:16]


def form_hash(T: MultilinearForm) -> str:
    from .core import dumps

    return hashlib.sha256(dumps(T).encode()).hexdigest()[:16]


def _ratio(T: MultilinearForm, p: float, restriction: Restriction, norm_budget: int):
    if restriction.kind == "card":
        s = restricted_sum(T, restriction.M, p)
    else:
        s = lp_sum(T.coeffs.values(), p)
    norm = exact_norm_real(T, budget=norm_budget)
    return s / norm.value, norm, s


def maximize_ratio(
    cfg: SearchConfig, initial: MultilinearForm | None = None
) -> tuple[MultilinearForm, RatioReport]:
    """Hill climbing over dense +-1 coefficient tensors: steepest single
    coefficient sign flip on the sum/norm ratio, random restarts, ties keep
    the incumbent.  The budget counts ratio evaluations."""
    p = cfg.p if cfg.p is not None else bh_exponent(cfg.m)
    positions = list(itertools.product(*(range(1, d + 1) for d in cfg.dims)))
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    evals = 0
    best_form = None
    best_ratio = -1.0
    best_norm = best_sum = None

    for r, child in enumerate(children):
        if evals >= cfg.budget:
            break
        if r == 0 and initial is not None:
            form = initial
        else:
            rng = np.random.default_rng(child)
            signs = rng.integers(0, 2, size=len(positions)) * 2 - 1
            form = MultilinearForm.build(
                cfg.m, cfg.dims, {t: int(s) for t, s in zip(positions, signs)}
            )
        ratio, norm, s = _ratio(form, p, cfg.restriction, cfg.norm_budget)
        evals += 1
        while evals < cfg.budget:
            move = None
            move_ratio = ratio
            for t in form.coeffs:
                if evals >= cfg.budget:
                    break
                flipped = dict(form.coeffs)
                flipped[t] = -flipped[t]
                cand = MultilinearForm.build(cfg.m, cfg.dims, flipped)
                cr, cn, cs = _ratio(cand, p, cfg.restriction, cfg.norm_budget)
                evals += 1
                if cr > move_ratio:
                    move, move_ratio = (cand, cn, cs), cr
            if move is None:
                break
            form, norm, s = move
            ratio = move_ratio
        if ratio > best_ratio:
            best_form, best_ratio, best_norm, best_sum = form, ratio, norm, s

    report = RatioReport(
        p=p, sum=best_sum, norm=best_norm, ratio=best_ratio,
        restriction=cfg.restriction,
    )
    return best_form, report


def _family_start(m: int, M: int) -> MultilinearForm | None:
    if M >= 3 and m >= 2:
        return s_family(m)
    if M == 2:
        return r_family(m) if m % 2 == 0 else a_family(m)
    return None


def constant_table(
    ms,
    Ms,
    budget: int = 400,
    restarts: int = 2,
    seed: int = 0,
) -> ExperimentTable:
    """Empirical lower bounds for the card-restricted constants, per (m, M),
    alongside the proved upper bound.  Each cell's restart 0 is seeded with
    the matching named family, so known witnesses are never missed."""
    rows = []
    for m in ms:
        for M in Ms:
            if not 1 <= M <= m:
                continue
            start = _family_start(m, M)
            dims = start.dims if start is not None else (2,) * m
            cfg = SearchConfig(
                m=m,
                dims=dims,
                restriction=Restriction("card", M=M),
                budget=budget,
                restarts=restarts,
                seed=seed,
            )
            _, report = maximize_ratio(cfg, initial=start)
            rows.append((m, M, report.ratio, theorem_upper_bound(m, M)))
    meta = {
        "seed": seed,
        "config_hash": config_hash(
            {"ms": list(ms), "Ms": list(Ms), "budget": budget,
             "restarts": restarts, "seed": seed}
        ),
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "note": "empirical lower bounds only; optimality is open",
    }
    return ExperimentTable(
        ("m", "M", "best_ratio_lower_bound", "upper_bound"), tuple(rows), meta
    )


def ksz_scaling_experiment(
    m: int,
    ns,
    samples: int,
    seed: int,
    norm_budget: int = DEFAULT_BUDGET,
) -> ExperimentTable:
    """Draws random +-1 forms at each size n, computes exact norms, and
    reports the median and min of ||T|| / n^((m+1)/2) plus the least-squares
    slope of log2(median ||T||) against log2 n (theory: (m+1)/2)."""
    ns = [int(n) for n in ns]
    if not ns or samples < 1:
        raise ValueError("need at least one size and one sample")
    ss = np.random.SeedSequence(seed)
    children = ss.spawn(len(ns) * samples)
    rows = []
    medians = []
    for a, n in enumerate(ns):
        norms = []
        for b in range(samples):
            child = children[a * samples + b]
            form_seed = int(child.generate_state(1)[0])
            T = ksz_random(m, n, seed=form_seed)
            norms.append(exact_norm_real(T, budget=norm_budget).value)
        scaled = [v / n ** ((m + 1) / 2.0) for v in norms]
        med = float(np.median(norms))
        medians.append(med)
        rows.append(
            (n, samples, med, float(np.median(scaled)), float(np.min(scaled)))
        )
    if len(ns) >= 2:
        slope = float(
            np.polyfit([math.log2(n) for n in ns],
                       [math.log2(v) for v in medians], 1)[0]
        )
    else:
        slope = float("nan")
    meta = {
        "seed": seed,
        "config_hash": config_hash(
            {"m": m, "ns": ns, "samples": samples, "seed": seed}
        ),
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "slope": slope,
        "theory_slope": (m + 1) / 2.0,
    }
    return ExperimentTable(
        ("n", "samples", "median_norm", "median_scaled", "min_scaled"),
        tuple(rows),
        meta,
    )
