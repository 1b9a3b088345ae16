"""Monte Carlo rank census over Gaussian ``n x (m-1)n x m`` tensors.

Trial ``i`` of a census keyed by ``seed`` draws
``random_gaussian((n, (m-1)n, m), derive_seed(seed, i))`` and runs
:func:`~typical_rank.generic.decompose_generic` with the same derived seed
for its direction stream, so every trial can be replayed on its own.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .errors import ArgumentError
from .generic import TOL_PT, TOL_REC, Outcome, decompose_generic
from .rng import derive_seed
from .tensor import random_gaussian

__all__ = ["TrialRecord", "CensusReport", "run_trial", "census"]


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    outcome: Outcome
    residual: Optional[float] = None

    def to_dict(self) -> dict:
        out = {"trial": self.trial, "seed": self.seed, "outcome": self.outcome.value}
        if self.residual is not None:
            out["residual"] = self.residual
        return out


@dataclass(frozen=True)
class CensusReport:
    m: int
    n: int
    trials: int
    seed: int
    tol: float
    budget: Optional[int]
    records: List[TrialRecord] = field(default_factory=list)

    @property
    def p(self) -> int:
        return (self.m - 1) * self.n

    def counts(self) -> Dict[Outcome, int]:
        c = Counter(r.outcome for r in self.records)
        return {o: c.get(o, 0) for o in Outcome}

    def fractions(self) -> Dict[Outcome, float]:
        return {o: k / self.trials for o, k in self.counts().items()}

    def fraction(self, outcome: Outcome) -> float:
        return self.fractions()[outcome]

    def residuals(self) -> List[float]:
        return [r.residual for r in self.records if r.residual is not None]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "tolerances": {"reconstruction": self.tol, "point": TOL_PT},
            "budget": self.budget,
            "perTrial": [r.to_dict() for r in self.records],
            "fractions": {o.value: f for o, f in self.fractions().items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, allow_nan=False) + "\n"

    def summary(self) -> str:
        counts = self.counts()
        lines = [f"census m={self.m} n={self.n} p={self.p} trials={self.trials} seed={self.seed}"]
        for o in Outcome:
            label = o.value
            if o is Outcome.RANK_EXCEEDS_P:
                label += " (rank >= p+1, probabilistic)"
            lines.append(f"  {label:<40s} {counts[o]:>6d}  {counts[o] / self.trials:.4f}")
        return "\n".join(lines)


def run_trial(m: int, n: int, seed: int, index: int, budget=None, tol: float = TOL_REC) -> TrialRecord:
    """Run trial ``index`` of the census keyed by ``seed``."""
    s = derive_seed(seed, index)
    T = random_gaussian((n, (m - 1) * n, m), s)
    result = decompose_generic(T, budget=budget, seed=s, tol=tol)
    return TrialRecord(index, s, result.outcome, result.residual)


def _run(args):
    return run_trial(*args)


def census(
    m: int,
    n: int,
    trials: int,
    seed: int = 0,
    budget: Optional[int] = None,
    tol: float = TOL_REC,
    workers: int = 1,
) -> CensusReport:
    """Decompose ``trials`` Gaussian tensors and tally the outcomes.

    The report does not depend on ``workers``.
    """
    m, n, trials = int(m), int(n), int(trials)
    if not 3 <= m <= n:
        raise ArgumentError(f"census needs 3 <= m <= n, got m={m}, n={n}")
    if trials < 1:
        raise ArgumentError("trials must be >= 1")
    jobs = [(m, n, seed, i, budget, tol) for i in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        records = [_run(j) for j in jobs]
    return CensusReport(m, n, trials, int(seed), float(tol), budget, records)
