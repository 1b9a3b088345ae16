"""
Monte Carlo rank census
=======================

Decompose seeded Gaussian tensors of shape ``n x (m-1)n x m`` and tally how
often rank ``p`` is reached.  Each trial is replayable from its derived seed.
"""

from typical_rank import census, hurwitz_radon
from typical_rank.census import run_trial

for m, n, trials in [(3, 3, 30), (3, 4, 30), (3, 5, 10)]:
    report = census(m, n, trials, seed=7)
    side = "{p}" if m > hurwitz_radon(n) else "{p, p+1}"
    print(f"typical ranks {side}")
    print(report.summary())
    print()

# replay one trial in isolation
rec = run_trial(3, 4, seed=7, index=5)
print(f"trial 5 of census(3, 4, seed=7): seed {rec.seed}, {rec.outcome.value}, residual {rec.residual:.1e}")
