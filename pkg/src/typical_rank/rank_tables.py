"""Closed-form typical ranks of real 3-way tensors for the covered regimes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Optional

from .errors import ArgumentError

__all__ = ["hurwitz_radon", "TypicalRankAnswer", "typical_ranks"]


def hurwitz_radon(n: int) -> int:
    """Hurwitz-Radon number: ``2**b + 8*c`` where ``n = odd * 2**(b + 4c)``, ``0 <= b < 4``.

    >>> [hurwitz_radon(n) for n in (1, 2, 4, 8, 16)]
    [1, 2, 4, 8, 9]
    """
    n = int(n)
    if n < 1:
        raise ArgumentError(f"hurwitz_radon needs n >= 1, got {n}")
    e = (n & -n).bit_length() - 1
    c, b = divmod(e, 4)
    return 2**b + 8 * c


@dataclass(frozen=True)
class TypicalRankAnswer:
    """Set of typical ranks (``None`` when the case is not covered)."""

    ranks: Optional[FrozenSet[int]]
    citation: str

    @property
    def known(self) -> bool:
        return self.ranks is not None

    def __str__(self) -> str:
        if self.ranks is None:
            return "unknown"
        return "{" + ", ".join(str(r) for r in sorted(self.ranks)) + "}"


def _answer(ranks, citation: str) -> TypicalRankAnswer:
    return TypicalRankAnswer(frozenset(ranks), citation)


def typical_ranks(m1: int, m2: int, m3: int) -> TypicalRankAnswer:
    """Typical ranks of ``m1 x m2 x m3`` real tensors.

    The dimensions are sorted to ``m <= n <= p`` first (rank is invariant
    under permuting modes).  Cases outside the known regimes return an
    answer with ``ranks=None`` rather than a guess.
    """
    dims = [int(m1), int(m2), int(m3)]
    if min(dims) < 1:
        raise ArgumentError(f"dimensions must be positive, got {dims}")
    m, n, p = sorted(dims)
    if m == 1:
        return _answer({n}, "matrix rank")
    if m == 2:
        if p == n:
            return _answer({p, p + 1}, "2 x n x n pencils")
        if p <= 2 * n:
            return _answer({p}, "2 x n x p, n < p <= 2n")
        return _answer({2 * n}, "2 x n x p, p > 2n")
    if p >= m * n:
        return _answer({m * n}, "p >= mn")
    if p > (m - 1) * n:
        return _answer({p}, "(m-1)n < p < mn")
    if p == (m - 1) * n:
        if m > hurwitz_radon(n):
            return _answer({p}, "p = (m-1)n, m > rho(n)")
        return _answer({p, p + 1}, "p = (m-1)n, m <= rho(n)")
    return TypicalRankAnswer(None, "not covered: p < (m-1)n")
