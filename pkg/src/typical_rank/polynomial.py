"""Real polynomials, characteristic polynomials and real-root isolation.

Characteristic polynomials come from the Faddeev-LeVerrier recurrence and
real roots are isolated with Sturm sequences and refined by bisection.  Only
distinct real roots are reported; multiplicities are not tracked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .errors import DimensionError

__all__ = [
    "RealPoly",
    "charpoly",
    "sturm_sequence",
    "sign_variations",
    "count_real_roots",
    "real_roots",
]

# Sturm remainders below this fraction of their dividend are treated as zero.
_STURM_ZERO = 1e-13


@dataclass(frozen=True)
class RealPoly:
    """Polynomial with real coefficients stored in ascending degree.

    Trailing (leading-degree) zero coefficients are trimmed on construction,
    so ``coefficients[-1]`` is nonzero unless the polynomial is identically 0,
    in which case ``coefficients == (0.0,)``.
    """

    coefficients: Tuple[float, ...]

    def __init__(self, coefficients: Sequence[float]):
        coef = [float(c) for c in coefficients]
        if not all(np.isfinite(coef)):
            raise ValueError("polynomial coefficients must be finite")
        while len(coef) > 1 and coef[-1] == 0.0:
            coef.pop()
        if not coef:
            coef = [0.0]
        object.__setattr__(self, "coefficients", tuple(coef))

    @property
    def degree(self) -> int:
        if len(self.coefficients) == 1 and self.coefficients[0] == 0.0:
            return -1
        return len(self.coefficients) - 1

    @property
    def leading(self) -> float:
        return self.coefficients[-1]

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RealPoly":
        c = self.coefficients
        return RealPoly([k * c[k] for k in range(1, len(c))] or [0.0])

    def divmod(self, other: "RealPoly") -> Tuple["RealPoly", "RealPoly"]:
        q, r = np.polynomial.polynomial.polydiv(self.coefficients, other.coefficients)
        return RealPoly(q), RealPoly(r)

    def scaled(self) -> "RealPoly":
        """Return the polynomial divided by its largest absolute coefficient."""
        big = max(abs(c) for c in self.coefficients)
        if big == 0.0:
            return self
        return RealPoly([c / big for c in self.coefficients])

    def cauchy_bound(self) -> float:
        """Radius containing every complex root."""
        c = self.coefficients
        if self.degree < 1:
            return 1.0
        return 1.0 + max(abs(ci / c[-1]) for ci in c[:-1])


def charpoly(M) -> RealPoly:
    """Characteristic polynomial ``det(x E - M)`` by Faddeev-LeVerrier.

    >>> charpoly([[0.0, -1.0], [1.0, 0.0]]).coefficients
    (1.0, 0.0, 1.0)
    """
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"charpoly needs a square matrix, got shape {A.shape}")
    n = A.shape[0]
    coef = np.zeros(n + 1)
    coef[n] = 1.0
    Mk = np.zeros_like(A)
    eye = np.eye(n)
    for k in range(1, n + 1):
        Mk = A @ Mk + coef[n - k + 1] * eye
        coef[n - k] = -np.trace(A @ Mk) / k
    return RealPoly(coef)


def sturm_sequence(p: RealPoly) -> List[RealPoly]:
    """Sturm chain ``p, p', -rem(p, p'), ...`` with each member rescaled.

    Remainders that are negligible relative to their dividend end the chain,
    so for a polynomial with a repeated root the chain stops at (an
    approximation of) ``gcd(p, p')`` and sign counts still give distinct roots.
    """
    p = p.scaled()
    chain = [p]
    if p.degree < 1:
        return chain
    chain.append(p.derivative().scaled())
    while chain[-1].degree > 0:
        a, b = chain[-2], chain[-1]
        _, r = a.divmod(b)
        size = max(abs(c) for c in a.coefficients)
        if max(abs(c) for c in r.coefficients) <= _STURM_ZERO * size:
            break
        chain.append(RealPoly([-c for c in r.coefficients]).scaled())
    return chain


def sign_variations(chain: Sequence[RealPoly], x: float) -> int:
    """Number of sign changes of the chain evaluated at ``x`` (zeros skipped)."""
    count = 0
    last = 0.0
    for q in chain:
        v = q(x)
        if v == 0.0:
            continue
        if last != 0.0 and (v > 0.0) != (last > 0.0):
            count += 1
        last = v
    return count


def _variations_at_infinity(chain: Sequence[RealPoly], positive: bool) -> int:
    count = 0
    last = 0.0
    for q in chain:
        if q.degree < 0:
            continue
        v = q.leading
        if not positive and q.degree % 2 == 1:
            v = -v
        if last != 0.0 and (v > 0.0) != (last > 0.0):
            count += 1
        last = v
    return count


def count_real_roots(p: RealPoly, chain: Sequence[RealPoly] | None = None) -> int:
    """Number of distinct real roots of ``p``."""
    if p.degree < 1:
        return 0
    chain = chain if chain is not None else sturm_sequence(p)
    return _variations_at_infinity(chain, False) - _variations_at_infinity(chain, True)


def _refine(p: RealPoly, chain, a: float, b: float, tol: float) -> float:
    # the open interval (a, b] holds exactly one distinct root
    fa, fb = p(a), p(b)
    if fb == 0.0:
        return b
    use_sign = fa * fb < 0.0
    va = sign_variations(chain, a) if not use_sign else 0
    for _ in range(200):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b or b - a <= tol * max(1.0, abs(mid)):
            break
        fm = p(mid)
        if fm == 0.0:
            return mid
        if use_sign:
            if (fm > 0.0) == (fa > 0.0):
                a, fa = mid, fm
            else:
                b = mid
        else:
            vm = sign_variations(chain, mid)
            if va - vm >= 1:
                b = mid
            else:
                a, va = mid, vm
    return 0.5 * (a + b)


def real_roots(p: RealPoly, tol: float = 1e-15) -> List[float]:
    """Distinct real roots of ``p`` in ascending order.

    Roots are isolated by Sturm counting on ``(-B, B]`` with ``B`` the Cauchy
    bound and refined by bisection to relative width ``tol`` (or until the
    floating-point midpoint stops moving).
    """
    if p.degree < 1:
        return []
    p = p.scaled()
    chain = sturm_sequence(p)
    total = count_real_roots(p, chain)
    if total == 0:
        return []
    bound = p.cauchy_bound()
    roots: List[float] = []
    stack = [(-bound, bound, sign_variations(chain, -bound), sign_variations(chain, bound))]
    while stack:
        a, b, va, vb = stack.pop()
        k = va - vb
        if k <= 0:
            continue
        if k == 1:
            roots.append(_refine(p, chain, a, b, tol))
            continue
        mid = 0.5 * (a + b)
        if b - a <= 1e-14 * max(1.0, abs(mid)) or mid <= a or mid >= b:
            # roots closer than resolution collapse to one representative
            roots.append(mid)
            continue
        vm = sign_variations(chain, mid)
        stack.append((mid, b, vm, vb))
        stack.append((a, mid, va, vm))
    roots.sort()
    return roots
