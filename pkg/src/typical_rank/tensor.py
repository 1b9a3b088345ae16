"""Dense real 3-way tensors and rank-one decompositions.

A :class:`Tensor3` of shape ``(d1, d2, d3)`` is viewed as the stack of
``d3`` frontal slices ``X_1, ..., X_{d3}``, each a ``d1 x d2`` matrix.  The
flat serialization is slice-major: entry ``(i, j, k)`` sits at offset
``k*d1*d2 + i*d2 + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .errors import ArgumentError, DimensionError, SingularError
from .linalg import TOL_LIN, as_matrix, rcond
from .rng import normals

__all__ = [
    "Tensor3",
    "RankOneTerm",
    "Decomposition",
    "slice_stack",
    "build_x_of_y",
    "reconstruct",
    "relative_residual",
    "gl_action",
    "permute_modes",
    "permute_decomposition",
    "random_gaussian",
    "from_pdq",
    "EPS_FLOOR",
]

EPS_FLOOR = 1e-300


class Tensor3:
    """Immutable dense ``d1 x d2 x d3`` real tensor.

    Parameters
    ----------
    array : array_like
        Entries indexed ``array[i, j, k]``; ``k`` selects the slice.
    """

    __slots__ = ("array",)

    def __init__(self, array):
        a = np.array(array, dtype=float)
        if a.ndim != 3:
            raise DimensionError(f"Tensor3 needs a 3-d array, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("tensor entries must be finite")
        a.setflags(write=False)
        self.array = a

    @classmethod
    def from_slices(cls, slices: Sequence) -> "Tensor3":
        mats = [as_matrix(s, "slice") for s in slices]
        if not mats:
            raise DimensionError("need at least one slice")
        if any(m.shape != mats[0].shape for m in mats):
            raise DimensionError("slices must share one shape")
        return cls(np.stack(mats, axis=2))

    @classmethod
    def from_flat(cls, dims: Sequence[int], data: Sequence[float]) -> "Tensor3":
        d1, d2, d3 = (int(d) for d in dims)
        flat = np.asarray(data, dtype=float)
        if flat.size != d1 * d2 * d3:
            raise DimensionError(f"expected {d1 * d2 * d3} entries, got {flat.size}")
        return cls(flat.reshape(d3, d1, d2).transpose(1, 2, 0))

    @classmethod
    def zeros(cls, shape: Tuple[int, int, int]) -> "Tensor3":
        return cls(np.zeros(shape))

    @property
    def shape(self) -> Tuple[int, int, int]:
        return self.array.shape  # type: ignore[return-value]

    def slice(self, k: int) -> np.ndarray:
        """Slice ``k`` (0-based), a ``d1 x d2`` matrix."""
        return self.array[:, :, k]

    @property
    def slices(self) -> List[np.ndarray]:
        return [self.array[:, :, k] for k in range(self.shape[2])]

    def to_flat(self) -> np.ndarray:
        return self.array.transpose(2, 0, 1).ravel()

    def norm(self) -> float:
        return float(np.linalg.norm(self.array))

    def __add__(self, other: "Tensor3") -> "Tensor3":
        return Tensor3(self.array + other.array)

    def __sub__(self, other: "Tensor3") -> "Tensor3":
        return Tensor3(self.array - other.array)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor3) and np.array_equal(self.array, other.array)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Tensor3(shape={self.shape})"


@dataclass(frozen=True)
class RankOneTerm:
    """The outer product ``u (x) v (x) w``."""

    u: np.ndarray
    v: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        for name in ("u", "v", "w"):
            vec = np.array(getattr(self, name), dtype=float).ravel()
            vec.setflags(write=False)
            object.__setattr__(self, name, vec)

    @property
    def shape(self) -> Tuple[int, int, int]:
        return (self.u.size, self.v.size, self.w.size)

    def full(self) -> np.ndarray:
        return np.einsum("i,j,k->ijk", self.u, self.v, self.w)


@dataclass(frozen=True)
class Decomposition:
    """Ordered list of rank-one terms for a tensor of shape ``shape``."""

    shape: Tuple[int, int, int]
    terms: Tuple[RankOneTerm, ...] = field(default_factory=tuple)

    def __post_init__(self):
        shape = tuple(int(d) for d in self.shape)
        terms = tuple(self.terms)
        for t in terms:
            if t.shape != shape:
                raise DimensionError(f"term of shape {t.shape} in decomposition of shape {shape}")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_factors(cls, U, V, W) -> "Decomposition":
        """Build from factor matrices whose columns are the term vectors."""
        U, V, W = (np.atleast_2d(np.asarray(F, dtype=float)) for F in (U, V, W))
        r = U.shape[1]
        if V.shape[1] != r or W.shape[1] != r:
            raise DimensionError("factor matrices must have the same number of columns")
        terms = tuple(RankOneTerm(U[:, j], V[:, j], W[:, j]) for j in range(r))
        return cls((U.shape[0], V.shape[0], W.shape[0]), terms)

    @property
    def rank(self) -> int:
        return len(self.terms)

    def factors(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        d1, d2, d3 = self.shape
        if not self.terms:
            return np.zeros((d1, 0)), np.zeros((d2, 0)), np.zeros((d3, 0))
        return (
            np.column_stack([t.u for t in self.terms]),
            np.column_stack([t.v for t in self.terms]),
            np.column_stack([t.w for t in self.terms]),
        )

    def __len__(self) -> int:
        return len(self.terms)


def slice_stack(X: Tensor3, count: int) -> np.ndarray:
    """Vertical stack of the first ``count`` slices, ``(count*d1) x d2``."""
    d1, d2, d3 = X.shape
    if not 1 <= count <= d3:
        raise DimensionError(f"count must lie in [1, {d3}], got {count}")
    return np.vstack([X.slice(k) for k in range(count)])


def build_x_of_y(Y: Sequence) -> Tensor3:
    """The ``n x ln x (l+1)`` tensor whose first ``l`` slices stack to the
    identity and whose last slice is ``(Y_1, ..., Y_l)``."""
    mats = [as_matrix(y, "Y_k") for y in Y]
    ell = len(mats)
    if ell < 1:
        raise DimensionError("need at least one matrix")
    n = mats[0].shape[0]
    if any(m.shape != (n, n) for m in mats):
        raise DimensionError("all Y_k must be square of equal size")
    p = ell * n
    slices = [np.eye(p)[k * n : (k + 1) * n] for k in range(ell)]
    slices.append(np.hstack(mats))
    return Tensor3.from_slices(slices)


def reconstruct(D: Decomposition) -> Tensor3:
    U, V, W = D.factors()
    return Tensor3(np.einsum("ir,jr,kr->ijk", U, V, W))


def relative_residual(T: Tensor3, D: Decomposition) -> float:
    """``||T - reconstruct(D)||_F / max(||T||_F, EPS_FLOOR)``."""
    if tuple(T.shape) != tuple(D.shape):
        raise DimensionError(f"tensor shape {T.shape} != decomposition shape {D.shape}")
    diff = np.linalg.norm(T.array - reconstruct(D).array)
    if diff == 0.0:
        return 0.0
    return float(diff / max(T.norm(), EPS_FLOOR))


def gl_action(P, Q, R, T: Tensor3) -> Tensor3:
    """Apply ``(P, Q, R)``: new slice ``w`` is ``sum_u R[w, u] P X_u Q^T``."""
    d1, d2, d3 = T.shape
    mats = [as_matrix(F, name) for F, name in ((P, "P"), (Q, "Q"), (R, "R"))]
    for F, d, name in zip(mats, (d1, d2, d3), "PQR"):
        if F.shape != (d, d):
            raise DimensionError(f"{name} must be {d} x {d}, got {F.shape}")
        if rcond(F) < TOL_LIN:
            raise SingularError(f"{name} is singular", rcond(F))
    P, Q, R = mats
    return Tensor3(np.einsum("is,jt,ku,stu->ijk", P, Q, R, T.array))


def _check_perm(perm) -> Tuple[int, int, int]:
    try:
        p = tuple(int(x) for x in perm)
    except (TypeError, ValueError) as exc:
        raise ArgumentError(f"invalid permutation {perm!r}") from exc
    if sorted(p) != [0, 1, 2]:
        raise ArgumentError(f"invalid permutation {perm!r}; expected an ordering of (0, 1, 2)")
    return p  # type: ignore[return-value]


def permute_modes(T: Tensor3, perm) -> Tensor3:
    """Relabel modes so that new mode ``a`` is old mode ``perm[a]``."""
    return Tensor3(np.transpose(T.array, _check_perm(perm)))


def permute_decomposition(D: Decomposition, perm) -> Decomposition:
    """Decomposition of ``permute_modes(T, perm)`` given one of ``T``."""
    p = _check_perm(perm)
    shape = tuple(D.shape[a] for a in p)
    terms = []
    for t in D.terms:
        vecs = (t.u, t.v, t.w)
        terms.append(RankOneTerm(*(vecs[a] for a in p)))
    return Decomposition(shape, tuple(terms))  # type: ignore[arg-type]


def random_gaussian(shape: Tuple[int, int, int], seed: int) -> Tensor3:
    """I.i.d. standard normal tensor drawn from the counter-based stream.

    Entries are filled in slice-major order from :func:`typical_rank.rng.normals`.
    """
    d1, d2, d3 = (int(d) for d in shape)
    if min(d1, d2, d3) < 1:
        raise DimensionError(f"dimensions must be positive, got {shape}")
    return Tensor3.from_flat((d1, d2, d3), normals(seed, d1 * d2 * d3))


def from_pdq(P, D: Sequence, Q) -> Tuple[Tensor3, Decomposition]:
    """Tensor with slices ``P diag(D_k) Q`` together with its decomposition.

    Term ``j`` is ``P[:, j] (x) Q[j, :] (x) (D_1[j], ..., D_{m3}[j])``.
    """
    P = as_matrix(P, "P")
    Q = as_matrix(Q, "Q")
    Dm = np.array([np.asarray(d, dtype=float).ravel() for d in D])
    r = P.shape[1]
    if Q.shape[0] != r or Dm.ndim != 2 or Dm.shape[1] != r:
        raise DimensionError(f"inconsistent shapes P {P.shape}, Q {Q.shape}, D {Dm.shape}")
    T = Tensor3.from_slices([(P * d) @ Q for d in Dm])
    return T, Decomposition.from_factors(P, Q.T, Dm)
