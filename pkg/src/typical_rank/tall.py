"""Explicit rank-u decompositions of generic ``n x u x m`` tensors.

For ``3 <= m <= n`` and ``(m-1)n < u < mn`` a generic tensor
``A = (A_1; ...; A_m)`` is simultaneously diagonalized by the ``u x u``
matrix ``H`` whose ``j``-th column spans the kernel of

    Y_j = [A_2 - t_j A_1; A_3 - t_j^2 A_1; ...; A_m - t_j^(m-1) A_1; B_j]

with ``B_j`` a 0/1 selector that pins the kernel to a line.  Then
``A_k H = A_1 H diag(t_1^(k-1), ..., t_u^(k-1))`` and the columns of
``A_1 H``, rows of ``H^-1`` and node powers give ``u`` rank-one terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DimensionError, NotGenericError, SingularError
from .linalg import TOL_LIN, inverse, kernel_vector, perp_vector, rcond
from .tensor import Decomposition, Tensor3, from_pdq

__all__ = [
    "TallShape",
    "tall_nodes",
    "selector_block",
    "build_yj",
    "build_h",
    "tall_decompose",
    "canonical_witness",
    "COFACTOR_LIMIT",
    "DEFAULT_NODES",
]

# perp vectors use exact cofactor minors up to this u, SVD kernels above it
COFACTOR_LIMIT = 10
# integer nodes 1..u leave H with condition numbers of 1e7..1e11 already at u=7..11
DEFAULT_NODES = "equispaced"


@dataclass(frozen=True)
class TallShape:
    """Shape ``n x u x m`` with ``3 <= m <= n <= u`` and ``(m-1)n < u < mn``."""

    m: int
    n: int
    u: int

    def __post_init__(self):
        m, n, u = self.m, self.n, self.u
        if not (3 <= m <= n <= u and (m - 1) * n < u < m * n):
            raise DimensionError(
                f"(m, n, u) = ({m}, {n}, {u}) needs 3 <= m <= n <= u and (m-1)n < u < mn"
            )

    @property
    def p(self) -> int:
        return (self.m - 1) * self.n

    @property
    def q(self) -> int:
        return self.u - self.p - 1

    @classmethod
    def of(cls, A: Tensor3) -> "TallShape":
        n, u, m = A.shape
        return cls(m, n, u)

    @property
    def dims(self):
        return (self.n, self.u, self.m)


def tall_nodes(u: int, nodes: Union[str, Sequence[float]] = DEFAULT_NODES) -> np.ndarray:
    """Distinct interpolation nodes ``t_1..t_u``.

    ``"integer"`` gives ``1..u``; ``"equispaced"`` gives ``u`` points in
    ``[-1, 1]``; a sequence is used verbatim.
    """
    if isinstance(nodes, str):
        if nodes == "integer":
            return np.arange(1, u + 1, dtype=float)
        if nodes == "equispaced":
            return np.linspace(-1.0, 1.0, u)
        raise ValueError(f"unknown node scheme {nodes!r}")
    t = np.asarray(nodes, dtype=float).ravel()
    if t.size != u or np.unique(t).size != u:
        raise ValueError(f"need {u} distinct nodes")
    return t


def selector_block(shape: TallShape, j: int) -> np.ndarray:
    """The ``q x u`` selector ``B_j`` (``j`` is 1-based)."""
    p, q, u = shape.p, shape.q, shape.u
    B = np.zeros((q, u))
    if q == 0:
        return B
    if j <= p + 1:
        B[:, p + 1 :] = np.eye(q)
    else:
        r = j - p - 1  # 1-based row carrying the column p+1 entry
        B[r - 1, p] = 1.0
        D = np.eye(q)
        D[r - 1, r - 1] = 0.0
        B[:, p + 1 :] = D
    return B


def build_yj(A: Tensor3, j: int, nodes=DEFAULT_NODES) -> np.ndarray:
    """The ``(u-1) x u`` matrix ``Y_j`` for 1-based column index ``j``."""
    shape = TallShape.of(A)
    if not 1 <= j <= shape.u:
        raise DimensionError(f"j must lie in [1, {shape.u}], got {j}")
    t = tall_nodes(shape.u, nodes)[j - 1]
    A1 = A.slice(0)
    rows = [A.slice(k) - t**k * A1 for k in range(1, shape.m)]
    rows.append(selector_block(shape, j))
    return np.vstack(rows)


def _kernel_of_wide(W: np.ndarray) -> np.ndarray:
    padded = np.vstack([W, np.zeros((1, W.shape[1]))])
    v, _ = kernel_vector(padded)
    return v


def build_h(A: Tensor3, nodes=DEFAULT_NODES) -> np.ndarray:
    """``u x u`` matrix of unit kernel vectors of ``Y_1, ..., Y_u``.

    Zero perp vectors (rank-deficient ``Y_j``) are kept as zero columns.
    """
    shape = TallShape.of(A)
    u = shape.u
    H = np.zeros((u, u))
    for j in range(1, u + 1):
        Y = build_yj(A, j, nodes)
        if u <= COFACTOR_LIMIT:
            col = perp_vector(Y)
        else:
            col = _kernel_of_wide(Y)
            # an SVD kernel is never zero; detect rank deficiency separately
            if np.linalg.svd(Y, compute_uv=False)[-1] <= TOL_LIN * max(1.0, np.linalg.norm(Y)):
                col = np.zeros(u)
        nrm = np.linalg.norm(col)
        if nrm > 0:
            H[:, j - 1] = col / nrm
    return H


def tall_decompose(A: Tensor3, nodes=DEFAULT_NODES) -> Decomposition:
    """Rank-``u`` decomposition of a generic ``n x u x m`` tensor.

    Raises
    ------
    DimensionError
        If the shape is not tall (see :class:`TallShape`).
    NotGenericError
        If ``H`` is numerically singular.
    """
    shape = TallShape.of(A)
    t = tall_nodes(shape.u, nodes)
    H = build_h(A, nodes)
    try:
        Hinv = inverse(H)
    except SingularError as exc:
        raise NotGenericError(f"kernel matrix H is singular (rcond={exc.rcond:.2e})") from exc
    P = A.slice(0) @ H
    D = [t**k for k in range(shape.m)]
    _, dec = from_pdq(P, D, Hinv)
    return dec


def canonical_witness(shape: TallShape, nodes=DEFAULT_NODES) -> Tensor3:
    """Tensor with ``A_1 = (E_n, ..., E_n, 1, O_q)`` and ``A_{s+1} = A_1 diag(t_1^s, ..., t_u^s)``.

    With ``nodes="integer"`` the nodes are ``1..u``.  For the same node
    scheme, every ``Y_j`` of the witness has its kernel on the ``j``-th axis,
    so :func:`build_h` returns a signed identity.
    """
    m, n, u = shape.m, shape.n, shape.u
    A1 = np.zeros((n, u))
    for b in range(m - 1):
        A1[:, b * n : (b + 1) * n] = np.eye(n)
    A1[:, shape.p] = 1.0
    t = tall_nodes(u, nodes)
    return Tensor3.from_slices([A1 * t**s for s in range(m)])
