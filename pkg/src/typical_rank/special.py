"""Named tensors with known sign behaviour of ``det M(a, Y)``."""

import numpy as np

__all__ = ["quaternion_pair", "boundary_example", "boundary_example_det"]


def quaternion_pair():
    """Left multiplication by ``i`` and ``j`` on the quaternions (basis 1, i, j, k).

    ``det(a1 L_i + a2 L_j - a3 E_4) = (a1**2 + a2**2 + a3**2)**2``, so the
    pencil never degenerates off the origin.
    """
    Li = np.array(
        [
            [0.0, -1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
        ]
    )
    Lj = np.array(
        [
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
        ]
    )
    return [Li, Lj]


def boundary_example():
    """The pair ``(A_1, A_2)`` of 6x6 matrices whose pencil determinant is
    nonnegative with a nontrivial zero at ``a3 = 0, a1 = -a2``.

    ``det(a1 A_1 + a2 A_2 - a3 E_6) = a3^2 (a1 a2 - a3^2)^2 + (a1^3 + a2^3)^2``.
    """
    A1 = np.zeros((6, 6))
    for r in range(1, 6):
        A1[r, r - 1] = 1.0
    A1[0, 5] = -1.0
    A2 = np.zeros((6, 6))
    A2[0, 1] = -1.0
    A2[1, 2] = 1.0
    A2[2, 3] = 1.0
    A2[3, 4] = -1.0
    A2[4, 5] = 1.0
    A2[5, 0] = -1.0
    return [A1, A2]


def boundary_example_det(a1: float, a2: float, a3: float) -> float:
    """Closed form of the pencil determinant of :func:`boundary_example`."""
    return a3**2 * (a1 * a2 - a3**2) ** 2 + (a1**3 + a2**3) ** 2
