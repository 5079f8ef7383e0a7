"""Drazin and group inverses by exact core-nilpotent decomposition.

For a square T with Drazin index k, the columns of T^k and the null space of
T^k split the space into an invertible core and a nilpotent part. Inverting
the core and zeroing the nilpotent part gives T^D exactly; no limits, no
numerics. The group inverse is the k <= 1 special case.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .matrices import (
    Matrix,
    ShapeMismatch,
    column_space_basis,
    inverse,
    kernel_basis,
    rank,
)


class NotGroupInvertible(ArithmeticError):
    """A group inverse was required but the Drazin index exceeds 1.

    ``index`` is the Drazin index of the offending matrix when known;
    ``condition`` names the violated equivalence condition when the refusal
    comes from a closed-form rule rather than direct computation.
    """

    def __init__(self, message: str, index: int | None = None,
                 condition: str | None = None):
        super().__init__(message)
        self.index = index
        self.condition = condition


@dataclass(frozen=True)
class DrazinResult:
    """The Drazin inverse T^D, its index, and T^pi = I - T*T^D."""

    drazin: Matrix
    index: int
    spectral_idempotent: Matrix


def _require_square(matrix: Matrix, op: str) -> None:
    if not matrix.is_square:
        raise ShapeMismatch(op, matrix.shape, matrix.shape)


def drazin_index(matrix: Matrix) -> int:
    """Smallest k >= 0 with rank(T^k) = rank(T^(k+1)); 0 for invertible T."""
    _require_square(matrix, "drazin_index")
    previous = matrix.rows
    power = matrix
    k = 0
    while True:
        r = rank(power)
        if r == previous:
            return k
        previous = r
        k += 1
        power = power * matrix


@lru_cache(maxsize=4096)
def drazin(matrix: Matrix) -> DrazinResult:
    """Drazin inverse via the core-nilpotent decomposition.

    Walk powers of T until the rank stabilizes at index k; then
    P = [pivot columns of T^k | kernel basis of T^k] is invertible and
    P^-1 T P = diag(C, N) with C invertible and N nilpotent. T^D is
    P diag(C^-1, 0) P^-1. Results are cached; matrices are immutable.
    """
    _require_square(matrix, "drazin")
    n = matrix.rows
    previous = n
    power = Matrix.identity(n)
    k = 0
    while True:
        next_power = power * matrix
        r = rank(next_power)
        if r == previous:
            break
        previous = r
        k += 1
        power = next_power
    if k == 0:
        d = inverse(matrix)
        return DrazinResult(d, 0, Matrix.zeros(n, n))
    core_basis = column_space_basis(power)      # power == T^k here
    null_basis = kernel_basis(power)
    r = core_basis.cols
    basis = Matrix.from_blocks([[core_basis, null_basis]])
    basis_inv = inverse(basis)
    in_basis = basis_inv * matrix * basis
    core = in_basis.submatrix(0, r, 0, r)
    core_inv = inverse(core)
    padded = Matrix.from_blocks([
        [core_inv, Matrix.zeros(r, n - r)],
        [Matrix.zeros(n - r, r), Matrix.zeros(n - r, n - r)],
    ])
    d = basis * padded * basis_inv
    pi = Matrix.identity(n) - matrix * d
    return DrazinResult(d, k, pi)


def group_inverse(matrix: Matrix) -> Matrix:
    """The group inverse T^#, defined only when the Drazin index is <= 1."""
    result = drazin(matrix)
    if result.index > 1:
        raise NotGroupInvertible(
            f"Drazin index is {result.index}", index=result.index
        )
    return result.drazin


def cline(a: Matrix, b: Matrix) -> DrazinResult:
    """Drazin inverse of a*b from the one of b*a: (ab)^D = a ((ba)^D)^2 b.

    Works for rectangular a (m x n) and b (n x m); the index and spectral
    idempotent are derived for the product a*b.
    """
    if a.cols != b.rows or a.rows != b.cols:
        raise ShapeMismatch("cline", a.shape, b.shape)
    ba_drazin = drazin(b * a).drazin
    product = a * b
    d = a * (ba_drazin * ba_drazin) * b
    k = drazin_index(product)
    pi = Matrix.identity(a.rows) - product * d
    return DrazinResult(d, k, pi)


def block_triangular_drazin(a: Matrix, c: Matrix, d: Matrix) -> Matrix:
    """Drazin inverse of [[a, 0], [c, d]] when a and d have group inverses.

    The mixing block is
        z = (d#)^2 c a^pi + d^pi c (a#)^2 - d# c a#
    and the result is [[a#, 0], [z, d#]]. It is the group inverse of the
    assembled matrix exactly when d^pi c a^pi = 0.
    """
    _require_square(a, "block_triangular_drazin")
    _require_square(d, "block_triangular_drazin")
    if c.rows != d.rows or c.cols != a.cols:
        raise ShapeMismatch("block_triangular_drazin", c.shape,
                            (d.rows, a.cols))
    a_result = drazin(a)
    if a_result.index > 1:
        raise NotGroupInvertible(
            f"upper-left block has Drazin index {a_result.index}",
            index=a_result.index,
        )
    d_result = drazin(d)
    if d_result.index > 1:
        raise NotGroupInvertible(
            f"lower-right block has Drazin index {d_result.index}",
            index=d_result.index,
        )
    a_sharp, a_pi = a_result.drazin, a_result.spectral_idempotent
    d_sharp, d_pi = d_result.drazin, d_result.spectral_idempotent
    z = (d_sharp * d_sharp * c * a_pi + d_pi * c * (a_sharp * a_sharp)
         - d_sharp * c * a_sharp)
    return Matrix.from_blocks([
        [a_sharp, Matrix.zeros(a.rows, d.cols)],
        [z, d_sharp],
    ])
