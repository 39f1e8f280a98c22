"""Denominator vectors, by two independent routes.

Route one reads a d-vector straight off a Laurent expansion: the j-th entry
is minus the minimal exponent of x_j over all terms, restricted to the n
mutable variables. Route two never touches polynomials: starting from
d(x_l) = -e_l at the reference seed, it propagates a recurrence along walk
edges using only exchange matrices. The engine checks the two routes against
each other at every visited seed; their agreement is also what pins down the
componentwise reading of the max in the recurrence.
"""

from __future__ import annotations

from typing import Sequence

from .laurent import LaurentPolynomial
from .seed import ExchangeMatrix, validate_walk

DVector = tuple[int, ...]


def neg_basis_dvectors(n: int) -> tuple[DVector, ...]:
    """Initial conditions at the reference seed: d(x_l) = -e_l."""
    return tuple(tuple(-(i == l) for i in range(n)) for l in range(n))


def dvec_from_expansion(p: LaurentPolynomial, n: int) -> DVector:
    """d_j = -(minimal exponent of x_j), for the first n variables."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no denominator vector")
    lo = p.min_exponents()
    return tuple(-lo[j] for j in range(n))


def dvec_recurrence_step(
    d_all: Sequence[DVector], matrix: ExchangeMatrix, k: int
) -> DVector:
    """New k-th d-vector after crossing an edge in direction k (1-based).

    d_new = -d_k + max( sum over b_ik > 0 of b_ik * d_i,
                        sum over b_ik < 0 of -b_ik * d_i )

    with the max of the two summed vectors taken componentwise and empty
    sums equal to the zero vector.
    """
    n = matrix.n
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} out of range 1..{n}")
    k0 = k - 1
    pos = [0] * n
    neg = [0] * n
    for i in range(n):
        b = matrix.rows[i][k0]
        if b > 0:
            di = d_all[i]
            for j in range(n):
                pos[j] += b * di[j]
        elif b < 0:
            di = d_all[i]
            for j in range(n):
                neg[j] -= b * di[j]
    dk = d_all[k0]
    return tuple(max(pos[j], neg[j]) - dk[j] for j in range(n))


def _cross(d_all: tuple[DVector, ...], matrix: ExchangeMatrix, k: int) -> tuple[DVector, ...]:
    out = list(d_all)
    out[k - 1] = dvec_recurrence_step(d_all, matrix, k)
    return tuple(out)


def dvec_walk_trace(
    matrix: ExchangeMatrix, walk: Sequence[int]
) -> tuple[list[tuple[DVector, ...]], list[ExchangeMatrix]]:
    """Per-vertex d-vectors w.r.t. the walk's start, plus per-vertex matrices."""
    path = validate_walk(walk, matrix.n)
    d_all = neg_basis_dvectors(matrix.n)
    trace = [d_all]
    matrices = [matrix]
    current = matrix
    for k in path:
        d_all = _cross(d_all, current, k)
        current = current.mutate(k)
        trace.append(d_all)
        matrices.append(current)
    return trace, matrices


def dvec_along_walk(matrix: ExchangeMatrix, walk: Sequence[int]) -> tuple[DVector, ...]:
    """The n d-vectors at the walk endpoint, w.r.t. the walk's start."""
    trace, _ = dvec_walk_trace(matrix, walk)
    return trace[-1]


def dvec_table(
    matrices: Sequence[ExchangeMatrix], walk: Sequence[int], ref: int
) -> list[tuple[DVector, ...]]:
    """d-vectors of every visited cluster w.r.t. the cluster at vertex `ref`.

    `matrices[s]` is the exchange matrix at vertex s of the walk
    (len(matrices) == len(walk) + 1). Entry [s][l] of the result is the
    d-vector of x_{l;s} with respect to the cluster at vertex ref. The
    recurrence is propagated outward from ref in both directions; crossing
    the edge between vertices s and s+1 always uses the matrix on the side
    the propagation currently stands.
    """
    j = len(walk)
    if len(matrices) != j + 1:
        raise ValueError(f"need {j + 1} matrices for a walk of length {j}")
    if not 0 <= ref <= j:
        raise IndexError(f"reference vertex {ref} out of range 0..{j}")
    table: list[tuple[DVector, ...] | None] = [None] * (j + 1)
    table[ref] = neg_basis_dvectors(matrices[0].n)
    for s in range(ref, 0, -1):
        table[s - 1] = _cross(table[s], matrices[s], walk[s - 1])
    for s in range(ref, j):
        table[s + 1] = _cross(table[s], matrices[s], walk[s])
    return table  # type: ignore[return-value]
