"""Tropical semifield on integer exponent vectors.

An element of Trop(u1,...,um) is a monomial prod u_i^{a_i}, stored as the
vector (a_1,...,a_m). Multiplication adds exponent vectors and the auxiliary
addition takes componentwise minima, which makes every element invertible
and the addition idempotent.

This module is deliberately independent of the exchange-matrix machinery:
coefficient mutation implemented here is cross-checked in the test suite
against mutation of the coefficient rows of an extended exchange matrix,
and the two must agree exactly.
"""

from __future__ import annotations

from typing import Sequence

from .errors import ArityMismatchError


class TropicalElement:
    """A monomial in the tropical semifield, as its exponent vector."""

    __slots__ = ("exps",)

    def __init__(self, exps: Sequence[int]):
        self.exps = tuple(int(e) for e in exps)

    @classmethod
    def one(cls, m: int) -> "TropicalElement":
        return cls((0,) * m)

    @classmethod
    def generator(cls, m: int, index: int) -> "TropicalElement":
        """The generator u_index, 1-based."""
        if not 1 <= index <= m:
            raise IndexError(f"generator index {index} out of range 1..{m}")
        exps = [0] * m
        exps[index - 1] = 1
        return cls(exps)

    def _check(self, other: "TropicalElement") -> None:
        if len(self.exps) != len(other.exps):
            raise ArityMismatchError(
                f"tropical rank mismatch: {len(self.exps)} vs {len(other.exps)}"
            )

    def mul(self, other: "TropicalElement") -> "TropicalElement":
        self._check(other)
        return TropicalElement(tuple(a + b for a, b in zip(self.exps, other.exps)))

    __mul__ = mul

    def oplus(self, other: "TropicalElement") -> "TropicalElement":
        """Auxiliary addition: componentwise minimum of exponents."""
        self._check(other)
        return TropicalElement(tuple(min(a, b) for a, b in zip(self.exps, other.exps)))

    def inv(self) -> "TropicalElement":
        return TropicalElement(tuple(-a for a in self.exps))

    def pow(self, e: int) -> "TropicalElement":
        return TropicalElement(tuple(a * e for a in self.exps))

    __pow__ = pow

    def one_plus(self) -> "TropicalElement":
        """1 oplus self, i.e. componentwise min(0, exponent)."""
        return TropicalElement(tuple(min(0, a) for a in self.exps))

    def is_one(self) -> bool:
        return not any(self.exps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropicalElement):
            return NotImplemented
        return self.exps == other.exps

    def __hash__(self) -> int:
        return hash(self.exps)

    def __repr__(self) -> str:
        if not any(self.exps):
            return "TropicalElement(1)"
        body = "*".join(
            f"u{i}" if a == 1 else f"u{i}^{a}"
            for i, a in enumerate(self.exps, 1)
            if a
        )
        return f"TropicalElement({body})"


def y_mutate(
    y: Sequence[TropicalElement], matrix_rows: Sequence[Sequence[int]], k: int
) -> tuple[TropicalElement, ...]:
    """Mutate a coefficient tuple in direction k (1-based).

    The rule: the k-th coefficient inverts; every other y_i is multiplied
    by y_k^[b_ki]_+ and by (1 oplus y_k)^(-b_ki), where b_ki is the entry
    of the exchange matrix in row k, column i. Applying the rule twice at
    the same k is the identity.
    """
    n = len(y)
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} out of range 1..{n}")
    k0 = k - 1
    yk = y[k0]
    hinge = yk.one_plus()
    out = []
    for i0 in range(n):
        if i0 == k0:
            out.append(yk.inv())
            continue
        b_ki = matrix_rows[k0][i0]
        t = y[i0]
        if b_ki > 0:
            t = t.mul(yk.pow(b_ki))
        if b_ki:
            t = t.mul(hinge.pow(-b_ki))
        out.append(t)
    return tuple(out)


def trivial_coefficients(n: int) -> tuple[TropicalElement, ...]:
    """Coefficients in the one-element semifield (m = 0)."""
    return tuple(TropicalElement(()) for _ in range(n))


def principal_coefficients(n: int) -> tuple[TropicalElement, ...]:
    """y_j = u_j over Trop(u1,...,un)."""
    return tuple(TropicalElement.generator(n, j) for j in range(1, n + 1))
