"""Exchange matrices, seeds of geometric type, and mutation.

An extended exchange matrix is an (n+m) x n integer matrix: the top n x n
block is the exchange matrix proper (skew-symmetrizable, checked at
construction) and the m rows below it encode the coefficients as exponents
of frozen variables. A seed couples such a matrix with, for each of the n
mutable directions, the exact Laurent expansion of that cluster variable in
the variables of a fixed root seed (x1..xn cluster, x{n+1}..x{n+m} frozen).

Mutation in direction k replaces the k-th expansion by

    (prod_j x_j^[b_jk]_+  +  prod_j x_j^[-b_jk]_+) / x_k

with the products running over all n+m rows and x_j standing for the stored
expansions (mutable) or the frozen generators; the division is exact
whenever the seed is reachable from a valid root, and a failure to divide is
surfaced as a hard error. The matrix mutates alongside by the standard rule
applied to all n+m rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import InputError, NonReducedWalkError
from .laurent import DEFAULT_TERM_CAP, LaurentPolynomial, product
from .tropical import TropicalElement

Walk = tuple[int, ...]


def _find_skew_symmetrizer(rows: Sequence[Sequence[int]], n: int) -> tuple[int, ...] | None:
    """A positive integer diagonal S with S*B skew-symmetric, or None.

    Ratios s_i/s_j are forced along every edge with b_ij != 0; propagate
    them over each connected component with exact rationals, then clear
    denominators per component.
    """
    for i in range(n):
        if rows[i][i] != 0:
            return None
        for j in range(n):
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                return None
            if rows[i][j] != 0 and (rows[i][j] > 0) == (rows[j][i] > 0):
                return None
    scale: list[Fraction | None] = [None] * n
    for start in range(n):
        if scale[start] is not None:
            continue
        scale[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if rows[i][j] == 0:
                    continue
                # s_i * b_ij = -s_j * b_ji
                forced = scale[i] * Fraction(abs(rows[i][j]), abs(rows[j][i]))
                if scale[j] is None:
                    scale[j] = forced
                    stack.append(j)
                elif scale[j] != forced:
                    return None
    denom = lcm(*(f.denominator for f in scale)) if n else 1
    s = tuple(int(f * denom) for f in scale)
    for i in range(n):
        for j in range(n):
            if s[i] * rows[i][j] != -s[j] * rows[j][i]:
                return None
    return s


@dataclass(frozen=True)
class ExchangeMatrix:
    """Extended exchange matrix: (n+m) x n, top block skew-symmetrizable."""

    n: int
    m: int
    rows: tuple[tuple[int, ...], ...]
    skew_symmetrizer: tuple[int, ...] = field(init=False, compare=False)
    is_skew_symmetric: bool = field(init=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"rank must be at least 1, got {self.n}")
        if self.m < 0:
            raise InputError(f"number of frozen rows must be nonnegative, got {self.m}")
        if len(self.rows) != self.n + self.m:
            raise InputError(
                f"matrix has {len(self.rows)} rows, expected n+m = {self.n + self.m}"
            )
        for i, row in enumerate(self.rows, 1):
            if len(row) != self.n:
                raise InputError(f"row {i} has length {len(row)}, expected {self.n}")
        s = _find_skew_symmetrizer(self.rows, self.n)
        if s is None:
            raise InputError("top block is not skew-symmetrizable")
        skew = all(
            self.rows[i][j] == -self.rows[j][i]
            for i in range(self.n)
            for j in range(self.n)
        )
        object.__setattr__(self, "skew_symmetrizer", s)
        object.__setattr__(self, "is_skew_symmetric", skew)

    @classmethod
    def from_rows(cls, n: int, m: int, rows: Iterable[Iterable[int]]) -> "ExchangeMatrix":
        return cls(n, m, tuple(tuple(int(v) for v in row) for row in rows))

    def top(self) -> tuple[tuple[int, ...], ...]:
        """The n x n exchange block."""
        return self.rows[: self.n]

    def coefficient_rows(self) -> tuple[tuple[int, ...], ...]:
        return self.rows[self.n :]

    def y_elements(self) -> tuple[TropicalElement, ...]:
        """Coefficients read off the frozen rows: y_j = prod_i u_i^{c_ij}."""
        c = self.coefficient_rows()
        return tuple(
            TropicalElement(tuple(c[i][j] for i in range(self.m)))
            for j in range(self.n)
        )

    def mutate(self, k: int) -> "ExchangeMatrix":
        """Matrix mutation in direction k (1-based), on all n+m rows."""
        if not 1 <= k <= self.n:
            raise IndexError(f"direction {k} out of range 1..{self.n}")
        k0 = k - 1
        rows = self.rows
        new_rows = []
        for i in range(self.n + self.m):
            row = rows[i]
            b_ik = row[k0]
            new_row = []
            for j in range(self.n):
                if i == k0 or j == k0:
                    new_row.append(-row[j])
                else:
                    b_kj = rows[k0][j]
                    new_row.append(row[j] + b_ik * max(-b_kj, 0) + max(b_ik, 0) * b_kj)
            new_rows.append(tuple(new_row))
        return ExchangeMatrix(self.n, self.m, tuple(new_rows))

    def is_acyclic(self) -> bool:
        """No oriented cycle in the digraph with an edge i -> j iff b_ij > 0."""
        n = self.n
        succ = [[j for j in range(n) if self.rows[i][j] > 0] for i in range(n)]
        color = [0] * n  # 0 unvisited, 1 on stack, 2 done

        def visit(i: int) -> bool:
            color[i] = 1
            for j in succ[i]:
                if color[j] == 1:
                    return False
                if color[j] == 0 and not visit(j):
                    return False
            color[i] = 2
            return True

        return all(color[i] or visit(i) for i in range(n))

    def to_json_dict(self) -> dict:
        out: dict = {"n": self.n, "B": [list(r) for r in self.top()]}
        if self.m == 0:
            out["coeffs"] = "trivial"
        else:
            out["coeffs"] = {"C": [list(r) for r in self.coefficient_rows()]}
        return out


def matrix_from_json(data: dict) -> ExchangeMatrix:
    """Parse {"n": int, "B": [[int,...],...], "coeffs": spec} with located errors.

    `coeffs` is "trivial" (no frozen rows), "principal" (identity rows
    appended), or {"C": [[int,...],...]} with explicit coefficient rows.
    """
    if not isinstance(data, dict):
        raise InputError("matrix input must be a JSON object")
    try:
        n = int(data["n"])
    except (KeyError, TypeError, ValueError):
        raise InputError('matrix input needs an integer field "n"') from None
    b = data.get("B")
    if not isinstance(b, list) or len(b) != n:
        raise InputError(f'"B" must be a list of {n} rows')
    rows: list[tuple[int, ...]] = []
    for i, row in enumerate(b, 1):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"B row {i} must be a list of {n} integers")
        for j, v in enumerate(row, 1):
            if not isinstance(v, int) or isinstance(v, bool):
                raise InputError(f"B entry at row {i}, column {j} is not an integer")
        rows.append(tuple(row))
    coeffs = data.get("coeffs", "trivial")
    if coeffs == "trivial":
        m = 0
    elif coeffs == "principal":
        m = n
        for i in range(n):
            rows.append(tuple(1 if j == i else 0 for j in range(n)))
    elif isinstance(coeffs, dict) and "C" in coeffs:
        c = coeffs["C"]
        if not isinstance(c, list):
            raise InputError('"C" must be a list of rows')
        m = len(c)
        for i, row in enumerate(c, 1):
            if not isinstance(row, list) or len(row) != n:
                raise InputError(f"C row {i} must be a list of {n} integers")
            for j, v in enumerate(row, 1):
                if not isinstance(v, int) or isinstance(v, bool):
                    raise InputError(f"C entry at row {i}, column {j} is not an integer")
            rows.append(tuple(row))
    else:
        raise InputError('"coeffs" must be "trivial", "principal", or {"C": [...]}')
    try:
        return ExchangeMatrix(n, m, tuple(rows))
    except InputError:
        raise
    except Exception as exc:  # pragma: no cover - defensive
        raise InputError(str(exc)) from exc


def validate_walk(walk: Sequence[int], n: int) -> Walk:
    """Check 1-based directions and reducedness (no immediate repeats)."""
    out = tuple(int(k) for k in walk)
    for pos, k in enumerate(out, 1):
        if not 1 <= k <= n:
            raise InputError(f"walk step {pos}: direction {k} out of range 1..{n}")
    for pos in range(1, len(out)):
        if out[pos] == out[pos - 1]:
            raise NonReducedWalkError(
                f"walk not reduced: direction {out[pos]} repeats at steps {pos}, {pos + 1}"
            )
    return out


@dataclass(frozen=True)
class Seed:
    """A seed: extended matrix plus exact expansions w.r.t. the session root.

    `walk_from_root` records how the seed was produced and never takes part
    in equality: two seeds are equal iff matrix and expansions agree.
    """

    matrix: ExchangeMatrix
    vars: tuple[LaurentPolynomial, ...]
    walk_from_root: Walk = field(default=(), compare=False)

    @property
    def arity(self) -> int:
        return self.matrix.n + self.matrix.m


def root_seed(matrix: ExchangeMatrix) -> Seed:
    """The root: vars[l] is the bare monomial x_{l+1}."""
    arity = matrix.n + matrix.m
    vars_ = tuple(LaurentPolynomial.variable(arity, l + 1) for l in range(matrix.n))
    return Seed(matrix, vars_, ())


def exchange_numerator(seed: Seed, k: int, cap: int = DEFAULT_TERM_CAP) -> LaurentPolynomial:
    """The two-monomial exchange numerator for direction k, on expansions.

    Frozen variables contribute plain monomial factors; mutable ones
    contribute powers of their stored expansions.
    """
    n = seed.matrix.n
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} out of range 1..{n}")
    k0 = k - 1
    arity = seed.arity
    pos_mono = [0] * arity
    neg_mono = [0] * arity
    pos_factors: list[LaurentPolynomial] = []
    neg_factors: list[LaurentPolynomial] = []
    for j in range(arity):
        e = seed.matrix.rows[j][k0]
        if e > 0:
            if j < n:
                pos_factors.append(seed.vars[j].pow_int(e, cap))
            else:
                pos_mono[j] = e
        elif e < 0:
            if j < n:
                neg_factors.append(seed.vars[j].pow_int(-e, cap))
            else:
                neg_mono[j] = -e
    pos = product(pos_factors, arity, cap).shift(pos_mono)
    neg = product(neg_factors, arity, cap).shift(neg_mono)
    return pos + neg


def seed_mutate(seed: Seed, k: int, cap: int = DEFAULT_TERM_CAP) -> Seed:
    """Mutate in direction k: exact exchange-relation quotient plus matrix step."""
    numerator = exchange_numerator(seed, k, cap)
    return seed_mutate_with_numerator(seed, k, numerator, cap)


def seed_mutate_with_numerator(
    seed: Seed, k: int, numerator: LaurentPolynomial, cap: int = DEFAULT_TERM_CAP
) -> Seed:
    # Split out so callers that already built the numerator (for the
    # involution check: the numerator is direction-symmetric) can reuse it.
    new_var = numerator.div_exact(seed.vars[k - 1], cap)
    new_vars = list(seed.vars)
    new_vars[k - 1] = new_var
    return Seed(seed.matrix.mutate(k), tuple(new_vars), seed.walk_from_root + (k,))


def apply_walk(seed: Seed, walk: Sequence[int], cap: int = DEFAULT_TERM_CAP) -> Seed:
    """Left-to-right composition of mutations along a reduced walk."""
    path = validate_walk(walk, seed.matrix.n)
    current = seed
    for k in path:
        current = seed_mutate(current, k, cap)
    return current


def seed_key(seed: Seed) -> tuple:
    """Canonical key invariant under relabeling of cluster positions.

    Positions are sorted by the canonical text of their expansions (these
    are pairwise distinct on any valid seed); the same permutation is
    applied to the rows and columns of the exchange block, while frozen
    rows keep their order and only have their columns permuted.
    """
    n = seed.matrix.n
    texts = [v.text() for v in seed.vars]
    order = sorted(range(n), key=lambda l: texts[l])
    rows = seed.matrix.rows
    top = tuple(tuple(rows[i][j] for j in order) for i in order)
    frozen = tuple(tuple(rows[i][j] for j in order) for i in range(n, n + seed.matrix.m))
    return (tuple(texts[l] for l in order), top + frozen)
