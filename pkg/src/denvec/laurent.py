"""Exact sparse Laurent-polynomial arithmetic over arbitrary-precision integers.

A polynomial lives in a fixed number of variables x1..xk and is stored as a
map from integer exponent vectors (tuples) to nonzero integer coefficients.
Instances are treated as immutable once constructed; every operation returns
a fresh value, so values can be shared freely between workers.

Resource guard
--------------
Expansions of cluster variables grow exponentially with mutation depth, so
every product-shaped operation is bounded by a single configurable "term
cap" (default 200 000). The cap limits both the number of stored terms and
the number of term-by-term products a multiplication, power, or exact
division is allowed to process. Exceeding it raises ResourceExceededError
immediately, which keeps both memory and wall time bounded: a trial on a
hard instance fails fast instead of hanging.
"""

from __future__ import annotations

from operator import add
from typing import Iterable, Iterator, Mapping

from .errors import ArityMismatchError, NotDivisibleError, ResourceExceededError

DEFAULT_TERM_CAP = 200_000

ExponentVector = tuple[int, ...]


class LaurentPolynomial:
    """Sparse Laurent polynomial with integer coefficients.

    Equality is structural (same arity, same term map). Hashing uses a
    cached canonical form, so polynomials can key dicts and sets; the term
    order for all serialization is ascending lexicographic on exponent
    vectors, which makes text forms and golden files reproducible.
    """

    __slots__ = ("arity", "terms", "_canon", "_minexp")

    def __init__(
        self,
        arity: int,
        terms: Mapping[Iterable[int], int] | Iterable[tuple[Iterable[int], int]] = (),
    ):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[ExponentVector, int] = {}
        for exps, coeff in items:
            key = tuple(exps)
            if len(key) != arity:
                raise ArityMismatchError(
                    f"exponent vector {key} has length {len(key)}, expected {arity}"
                )
            coeff = int(coeff)
            if coeff:
                prev = clean.get(key)
                if prev is None:
                    clean[key] = coeff
                elif prev + coeff:
                    clean[key] = prev + coeff
                else:
                    del clean[key]
        self.arity = arity
        self.terms = clean
        self._canon = None
        self._minexp = None

    @classmethod
    def _make(cls, arity: int, terms: dict[ExponentVector, int]) -> "LaurentPolynomial":
        # Internal fast path: `terms` must already be normalized.
        p = cls.__new__(cls)
        p.arity = arity
        p.terms = terms
        p._canon = None
        p._minexp = None
        return p

    @classmethod
    def zero(cls, arity: int) -> "LaurentPolynomial":
        return cls._make(arity, {})

    @classmethod
    def constant(cls, arity: int, value: int) -> "LaurentPolynomial":
        if not value:
            return cls.zero(arity)
        return cls._make(arity, {(0,) * arity: int(value)})

    @classmethod
    def one(cls, arity: int) -> "LaurentPolynomial":
        return cls.constant(arity, 1)

    @classmethod
    def monomial(cls, arity: int, exps: Iterable[int], coeff: int = 1) -> "LaurentPolynomial":
        key = tuple(exps)
        if len(key) != arity:
            raise ArityMismatchError(f"exponent vector has length {len(key)}, expected {arity}")
        if not coeff:
            return cls.zero(arity)
        return cls._make(arity, {key: int(coeff)})

    @classmethod
    def variable(cls, arity: int, index: int) -> "LaurentPolynomial":
        """The generator x_index, 1-based."""
        if not 1 <= index <= arity:
            raise IndexError(f"variable index {index} out of range 1..{arity}")
        exps = [0] * arity
        exps[index - 1] = 1
        return cls._make(arity, {tuple(exps): 1})

    # -- basic structure -------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def canonical_terms(self) -> tuple[tuple[ExponentVector, int], ...]:
        """Terms in ascending lexicographic order of exponent vectors."""
        if self._canon is None:
            self._canon = tuple(sorted(self.terms.items()))
        return self._canon

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, self.canonical_terms()))

    def _check_arity(self, other: "LaurentPolynomial") -> None:
        if self.arity != other.arity:
            raise ArityMismatchError(f"arity mismatch: {self.arity} vs {other.arity}")

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check_arity(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            prev = out.get(exps)
            if prev is None:
                out[exps] = coeff
            elif prev + coeff:
                out[exps] = prev + coeff
            else:
                del out[exps]
        return LaurentPolynomial._make(self.arity, out)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial._make(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def shift(self, exps: Iterable[int], coeff: int = 1) -> "LaurentPolynomial":
        """Multiply by the monomial coeff * x^exps in O(terms)."""
        vec = tuple(exps)
        if len(vec) != self.arity:
            raise ArityMismatchError(f"shift vector has length {len(vec)}, expected {self.arity}")
        if not coeff:
            return LaurentPolynomial.zero(self.arity)
        if coeff == 1:
            out = {tuple(map(add, e, vec)): c for e, c in self.terms.items()}
        else:
            out = {tuple(map(add, e, vec)): c * coeff for e, c in self.terms.items()}
        return LaurentPolynomial._make(self.arity, out)

    def mul(self, other: "LaurentPolynomial", cap: int = DEFAULT_TERM_CAP) -> "LaurentPolynomial":
        """Distributive product, guarded by the term cap.

        The guard bounds the number of term-by-term products up front:
        len(a) * len(b) must not exceed `cap`. Since the result has at most
        that many terms, this single check also bounds stored size.
        """
        self._check_arity(other)
        ta, tb = self.terms, other.terms
        if not ta or not tb:
            return LaurentPolynomial.zero(self.arity)
        if len(ta) == 1:
            ((e, c),) = ta.items()
            return other.shift(e, c)
        if len(tb) == 1:
            ((e, c),) = tb.items()
            return self.shift(e, c)
        if len(ta) * len(tb) > cap:
            raise ResourceExceededError(
                f"product needs {len(ta) * len(tb)} term products, cap is {cap}"
            )
        if len(ta) > len(tb):
            ta, tb = tb, ta
        items_b = list(tb.items())
        out: dict[ExponentVector, int] = {}
        for ea, ca in ta.items():
            for eb, cb in items_b:
                key = tuple(map(add, ea, eb))
                prev = out.get(key)
                if prev is None:
                    out[key] = ca * cb
                else:
                    prev = prev + ca * cb
                    if prev:
                        out[key] = prev
                    else:
                        del out[key]
        return LaurentPolynomial._make(self.arity, out)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self.mul(other)

    def square(self, cap: int = DEFAULT_TERM_CAP) -> "LaurentPolynomial":
        """Square using symmetry, halving the term products of mul(self)."""
        t = len(self.terms)
        if t <= 1:
            return self.mul(self, cap)
        pairs = t * (t + 1) // 2
        if pairs > cap:
            raise ResourceExceededError(f"square needs {pairs} term products, cap is {cap}")
        items = list(self.terms.items())
        out: dict[ExponentVector, int] = {}
        for i, (ea, ca) in enumerate(items):
            key = tuple(map(add, ea, ea))
            prev = out.get(key)
            out[key] = ca * ca if prev is None else prev + ca * ca
            for j in range(i + 1, t):
                eb, cb = items[j]
                key = tuple(map(add, ea, eb))
                val = 2 * ca * cb
                prev = out.get(key)
                if prev is None:
                    out[key] = val
                else:
                    prev = prev + val
                    if prev:
                        out[key] = prev
                    else:
                        del out[key]
        return LaurentPolynomial._make(self.arity, out)

    def pow_int(self, exponent: int, cap: int = DEFAULT_TERM_CAP) -> "LaurentPolynomial":
        """Nonnegative integer power by repeated squaring, cap-guarded."""
        if exponent < 0:
            raise ValueError("pow_int requires a nonnegative exponent")
        if exponent == 0:
            return LaurentPolynomial.one(self.arity)
        result: LaurentPolynomial | None = None
        base = self
        e = exponent
        while True:
            if e & 1:
                result = base if result is None else result.mul(base, cap)
            e >>= 1
            if not e:
                return result  # type: ignore[return-value]
            base = base.square(cap)

    def __pow__(self, exponent: int) -> "LaurentPolynomial":
        return self.pow_int(exponent)

    def div_exact(self, den: "LaurentPolynomial", cap: int = DEFAULT_TERM_CAP) -> "LaurentPolynomial":
        """Exact division: return q with q * den == self, else NotDivisibleError.

        Implemented as iterated elimination of the lexicographically
        leading term. Lexicographic order on integer exponent vectors is
        translation-invariant, so the leading term of a product is the
        product of leading terms; whenever a quotient exists the loop
        reconstructs it term by term. Two facts certify failure early:

        * over the integers the divisor's leading coefficient must divide
          every intermediate leading coefficient;
        * the quotient's exponents are confined to the componentwise box
          [min(num) - min(den), max(num) - max(den)] (Newton polytopes of
          exact factors add), so a candidate term outside it means there is
          no quotient. The box also forces termination: leading exponents
          strictly decrease and cannot descend forever inside a finite box.

        The work counter (one unit per divisor term touched) is bounded by
        `cap`, mirroring the multiplication guard.
        """
        self._check_arity(den)
        if not den.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return LaurentPolynomial.zero(self.arity)
        if len(den.terms) == 1:
            ((ed, cd),) = den.terms.items()
            neg = tuple(-x for x in ed)
            out: dict[ExponentVector, int] = {}
            for e, c in self.terms.items():
                q, r = divmod(c, cd)
                if r:
                    raise NotDivisibleError(
                        f"coefficient {c} not divisible by {cd} at exponent {e}"
                    )
                out[tuple(map(add, e, neg))] = q
            return LaurentPolynomial._make(self.arity, out)

        lo_n, hi_n = self._support_box()
        lo_d, hi_d = den._support_box()
        lo = tuple(map(lambda a, b: a - b, lo_n, lo_d))
        hi = tuple(map(lambda a, b: a - b, hi_n, hi_d))

        den_items = list(den.terms.items())
        lead_exp = max(den.terms)
        lead_coeff = den.terms[lead_exp]
        neg_lead = tuple(-x for x in lead_exp)

        remainder = dict(self.terms)
        quotient: dict[ExponentVector, int] = {}
        work = 0
        while remainder:
            er = max(remainder)
            te = tuple(map(add, er, neg_lead))
            if any(t < l or t > h for t, l, h in zip(te, lo, hi)):
                raise NotDivisibleError("nonzero remainder: quotient support bound violated")
            tc, rem = divmod(remainder[er], lead_coeff)
            if rem:
                raise NotDivisibleError(
                    f"leading coefficient {remainder[er]} not divisible by {lead_coeff}"
                )
            quotient[te] = tc
            work += len(den_items)
            if work > cap:
                raise ResourceExceededError(
                    f"division exceeded {cap} term products"
                )
            for e, c in den_items:
                key = tuple(map(add, te, e))
                prev = remainder.get(key)
                if prev is None:
                    remainder[key] = -tc * c
                else:
                    prev = prev - tc * c
                    if prev:
                        remainder[key] = prev
                    else:
                        del remainder[key]
        return LaurentPolynomial._make(self.arity, quotient)

    # -- inspection ------------------------------------------------------

    def _support_box(self) -> tuple[ExponentVector, ExponentVector]:
        it = iter(self.terms)
        first = next(it)
        lo = list(first)
        hi = list(first)
        for e in it:
            for i, v in enumerate(e):
                if v < lo[i]:
                    lo[i] = v
                elif v > hi[i]:
                    hi[i] = v
        return tuple(lo), tuple(hi)

    def min_exponents(self) -> ExponentVector:
        """Componentwise minimum of all exponent vectors (denominator data)."""
        if not self.terms:
            raise ValueError("the zero polynomial has no exponents")
        if self._minexp is None:
            it = iter(self.terms)
            lo = list(next(it))
            for e in it:
                for i, v in enumerate(e):
                    if v < lo[i]:
                        lo[i] = v
            self._minexp = tuple(lo)
        return self._minexp

    def max_exponents(self) -> ExponentVector:
        if not self.terms:
            raise ValueError("the zero polynomial has no exponents")
        it = iter(self.terms)
        hi = list(next(it))
        for e in it:
            for i, v in enumerate(e):
                if v > hi[i]:
                    hi[i] = v
        return tuple(hi)

    def coeffs_nonnegative(self) -> bool:
        """True iff every stored coefficient is positive (zeros are never stored)."""
        return all(c > 0 for c in self.terms.values())

    # -- text form ---------------------------------------------------------
    #
    # Canonical grammar (documented in the README):
    #   poly    := "0" | term (" + " term)*
    #   term    := coeff | varpart | coeff "*" varpart
    #   varpart := var ("*" var)*
    #   var     := "x" INDEX | "x" INDEX "^" EXPONENT
    # Zero exponents are omitted, exponent 1 is written bare, coefficient 1
    # is omitted when a varpart is present. Terms appear in ascending
    # lexicographic order of exponent vectors.

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.canonical_terms():
            factors = []
            for i, e in enumerate(exps, 1):
                if e == 1:
                    factors.append(f"x{i}")
                elif e:
                    factors.append(f"x{i}^{e}")
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{coeff}*" + "*".join(factors))
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.arity}, {self.text()!r})"


def product(
    factors: Iterable[LaurentPolynomial], arity: int, cap: int = DEFAULT_TERM_CAP
) -> LaurentPolynomial:
    """Multiply factors smallest-first; empty product is 1."""
    pending = sorted(factors, key=len)
    result = LaurentPolynomial.one(arity)
    for f in pending:
        result = result.mul(f, cap)
    return result
