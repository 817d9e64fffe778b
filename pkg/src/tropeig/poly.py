"""Sparse exact polynomials in one perturbation variable t.

A ScalarPoly maps exponents (non-negative ints) to ExactComplex coefficients.
Zero coefficients are never stored, so the valuation ``ord`` is just the
smallest stored exponent and identity testing is dictionary equality.

Truncated power series reuse the same container: ``trunc = k`` means "terms
of degree >= k are unknown", not "they are zero".  Consequently the valuation
of a polynomial that is empty *up to its truncation order* is reported as
undetermined rather than infinite; downstream code must refuse to guess in
that case (see Ord.kind == "undetermined").
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

from .exact import EC_ONE, ExactComplex


@dataclass(frozen=True)
class Ord:
    """Valuation of a ScalarPoly: finite, +infinity, or unknown-but->=bound."""

    kind: str  # "finite" | "infinite" | "undetermined"
    value: Optional[int] = None  # exponent if finite, lower bound if undetermined

    @staticmethod
    def finite(k: int) -> "Ord":
        return Ord("finite", k)

    @staticmethod
    def infinite() -> "Ord":
        return Ord("infinite")

    @staticmethod
    def at_least(k: int) -> "Ord":
        return Ord("undetermined", k)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"

    @property
    def is_undetermined(self) -> bool:
        return self.kind == "undetermined"

    def __repr__(self):
        if self.is_finite:
            return str(self.value)
        if self.is_infinite:
            return "inf"
        return f">={self.value}?"


def _coerce(c) -> ExactComplex:
    return ExactComplex.from_value(c)


class ScalarPoly:
    """Immutable sparse polynomial/truncated series over ExactComplex."""

    __slots__ = ("terms", "trunc")

    def __init__(self, terms=None, trunc: Optional[int] = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if e < 0:
                    raise ValueError("negative exponent")
                c = _coerce(c)
                if c and (trunc is None or e < trunc):
                    clean[e] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, *a):
        raise AttributeError("ScalarPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(trunc: Optional[int] = None) -> "ScalarPoly":
        return ScalarPoly({}, trunc)

    @staticmethod
    def const(c) -> "ScalarPoly":
        return ScalarPoly({0: _coerce(c)})

    @staticmethod
    def monomial(exp: int, c=1) -> "ScalarPoly":
        return ScalarPoly({exp: _coerce(c)})

    @staticmethod
    def t() -> "ScalarPoly":
        return ScalarPoly({1: EC_ONE})

    @staticmethod
    def from_value(x) -> "ScalarPoly":
        if isinstance(x, ScalarPoly):
            return x
        return ScalarPoly.const(x)

    # -- structure ---------------------------------------------------------

    def ord(self) -> Ord:
        if self.terms:
            return Ord.finite(min(self.terms))
        if self.trunc is None:
            return Ord.infinite()
        return Ord.at_least(self.trunc)

    def is_zero(self) -> bool:
        """Exactly the zero polynomial (no truncation hedge)."""
        return not self.terms and self.trunc is None

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max(self.terms) if self.terms else -1

    def coefficient(self, exp: int) -> ExactComplex:
        return self.terms.get(exp, ExactComplex())

    def __eq__(self, other):
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        return self.terms == other.terms and self.trunc == other.trunc

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.trunc))

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _join_trunc(a: Optional[int], b: Optional[int]) -> Optional[int]:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other):
        other = ScalarPoly.from_value(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ExactComplex()) + c
        return ScalarPoly(out, self._join_trunc(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        return ScalarPoly({e: -c for e, c in self.terms.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-ScalarPoly.from_value(other))

    def __rsub__(self, other):
        return ScalarPoly.from_value(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, ScalarPoly):
            return self.scale(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                prev = out.get(e)
                out[e] = c1 * c2 if prev is None else prev + c1 * c2
        return ScalarPoly(out, self._join_trunc(self.trunc, other.trunc))

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "ScalarPoly":
        c = _coerce(c)
        return ScalarPoly({e: v * c for e, v in self.terms.items()}, self.trunc)

    def __truediv__(self, k):
        """Division by an exact scalar (used by integer-division recursions)."""
        inv = _coerce(k).inverse()
        return self.scale(inv)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = ScalarPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def rescale_t(self, c) -> "ScalarPoly":
        """Substitute t -> c*t for an exact nonzero scalar c."""
        c = _coerce(c)
        if not c:
            raise ValueError("rescaling by zero")
        out, p = {}, EC_ONE
        for e in range(0, self.degree() + 1):
            if e in self.terms:
                out[e] = self.terms[e] * p
            p = p * c
        return ScalarPoly(out, self.trunc)

    # -- numerics ----------------------------------------------------------

    def evaluate(self, z: complex) -> complex:
        """Horner evaluation after float conversion of the coefficients."""
        if not self.terms:
            return 0j
        exps = sorted(self.terms, reverse=True)
        acc = 0j
        prev = None
        for e in exps:
            if prev is not None:
                acc *= z ** (prev - e)
            acc += self.terms[e].to_complex()
            prev = e
        return acc * z ** exps[-1]

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(f"({c})*t^{e}" if e else f"({c})"
                              for e, c in sorted(self.terms.items()))
        return body + (f" + O(t^{self.trunc})" if self.trunc is not None else "")


def cos_series(order: int) -> ScalarPoly:
    """cos(t) truncated strictly below t^order."""
    terms = {}
    k = 0
    while 2 * k < order:
        terms[2 * k] = ExactComplex.make(Fraction((-1) ** k, factorial(2 * k)))
        k += 1
    return ScalarPoly(terms, trunc=order)


def sin_series(order: int) -> ScalarPoly:
    """sin(t) truncated strictly below t^order."""
    terms = {}
    k = 0
    while 2 * k + 1 < order:
        terms[2 * k + 1] = ExactComplex.make(Fraction((-1) ** k, factorial(2 * k + 1)))
        k += 1
    return ScalarPoly(terms, trunc=order)
