"""Exact rational functions over Q in named variables.

A :class:`Scalar` is a reduced fraction of two sparse polynomials with
rational coefficients.  The variable ``t`` is special: it is the deformation
parameter of degeneration certificates, it always sorts first, and
:func:`valuation_at_t` / :func:`limit_at_zero` expand in it while treating
every other variable as a generic (nonzero) parameter.

Polynomial storage, multiplication and gcd come from sympy's sparse
``PolyRing`` (gmpy2-backed when available).  Each scalar lives in the ring
of the variables it was built from; binary operations lift both operands to
the union ring, whose graded-lex order restricted to either operand is
unchanged, so the normalization below stays canonical.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from .errors import (
    LimitDivergesError,
    SubstitutionPoleError,
    ValuationError,
    ZeroDivisorError,
)

__all__ = [
    "T",
    "Scalar",
    "scalar",
    "var",
    "ZERO",
    "ONE",
    "arithmetic",
    "valuation_at_t",
    "limit_at_zero",
    "substitute",
    "format_fraction",
]

T = "t"

Number = Union[int, Fraction]


def _var_key(name: str):
    return (name != T, name)


def sort_variables(names: Iterable[str]) -> tuple[str, ...]:
    """``t`` first, then the remaining names alphabetically."""
    return tuple(sorted(set(names), key=_var_key))


@lru_cache(maxsize=None)
def _ring(symbols: tuple[str, ...]) -> PolyRing:
    return PolyRing(symbols, QQ, grlex)


@lru_cache(maxsize=4096)
def _union_ring(a: tuple[str, ...], b: tuple[str, ...]) -> PolyRing:
    return _ring(sort_variables(a + b))


def _names(ring) -> tuple[str, ...]:
    return tuple(str(s) for s in ring.symbols)


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _make(num, den) -> "Scalar":
    # reduce num/den and make the grlex-leading coefficient of den equal to 1
    if not num:
        return Scalar(num.ring.zero, num.ring.one)
    if not den:
        raise ZeroDivisorError("zero divisor")
    if den.is_one:
        return Scalar(num, den)
    if den.is_ground:
        c = den.LC
        return Scalar(num.quo_ground(c), den.ring.one)
    _, num, den = num.cofactors(den)
    c = den.LC
    if c != 1:
        num = num.quo_ground(c)
        den = den.quo_ground(c)
    return Scalar(num, den)


class Scalar:
    """Immutable canonical rational function.

    Build values with :func:`scalar` and :func:`var`; the constructor takes
    an already-canonical numerator/denominator pair.
    """

    __slots__ = ("num", "den", "_key")

    def __init__(self, num, den):
        _set = object.__setattr__
        _set(self, "num", num)
        _set(self, "den", den)
        _set(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- construction -----------------------------------------------------

    @staticmethod
    def const(value: Number) -> "Scalar":
        q = Fraction(value)
        R = _ring(())
        return Scalar(R(QQ(q.numerator, q.denominator)), R.one)

    @staticmethod
    def var(name: str) -> "Scalar":
        R = _ring((name,))
        return Scalar(R.gens[0], R.one)

    @staticmethod
    def from_polys(num, den=None) -> "Scalar":
        if den is None:
            den = num.ring.one
        return _make(num, den)

    # -- introspection ----------------------------------------------------

    @property
    def ring(self):
        return self.num.ring

    @property
    def variables(self) -> frozenset:
        names = _names(self.num.ring)
        used = set()
        for poly in (self.num, self.den):
            for monom in poly.itermonoms():
                for i, e in enumerate(monom):
                    if e:
                        used.add(names[i])
        return frozenset(used)

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num.is_one and self.den.is_one

    def is_constant(self) -> bool:
        return self.den.is_one and self.num.is_ground

    def is_polynomial(self) -> bool:
        return self.den.is_one

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return _to_fraction(self.num.LC) if self.num else Fraction(0)

    @property
    def size(self) -> int:
        """Rough expression size used for pivot selection."""
        return len(self.num) + len(self.den) - 1

    def lift(self, ring):
        """Numerator and denominator as polynomials of ``ring``."""
        if self.num.ring is ring:
            return self.num, self.den
        return self.num.set_ring(ring), self.den.set_ring(ring)

    # -- arithmetic -------------------------------------------------------

    def _pair(self, other: "Scalar"):
        ra, rb = self.num.ring, other.num.ring
        if ra is rb:
            return self.num, self.den, other.num, other.den
        R = _union_ring(_names(ra), _names(rb))
        an, ad = self.lift(R)
        bn, bd = other.lift(R)
        return an, ad, bn, bd

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        an, ad, bn, bd = self._pair(other)
        if ad == bd:
            return _make(an + bn, ad)
        return _make(an * bd + bn * ad, ad * bd)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        an, ad, bn, bd = self._pair(other)
        return _make(an * bn, ad * bd)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisorError("zero divisor")
        return _make(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise ZeroDivisorError("zero divisor")
        an, ad, bn, bd = self._pair(other)
        return _make(an * bd, ad * bn)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Scalar(self.num**exponent, self.den**exponent)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        an, ad, bn, bd = self._pair(other)
        return an == bn and ad == bd

    def __hash__(self):
        return hash(self.key())

    def __bool__(self):
        return bool(self.num)

    def key(self):
        """Ring-independent canonical key (used variables only)."""
        if self._key is None:
            names = _names(self.num.ring)
            used = [i for i, n in enumerate(names) if n in self.variables]

            def terms(poly):
                return frozenset(
                    (tuple(m[i] for i in used), _to_fraction(c)) for m, c in poly.iterterms()
                )

            object.__setattr__(self, "_key", (tuple(names[i] for i in used), terms(self.num), terms(self.den)))
        return self._key

    # -- printing ---------------------------------------------------------

    def __str__(self):
        num = _format_poly(self.num)
        if self.den.is_one:
            return num
        den = _format_poly(self.den)
        if len(self.num) > 1:
            num = f"({num})"
        if len(self.den) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _format_poly(poly) -> str:
    if not poly:
        return "0"
    names = _names(poly.ring)
    pieces = []
    for monom, c in poly.terms():
        q = _to_fraction(c)
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        sign = "-" if q < 0 else "+"
        q = abs(q)
        if factors:
            body = "*".join(factors)
            if q != 1:
                body = f"{format_fraction(q)}*{body}"
        else:
            body = format_fraction(q)
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _coerce(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar.const(value)
    return NotImplemented


def scalar(value) -> Scalar:
    """Coerce an int, Fraction or Scalar to a Scalar."""
    out = _coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot convert {value!r} to Scalar")
    return out


def var(name: str) -> Scalar:
    return Scalar.var(name)


ZERO = Scalar.const(0)
ONE = Scalar.const(1)


def arithmetic(f: Scalar, g: Scalar, op: str) -> Scalar:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown operation {op!r}")


def _t_order(poly, ti: int) -> int:
    return min(m[ti] for m in poly.itermonoms())


def valuation_at_t(f: Scalar) -> int:
    """Order of ``f`` at ``t = 0``; other variables are generic."""
    f = scalar(f)
    if not f.num:
        raise ValuationError("valuation of zero undefined")
    names = _names(f.ring)
    if T not in names:
        return 0
    ti = names.index(T)
    return _t_order(f.num, ti) - _t_order(f.den, ti)


def _at_t_zero(poly, ti: int, ring):
    # keep the t-free terms, dropping the t coordinate
    out = ring.zero
    for monom, c in poly.iterterms():
        if monom[ti] == 0:
            out[monom[:ti] + monom[ti + 1 :]] = c
    return out


def limit_at_zero(f: Scalar) -> Scalar:
    """``lim_{t -> 0} f`` as a t-free scalar; raises if it diverges."""
    f = scalar(f)
    if not f.num:
        return ZERO
    v = valuation_at_t(f)
    if v > 0:
        return ZERO
    if v < 0:
        raise LimitDivergesError(f"limit diverges: {f} has order {v} at t=0")
    names = _names(f.ring)
    if T not in names:
        return f
    ti = names.index(T)
    R = _ring(names[:ti] + names[ti + 1 :])
    return _make(_at_t_zero(f.num, ti, R), _at_t_zero(f.den, ti, R))


def _poly_at(poly, values):
    """Evaluate ``poly`` with generator i replaced by ``values[i]`` (Scalars)."""
    total = ZERO
    cache: dict = {}
    for monom, c in poly.iterterms():
        term = Scalar.const(_to_fraction(c))
        for i, e in enumerate(monom):
            if e:
                key = (i, e)
                p = cache.get(key)
                if p is None:
                    p = cache[key] = values[i] ** e
                term = term * p
        total = total + term
    return total


def substitute(f: Scalar, assignment: Mapping[str, object]) -> Scalar:
    """Replace variables by scalars; names absent from ``f`` are ignored."""
    f = scalar(f)
    names = _names(f.ring)
    used = f.variables
    subs = {n: scalar(v) for n, v in assignment.items() if n in used}
    if not subs:
        return f
    if all(v.is_polynomial() for v in subs.values()):
        symbols = set(names)
        for v in subs.values():
            symbols.update(_names(v.ring))
        R = _ring(sort_variables(symbols))
        num, den = f.lift(R)
        gens = {str(s): g for s, g in zip(R.symbols, R.gens)}
        pairs = [(gens[n], v.lift(R)[0]) for n, v in subs.items()]
        num = num.compose(pairs)
        den = den.compose(pairs)
        if not den:
            raise SubstitutionPoleError(f"substitution pole: denominator of {f} vanishes")
        return _make(num, den)
    values = [subs[n] if n in subs else Scalar.var(n) for n in names]
    num = _poly_at(f.num, values)
    den = _poly_at(f.den, values)
    if not den:
        raise SubstitutionPoleError(f"substitution pole: denominator of {f} vanishes")
    return num / den
