"""Exact scalar arithmetic over the Gaussian rationals Q(i).

A scalar is (a/b) + (c/d)i with both parts kept as ``fractions.Fraction``
values, so numerators and denominators stay in lowest terms with positive
denominators and nothing ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

_ZERO = Fraction(0)
_ONE = Fraction(1)

_FRACTION_NEW = Fraction.__new__


def _frac(num: int, den: int) -> Fraction:
    # Build a Fraction from a raw numerator and a positive denominator,
    # reducing once. Bypasses Fraction.__new__'s type dispatch, which
    # dominates the cost of exact linear algebra if left in the loop.
    g = gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    out = _FRACTION_NEW(Fraction)
    out._numerator = num
    out._denominator = den
    return out


class ScalarParseError(ValueError):
    """A scalar string that does not match the grammar.

    ``offset`` is the byte position of the first offending character (the
    grammar is pure ASCII, so byte and character offsets coincide).
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class GaussianRational:
    """An element of Q(i); immutable, hashable, truthy iff nonzero."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _new(cls, re: Fraction, im: Fraction) -> GaussianRational:
        # Internal fast constructor: both arguments must already be Fractions.
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @staticmethod
    def _coerce(value) -> GaussianRational | None:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational._new(Fraction(value), _ZERO)
        return None

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        # Matches the numeric tower for real values, so x == 2 implies
        # hash(x) == hash(2).
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other) -> GaussianRational:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.re, other.re
        c, d = self.im, other.im
        an, ad = a._numerator, a._denominator
        bn, bd = b._numerator, b._denominator
        cn, cd = c._numerator, c._denominator
        dn, dd = d._numerator, d._denominator
        return GaussianRational._new(
            _frac(an * bd + bn * ad, ad * bd),
            _frac(cn * dd + dn * cd, cd * dd),
        )

    __radd__ = __add__

    def __sub__(self, other) -> GaussianRational:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.re, other.re
        c, d = self.im, other.im
        an, ad = a._numerator, a._denominator
        bn, bd = b._numerator, b._denominator
        cn, cd = c._numerator, c._denominator
        dn, dd = d._numerator, d._denominator
        return GaussianRational._new(
            _frac(an * bd - bn * ad, ad * bd),
            _frac(cn * dd - dn * cd, cd * dd),
        )

    def __rsub__(self, other) -> GaussianRational:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self) -> GaussianRational:
        re = _FRACTION_NEW(Fraction)
        re._numerator = -self.re._numerator
        re._denominator = self.re._denominator
        im = _FRACTION_NEW(Fraction)
        im._numerator = -self.im._numerator
        im._denominator = self.im._denominator
        return GaussianRational._new(re, im)

    def __mul__(self, other) -> GaussianRational:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = other.re, other.im
        an, ad = a._numerator, a._denominator
        cn, cd = c._numerator, c._denominator
        # Purely real factors dominate in practice; skip the cross terms.
        if not b._numerator:
            if not d._numerator:
                return GaussianRational._new(_frac(an * cn, ad * cd), _ZERO)
            return GaussianRational._new(
                _frac(an * cn, ad * cd),
                _frac(an * d._numerator, ad * d._denominator),
            )
        bn, bd = b._numerator, b._denominator
        if not d._numerator:
            return GaussianRational._new(
                _frac(an * cn, ad * cd),
                _frac(bn * cn, bd * cd),
            )
        dn, dd = d._numerator, d._denominator
        return GaussianRational._new(
            _frac(an * cn * bd * dd - bn * dn * ad * cd, ad * cd * bd * dd),
            _frac(an * dn * bd * cd + bn * cn * ad * dd, ad * dd * bd * cd),
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> GaussianRational:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> GaussianRational:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def conjugate(self) -> GaussianRational:
        return GaussianRational._new(self.re, -self.im)

    def inverse(self) -> GaussianRational:
        """Multiplicative inverse; raises ZeroDivisionError at zero."""
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("zero has no inverse in Q(i)")
        return GaussianRational._new(self.re / norm, -self.im / norm)

    def __str__(self) -> str:
        re, im = self.re, self.im
        if not im:
            return str(re)
        if im == 1:
            imag = "i"
        elif im == -1:
            imag = "-i"
        else:
            imag = f"{im}i"
        if not re:
            return imag
        sign = "+" if im > 0 else ""
        return f"{re}{sign}{imag}"

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def _parse_term(text: str, pos: int) -> tuple[Fraction, bool, int]:
    """Parse ``["-"] (digits ["/" digits] ["i"] | "i")`` starting at pos.

    Returns (value, is_imaginary, next_pos). The sign belongs to the term,
    so "-i" and "-2/3i" both parse here.
    """
    n = len(text)
    negative = False
    if pos < n and text[pos] == "-":
        negative = True
        pos += 1
    if pos < n and text[pos] == "i":
        return (-_ONE if negative else _ONE), True, pos + 1
    start = pos
    while pos < n and text[pos].isdigit():
        pos += 1
    if pos == start:
        raise ScalarParseError("expected a digit", pos)
    numerator = int(text[start:pos])
    denominator = 1
    if pos < n and text[pos] == "/":
        pos += 1
        den_start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == den_start:
            raise ScalarParseError("expected a digit", pos)
        denominator = int(text[den_start:pos])
        if denominator == 0:
            raise ScalarParseError("denominator must be nonzero", den_start)
    value = Fraction(-numerator if negative else numerator, denominator)
    if pos < n and text[pos] == "i":
        return value, True, pos + 1
    return value, False, pos


def parse_scalar(text: str) -> GaussianRational:
    """Parse a scalar string into a GaussianRational.

    Grammar::

        scalar := real | imag | real sign imag
        real   := rat
        imag   := [rat] "i"        (a bare sign is allowed: "-i")
        rat    := ["-"] digits ["/" digits]   with a nonzero denominator

    Examples: "0", "3/2", "-i", "2/3-5/7i". Whitespace may surround the
    scalar and the connecting sign. Anything else raises ScalarParseError
    with the byte offset of the problem.
    """
    n = len(text)
    pos = 0
    while pos < n and text[pos] in " \t":
        pos += 1
    first, first_imag, pos = _parse_term(text, pos)
    while pos < n and text[pos] in " \t":
        pos += 1
    re_part, im_part = (_ZERO, first) if first_imag else (first, _ZERO)
    if pos < n and text[pos] in "+-":
        if first_imag:
            raise ScalarParseError("imaginary term must come last", pos)
        sign = -1 if text[pos] == "-" else 1
        pos += 1
        while pos < n and text[pos] in " \t":
            pos += 1
        term_start = pos
        second, second_imag, pos = _parse_term(text, pos)
        if not second_imag:
            raise ScalarParseError("expected an imaginary term", term_start)
        im_part = sign * second
    while pos < n and text[pos] in " \t":
        pos += 1
    if pos != n:
        raise ScalarParseError("unexpected character", pos)
    return GaussianRational._new(re_part, im_part)
