"""Exact coefficient rings: the rationals and the rational Burnside ring.

Rationals are plain :class:`fractions.Fraction` values.  The Burnside ring
``A_Q = Q[x]/(x^2 = 2x)`` is represented by :class:`BurnsideCoeff`, stored as
``q + qx*x``.  Its two idempotents are ``x/2`` and ``y = 1 - x/2``.
"""

from __future__ import annotations

from fractions import Fraction
import re

QQ = "Q"
AQ = "AQ"
RINGS = (QQ, AQ)


class RingMismatch(ValueError):
    pass


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class BurnsideCoeff:
    """Element ``q + qx*x`` of the rational Burnside ring."""

    __slots__ = ("q", "qx")

    def __init__(self, q=0, qx=0):
        self.q = as_fraction(q)
        self.qx = as_fraction(qx)

    @classmethod
    def coerce(cls, value) -> "BurnsideCoeff":
        if isinstance(value, BurnsideCoeff):
            return value
        return cls(value, 0)

    @classmethod
    def from_components(cls, fixed, free) -> "BurnsideCoeff":
        """Inverse of :meth:`components`: ``fixed`` is the ``x/2`` part, ``free`` the ``y`` part."""
        fixed, free = as_fraction(fixed), as_fraction(free)
        return cls(free, (fixed - free) / 2)

    def components(self) -> tuple[Fraction, Fraction]:
        """Image under the ring isomorphism ``A_Q -> Q x Q``, ``(q, qx) -> (q + 2qx, q)``."""
        return (self.q + 2 * self.qx, self.q)

    def __add__(self, other):
        other = BurnsideCoeff.coerce(other)
        return BurnsideCoeff(self.q + other.q, self.qx + other.qx)

    __radd__ = __add__

    def __neg__(self):
        return BurnsideCoeff(-self.q, -self.qx)

    def __sub__(self, other):
        return self + (-BurnsideCoeff.coerce(other))

    def __rsub__(self, other):
        return BurnsideCoeff.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BurnsideCoeff):
            f = as_fraction(other)
            return BurnsideCoeff(self.q * f, self.qx * f)
        q = self.q * other.q
        qx = self.q * other.qx + self.qx * other.q + 2 * self.qx * other.qx
        return BurnsideCoeff(q, qx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        f = as_fraction(other)
        return BurnsideCoeff(self.q / f, self.qx / f)

    def __bool__(self):
        return bool(self.q) or bool(self.qx)

    def __eq__(self, other):
        if isinstance(other, BurnsideCoeff):
            return self.q == other.q and self.qx == other.qx
        if isinstance(other, (int, Fraction)):
            return self.qx == 0 and self.q == other
        return NotImplemented

    def __hash__(self):
        if self.qx == 0:
            return hash(self.q)
        return hash((self.q, self.qx))

    def drop_x(self) -> "BurnsideCoeff":
        """Canonical representative on an element annihilated by ``x``.

        If ``x*m = 0`` then ``m = y*m`` and ``c*m = q*m``.
        """
        return BurnsideCoeff(self.q, 0) if self.qx else self

    def is_rational(self) -> bool:
        return self.qx == 0

    def __repr__(self):
        return f"BurnsideCoeff({self.q}, {self.qx})"

    def __str__(self):
        return format_coeff(self)


X = BurnsideCoeff(0, 1)
Y = BurnsideCoeff(1, Fraction(-1, 2))
ONE = BurnsideCoeff(1, 0)


def zero(ring: str):
    return BurnsideCoeff() if ring == AQ else Fraction(0)


def one(ring: str):
    return BurnsideCoeff(1) if ring == AQ else Fraction(1)


def coerce(value, ring: str):
    if ring == AQ:
        if isinstance(value, BurnsideCoeff):
            return value
        return BurnsideCoeff(as_fraction(value))
    if isinstance(value, BurnsideCoeff):
        if value.qx:
            raise RingMismatch(f"{value} is not rational")
        return value.q
    return as_fraction(value)


def format_rational(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_coeff(c) -> str:
    """Torus-polynomial coefficient syntax: ``3/2`` or ``(p/q + r/s x)``."""
    if isinstance(c, BurnsideCoeff):
        if c.qx == 0:
            return format_rational(c.q)
        sign = "-" if c.qx < 0 else "+"
        return f"({format_rational(c.q)} {sign} {format_rational(abs(c.qx))} x)"
    return format_rational(c)


_AQ_RE = re.compile(r"^\(\s*([-+]?\d+(?:/\d+)?)\s*([-+])\s*(\d+(?:/\d+)?)\s*x\s*\)$")


def parse_coeff(text: str, ring: str):
    text = text.strip()
    m = _AQ_RE.match(text)
    if m:
        if ring != AQ:
            raise RingMismatch(f"x-coefficient {text!r} in a rational polynomial")
        qx = Fraction(m.group(3))
        return BurnsideCoeff(Fraction(m.group(1)), qx if m.group(2) == "+" else -qx)
    return coerce(Fraction(text), ring)


def describe(c) -> str:
    """Human-facing coefficient text recognising multiples of ``x`` and ``y``."""
    if not isinstance(c, BurnsideCoeff) or c.qx == 0:
        return format_rational(c.q if isinstance(c, BurnsideCoeff) else c)
    fixed, free = c.components()
    if fixed == 0:
        return "y" if free == 1 else ("-y" if free == -1 else f"{format_rational(free)} y")
    if c.q == 0:
        return "x" if c.qx == 1 else ("-x" if c.qx == -1 else f"{format_rational(c.qx)} x")
    return format_coeff(c)
