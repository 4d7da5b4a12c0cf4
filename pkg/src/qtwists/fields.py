"""Exact arithmetic in quadratic fields Q(sqrt a) and biquadratic fields
Q(sqrt d, sqrt e), with the Galois action of the Klein four-group.

Conventions, fixed once and used by every module downstream:

* a biquadratic element is c1 + c2*sqrt(d) + c3*sqrt(e) + c4*sqrt(d*e),
  where sqrt(d*e) means the product sqrt(d)*sqrt(e) (that single sign
  choice pins the whole multiplication table and Galois action);
* NU negates sqrt(d), THETA negates sqrt(e); the fixed fields are
  therefore Q(sqrt e) for NU and Q(sqrt d) for THETA.

All values are immutable and all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm

from .rationals import (
    format_rational,
    is_squarefree,
    parse_rational,
    sqrt_rational,
    squarefree_part,
)

__all__ = [
    "Automorphism",
    "GROUP_ORDER",
    "QuadElt",
    "BiquadElt",
    "sqrt_in_quad",
    "sqrt_in_biquad",
]


class Automorphism(Enum):
    """Automorphism of Q(sqrt d, sqrt e), keyed by which square roots flip."""

    ID = (False, False)
    NU = (True, False)  # sqrt(d) -> -sqrt(d)
    THETA = (False, True)  # sqrt(e) -> -sqrt(e)
    NU_THETA = (True, True)  # sqrt(d*e) is fixed

    @property
    def negates_sqrt_d(self) -> bool:
        return self.value[0]

    @property
    def negates_sqrt_e(self) -> bool:
        return self.value[1]

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(
            (self.value[0] ^ other.value[0], self.value[1] ^ other.value[1])
        )

    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    Automorphism.ID: "1",
    Automorphism.NU: "nu",
    Automorphism.THETA: "theta",
    Automorphism.NU_THETA: "nu*theta",
}

# Row/column order used by every cocycle table in this package.
GROUP_ORDER = (
    Automorphism.ID,
    Automorphism.THETA,
    Automorphism.NU,
    Automorphism.NU_THETA,
)


def _check_disc(a: int) -> None:
    if a in (0, 1):
        raise ValueError(f"invalid field discriminant {a}: must not be 0 or 1")
    if not is_squarefree(a):
        raise ValueError(f"invalid field discriminant {a}: not squarefree")


@dataclass(frozen=True, eq=False)
class QuadElt:
    """x + y*sqrt(disc) with exact rational x, y and squarefree disc."""

    disc: int
    x: Fraction
    y: Fraction

    def __post_init__(self):
        _check_disc(self.disc)
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadElt.rational(self.disc, other)
        if not isinstance(other, QuadElt):
            return NotImplemented
        return (self.disc, self.x, self.y) == (other.disc, other.x, other.y)

    def __hash__(self):
        return hash((self.disc, self.x, self.y))

    @classmethod
    def rational(cls, disc: int, q: Fraction | int) -> "QuadElt":
        return cls(disc, Fraction(q), Fraction(0))

    def _coerce(self, other) -> "QuadElt":
        if isinstance(other, QuadElt):
            if other.disc != self.disc:
                raise ValueError(
                    f"mismatched quadratic fields: sqrt({self.disc}) vs sqrt({other.disc})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElt.rational(self.disc, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElt(self.disc, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElt(self.disc, -self.x, -self.y)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElt(
            self.disc,
            self.x * o.x + self.disc * self.y * o.y,
            self.x * o.y + self.y * o.x,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def inverse(self) -> "QuadElt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in quadratic field")
        return QuadElt(self.disc, self.x / n, -self.y / n)

    def conjugate(self) -> "QuadElt":
        return QuadElt(self.disc, self.x, -self.y)

    def norm(self) -> Fraction:
        """x**2 - disc * y**2, the product with the conjugate."""
        return self.x * self.x - self.disc * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_rational(self) -> bool:
        return self.y == 0

    def __str__(self):
        return _format_linear([(self.x, ""), (self.y, f"*sqrt({self.disc})")])

    def to_json(self) -> dict:
        return {
            "disc": str(self.disc),
            "coords": [format_rational(self.x), format_rational(self.y)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuadElt":
        return cls(
            int(data["disc"]),
            parse_rational(data["coords"][0]),
            parse_rational(data["coords"][1]),
        )


@dataclass(frozen=True, eq=False)
class BiquadElt:
    """c1 + c2*sqrt(d) + c3*sqrt(e) + c4*sqrt(d*e) over Q(sqrt d, sqrt e)."""

    d: int
    e: int
    c: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        _check_disc(self.d)
        _check_disc(self.e)
        if self.d == self.e:
            raise ValueError(f"d and e must differ (got d = e = {self.d})")
        if len(self.c) != 4:
            raise ValueError("biquadratic element needs exactly 4 coordinates")
        object.__setattr__(self, "c", tuple(Fraction(ci) for ci in self.c))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiquadElt.rational(self.d, self.e, other)
        if not isinstance(other, BiquadElt):
            return NotImplemented
        return (self.d, self.e, self.c) == (other.d, other.e, other.c)

    def __hash__(self):
        return hash((self.d, self.e, self.c))

    # -- constructors -------------------------------------------------------

    @classmethod
    def rational(cls, d: int, e: int, q: Fraction | int) -> "BiquadElt":
        return cls(d, e, (Fraction(q), Fraction(0), Fraction(0), Fraction(0)))

    @classmethod
    def from_quad(cls, q: QuadElt, d: int, e: int) -> "BiquadElt":
        """Embed an element of Q(sqrt a) where a is the squarefree part of
        d, e or d*e."""
        zero = Fraction(0)
        if q.disc == d:
            return cls(d, e, (q.x, q.y, zero, zero))
        if q.disc == e:
            return cls(d, e, (q.x, zero, q.y, zero))
        s, r = squarefree_part(d * e)
        if q.disc == s:
            # sqrt(s) = sqrt(d*e)/r
            return cls(d, e, (q.x, zero, zero, q.y / r))
        raise ValueError(
            f"Q(sqrt {q.disc}) is not a subfield of Q(sqrt {d}, sqrt {e})"
        )

    # -- ring structure ------------------------------------------------------

    def _coerce(self, other) -> "BiquadElt":
        if isinstance(other, BiquadElt):
            if (other.d, other.e) != (self.d, self.e):
                raise ValueError(
                    f"mismatched biquadratic fields: ({self.d},{self.e}) vs "
                    f"({other.d},{other.e})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return BiquadElt.rational(self.d, self.e, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return BiquadElt(self.d, self.e, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return BiquadElt(self.d, self.e, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d, e = self.d, self.e
        a1, a2, a3, a4 = self.c
        b1, b2, b3, b4 = o.c
        return BiquadElt(
            d,
            e,
            (
                a1 * b1 + d * a2 * b2 + e * a3 * b3 + d * e * a4 * b4,
                a1 * b2 + a2 * b1 + e * (a3 * b4 + a4 * b3),
                a1 * b3 + a3 * b1 + d * (a2 * b4 + a4 * b2),
                a1 * b4 + a4 * b1 + a2 * b3 + a3 * b2,
            ),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = BiquadElt.rational(self.d, self.e, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "BiquadElt":
        """Multiplicative inverse via the product of the three conjugates."""
        y = (
            self.galois(Automorphism.NU)
            * self.galois(Automorphism.THETA)
            * self.galois(Automorphism.NU_THETA)
        )
        n = (self * y).c
        assert n[1] == n[2] == n[3] == 0, "norm must be rational"
        if n[0] == 0:
            raise ZeroDivisionError("inverse of zero in biquadratic field")
        return BiquadElt(self.d, self.e, tuple(ci / n[0] for ci in y.c))

    # -- Galois action -------------------------------------------------------

    def galois(self, sigma: Automorphism) -> "BiquadElt":
        """Apply a field automorphism coordinatewise.

        The sqrt(d*e) coordinate flips exactly when one of sqrt(d), sqrt(e)
        flips, since sqrt(d*e) = sqrt(d)*sqrt(e) by convention.
        """
        c1, c2, c3, c4 = self.c
        if sigma.negates_sqrt_d:
            c2 = -c2
        if sigma.negates_sqrt_e:
            c3 = -c3
        if sigma.negates_sqrt_d != sigma.negates_sqrt_e:
            c4 = -c4
        return BiquadElt(self.d, self.e, (c1, c2, c3, c4))

    # -- predicates and projections ------------------------------------------

    def is_zero(self) -> bool:
        return all(ci == 0 for ci in self.c)

    def is_rational(self) -> bool:
        return self.c[1] == self.c[2] == self.c[3] == 0

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def to_quad(self) -> QuadElt:
        """Express self in the quadratic subfield it lies in, if any."""
        c1, c2, c3, c4 = self.c
        if c3 == 0 and c4 == 0:
            return QuadElt(self.d, c1, c2)
        if c2 == 0 and c4 == 0:
            return QuadElt(self.e, c1, c3)
        if c2 == 0 and c3 == 0:
            s, r = squarefree_part(self.d * self.e)
            return QuadElt(s, c1, c4 * r)
        raise ValueError(f"{self} does not lie in a quadratic subfield")

    def scale_to_integral(self) -> "BiquadElt":
        """Multiply by the square of the coordinate lcm denominator."""
        n = lcm(*(ci.denominator for ci in self.c))
        return self * Fraction(n * n)

    def __str__(self):
        de = self.d * self.e
        return _format_linear(
            [
                (self.c[0], ""),
                (self.c[1], f"*sqrt({self.d})"),
                (self.c[2], f"*sqrt({self.e})"),
                (self.c[3], f"*sqrt({de})"),
            ]
        )

    def to_json(self) -> list[str]:
        return [format_rational(ci) for ci in self.c]

    @classmethod
    def from_json(cls, d: int, e: int, data: list) -> "BiquadElt":
        if len(data) != 4:
            raise ValueError("biquadratic element JSON must have 4 entries")
        return cls(d, e, tuple(parse_rational(str(x)) for x in data))


def _format_linear(terms) -> str:
    parts = []
    for coeff, symbol in terms:
        if coeff == 0:
            continue
        body = format_rational(abs(coeff)) + symbol
        if not parts:
            parts.append(body if coeff > 0 else "-" + body)
        else:
            parts.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


# -- square roots -------------------------------------------------------------


def sqrt_in_quad(x: QuadElt) -> QuadElt | None:
    """A square root of x in Q(sqrt disc), or None if x is not a square.

    Writing s = u + v*sqrt(a): if x is rational this reduces to rational
    squareness of x or x/a; otherwise u**2 is a root of
    z**2 - x.x*z + a*x.y**2/4, which must be a rational square along with
    the discriminant x.x**2 - a*x.y**2 (the norm of x).
    """
    a = x.disc
    if x.y == 0:
        u = sqrt_rational(x.x)
        if u is not None:
            return QuadElt(a, u, Fraction(0))
        v = sqrt_rational(x.x / a)
        if v is not None:
            return QuadElt(a, Fraction(0), v)
        return None
    n = sqrt_rational(x.norm())
    if n is None:
        return None
    for root in ((x.x + n) / 2, (x.x - n) / 2):
        u = sqrt_rational(root)
        if u is not None and u != 0:
            return QuadElt(a, u, x.y / (2 * u))
    return None


def sqrt_in_biquad(x: BiquadElt) -> BiquadElt | None:
    """A square root of x in Q(sqrt d, sqrt e), or None if x is not a square.

    Treats the field as a quadratic extension of Q(sqrt e) by sqrt(d) and
    reduces to square roots there: with x = P + Q*sqrt(d), either Q = 0 and
    one of P, P/d is a square in Q(sqrt e), or A**2 is a root of
    z**2 - P*z + d*Q**2/4 over Q(sqrt e).
    """
    d, e = x.d, x.e
    c1, c2, c3, c4 = x.c
    p = QuadElt(e, c1, c3)
    q = QuadElt(e, c2, c4)
    if q.is_zero():
        a = sqrt_in_quad(p)
        if a is not None:
            return BiquadElt(d, e, (a.x, Fraction(0), a.y, Fraction(0)))
        b = sqrt_in_quad(p / d)
        if b is not None:
            return BiquadElt(d, e, (Fraction(0), b.x, Fraction(0), b.y))
        return None
    delta = sqrt_in_quad(p * p - d * q * q)
    if delta is None:
        return None
    for root in ((p + delta) / 2, (p - delta) / 2):
        a = sqrt_in_quad(root)
        if a is not None and not a.is_zero():
            b = q / (2 * a)
            return BiquadElt(d, e, (a.x, b.x, a.y, b.y))
    return None
