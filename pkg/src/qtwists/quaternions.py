"""Hilbert symbols over Q, ramification of quaternion algebras (a,b), and
equivalence of ternary diagonal quadratic forms via Hasse-Witt invariants.

Places of Q are either a prime number or the string "inf".  Only finitely
many places ever need probing: the infinite place, 2, and the odd primes
dividing a numerator or denominator of the inputs; the symbol is +1
everywhere else because units pair trivially at odd primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rationals import factorize, is_prime, squarefree_part

__all__ = [
    "INF",
    "hilbert_symbol",
    "ramified_places",
    "reduced_discriminant",
    "is_trivial",
    "TernaryForm",
    "hasse_witt",
    "forms_equivalent",
]

INF = "inf"  # archimedean place


def _validate_place(v) -> None:
    if v == INF:
        return
    if isinstance(v, int) and is_prime(v):
        return
    raise ValueError(f"invalid place {v!r}: expected a prime or 'inf'")


def _val_unit(q: Fraction, p: int) -> tuple[int, Fraction]:
    """p-adic valuation of q and the unit part q / p**val."""
    val = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        val += 1
    while den % p == 0:
        den //= p
        val -= 1
    return val, Fraction(num, den)


def _unit_residue(u: Fraction, modulus: int) -> int:
    """Residue of a p-adic unit written as a fraction, mod p or mod 8."""
    return u.numerator * pow(u.denominator, -1, modulus) % modulus


def _legendre_unit(u: Fraction, p: int) -> int:
    """Legendre symbol of a unit at an odd prime p, via Euler's criterion."""
    r = _unit_residue(u, p)
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def hilbert_symbol(a: Fraction | int, b: Fraction | int, v) -> int:
    """The local Hilbert symbol (a,b)_v in {+1, -1} for nonzero rationals.

    At the infinite place the symbol is -1 iff both arguments are negative;
    at odd p it is computed from valuations and Legendre symbols; at 2 from
    the classical unit formulas eps (mod 4) and omega (mod 8).
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol requires nonzero arguments")
    _validate_place(v)
    if v == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = v
    alpha, u = _val_unit(a, p)
    beta, w = _val_unit(b, p)
    if p == 2:
        eps_u = (_unit_residue(u, 4) - 1) // 2
        eps_w = (_unit_residue(w, 4) - 1) // 2
        omega_u = (_unit_residue(u, 8) ** 2 - 1) // 8
        omega_w = (_unit_residue(w, 8) ** 2 - 1) // 8
        exponent = eps_u * eps_w + alpha * omega_w + beta * omega_u
        return -1 if exponent % 2 else 1
    sign = 1
    if (alpha * beta * (p - 1) // 2) % 2:
        sign = -sign
    if beta % 2 and _legendre_unit(u, p) == -1:
        sign = -sign
    if alpha % 2 and _legendre_unit(w, p) == -1:
        sign = -sign
    return sign


def _candidate_places(*values: Fraction) -> list:
    primes = {2}
    for q in values:
        primes.update(factorize(q.numerator))
        primes.update(factorize(q.denominator))
    primes.discard(1)
    return [INF] + sorted(primes)


def ramified_places(a: Fraction | int, b: Fraction | int) -> frozenset:
    """The (even-cardinality) set of places where (a,b) ramifies."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("quaternion algebra (a,b) requires nonzero a, b")
    ramified = frozenset(
        v for v in _candidate_places(a, b) if hilbert_symbol(a, b, v) == -1
    )
    # Product formula: ramification sets always have even size.
    assert len(ramified) % 2 == 0, (a, b, ramified)
    return ramified


def reduced_discriminant(a: Fraction | int, b: Fraction | int) -> int:
    """Product of the finite primes where the algebra (a,b) ramifies."""
    prod = 1
    for v in ramified_places(a, b):
        if v != INF:
            prod *= v
    return prod


def is_trivial(a: Fraction | int, b: Fraction | int) -> bool:
    """True iff (a,b) is split at every place of Q."""
    places = ramified_places(a, b)
    trivial = not places
    # Reduced discriminant 1 is equivalent, by the parity of ramification.
    assert trivial == (reduced_discriminant(a, b) == 1)
    return trivial


@dataclass(frozen=True)
class TernaryForm:
    """Diagonal form a*X**2 + b*Y**2 + c*Z**2 with nonzero rationals."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a == 0 or self.b == 0 or self.c == 0:
            raise ValueError("ternary form coefficients must be nonzero")

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def negatives(self) -> int:
        return sum(1 for x in self.coefficients if x < 0)

    def discriminant(self) -> Fraction:
        return self.a * self.b * self.c


def hasse_witt(form: TernaryForm, v) -> int:
    """Hasse-Witt invariant (a,b)_v (a,c)_v (b,c)_v of a diagonal form."""
    a, b, c = form.coefficients
    return (
        hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v) * hilbert_symbol(b, c, v)
    )


def forms_equivalent(f: TernaryForm, g: TernaryForm) -> bool:
    """Rational equivalence of ternary diagonal forms.

    Two nondegenerate forms of equal rank are equivalent over Q iff they
    have the same signature over R, the same discriminant up to squares,
    and the same Hasse-Witt invariant at every finite place; only 2 and the
    primes visible in the coefficients can tell them apart.
    """
    if f.negatives() != g.negatives():
        return False
    if squarefree_part(f.discriminant())[0] != squarefree_part(g.discriminant())[0]:
        return False
    places = set(_candidate_places(*f.coefficients, *g.coefficients)) - {INF}
    return all(hasse_witt(f, p) == hasse_witt(g, p) for p in places)
