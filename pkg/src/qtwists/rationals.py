"""Exact rational plumbing: factorization, squarefree parts, square tests.

Everything here is deterministic and exact.  Rationals are
``fractions.Fraction`` throughout (lowest terms, positive denominator come
for free); integers are arbitrary precision.  Factorization is plain trial
division with a hard bound so that behaviour on oversized inputs is an
explicit error, never a silent wrong answer.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from math import isqrt

__all__ = [
    "FactorizationBoundError",
    "factorize",
    "is_prime",
    "is_squarefree",
    "squarefree_part",
    "is_rational_square",
    "sqrt_rational",
    "parse_rational",
    "format_rational",
]

# Trial division bound; overridable via the environment for unusually large
# desk inputs.  Inputs whose factorization cannot be certified below the
# bound raise FactorizationBoundError.
DEFAULT_FACTOR_BOUND = int(os.environ.get("QTWISTS_FACTOR_BOUND", 10_000_000))

_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class FactorizationBoundError(ValueError):
    """Raised when trial division cannot certify a factorization."""


def factorize(n: int, bound: int | None = None) -> dict[int, int]:
    """Factor ``|n|`` into primes by trial division.

    Returns a ``{prime: exponent}`` dict (sign is discarded; ``|n|`` must be
    nonzero).  Raises FactorizationBoundError if a cofactor survives beyond
    the bound and cannot be certified prime.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    if bound is None:
        bound = DEFAULT_FACTOR_BOUND
    m = abs(n)
    factors: dict[int, int] = {}
    for p in _trial_candidates(bound):
        if p * p > m:
            break
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
    if m > 1:
        if isqrt(m) > bound:
            raise FactorizationBoundError(
                f"factorization bound exceeded: cofactor {m} not certified by "
                f"trial division up to {bound}"
            )
        factors[m] = factors.get(m, 0) + 1
    return factors


def _trial_candidates(bound):
    yield 2
    p = 3
    while p <= bound:
        yield p
        p += 2


def is_prime(n: int, bound: int | None = None) -> bool:
    if n < 2:
        return False
    return factorize(n, bound) == {n: 1}


def is_squarefree(n: int, bound: int | None = None) -> bool:
    """True iff the nonzero integer n has no repeated prime factor."""
    return all(e == 1 for e in factorize(n, bound).values())


def squarefree_part(q: Fraction | int, bound: int | None = None) -> tuple[int, Fraction]:
    """Write a nonzero rational as s * r**2 with s a squarefree integer.

    The pair (s, r) is unique with r > 0; for example 18 -> (2, 3) and
    -3/4 -> (-3, 1/2).
    """
    q = Fraction(q)
    if q == 0:
        raise ValueError("squarefree part of zero is undefined")
    s_num, r_num = _squarefree_int(q.numerator, bound)
    s_den, r_den = _squarefree_int(q.denominator, bound)
    # a/b = (sa*sb) * (ra / (sb*rb))**2 because a, b are coprime
    return s_num * s_den, Fraction(r_num, s_den * r_den)


def _squarefree_int(n: int, bound: int | None) -> tuple[int, int]:
    sign = -1 if n < 0 else 1
    s, r = sign, 1
    for p, e in factorize(n, bound).items():
        if e % 2:
            s *= p
        r *= p ** (e // 2)
    return s, r


def is_rational_square(q: Fraction | int) -> bool:
    """True iff q is the square of a rational (0 counts)."""
    q = Fraction(q)
    if q < 0:
        return False
    return (
        isqrt(q.numerator) ** 2 == q.numerator
        and isqrt(q.denominator) ** 2 == q.denominator
    )


def sqrt_rational(q: Fraction | int) -> Fraction | None:
    """The nonnegative rational square root of q, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def parse_rational(s: str) -> Fraction:
    """Parse 'p' or 'p/q' (and nothing else) into an exact rational."""
    s = s.strip()
    if not _RAT_RE.match(s):
        raise ValueError(f"not an exact rational: {s!r}")
    return Fraction(s)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
