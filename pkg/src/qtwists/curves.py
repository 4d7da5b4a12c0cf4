"""Weierstrass models y^2 = x^3 + a2*x^2 + a4*x + a6 over biquadratic fields:
quadratic twisting, scaling to integral models, j-invariants and Galois
conjugation, plus constructors for the two built-in families of examples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fields import Automorphism, BiquadElt, QuadElt
from .rationals import factorize, is_squarefree, parse_rational

__all__ = [
    "CurveModel",
    "QCurveInput",
    "quadratic_twist",
    "integral_scale",
    "j_invariant",
    "conjugate",
    "family_curve",
    "pyl_curve",
]


@dataclass(frozen=True)
class CurveModel:
    """Nonsingular model y^2 = x^3 + a2*x^2 + a4*x + a6 with coefficients in
    Q(sqrt d, sqrt e)."""

    d: int
    e: int
    a2: BiquadElt
    a4: BiquadElt
    a6: BiquadElt

    def __post_init__(self):
        for name in ("a2", "a4", "a6"):
            coeff = getattr(self, name)
            if not isinstance(coeff, BiquadElt):
                coeff = BiquadElt.rational(self.d, self.e, coeff)
                object.__setattr__(self, name, coeff)
            if (coeff.d, coeff.e) != (self.d, self.e):
                raise ValueError(f"{name} lives in the wrong field")
        if self.discriminant().is_zero():
            raise ValueError("singular curve: discriminant vanishes")

    @classmethod
    def from_a_invariants(cls, d, e, a2, a4, a6) -> "CurveModel":
        mk = lambda v: v if isinstance(v, BiquadElt) else BiquadElt.rational(d, e, v)
        return cls(d, e, mk(a2), mk(a4), mk(a6))

    # standard b- and c-invariants for a1 = a3 = 0
    def b_invariants(self):
        b2 = 4 * self.a2
        b4 = 2 * self.a4
        b6 = 4 * self.a6
        b8 = 4 * self.a2 * self.a6 - self.a4 * self.a4
        return b2, b4, b6, b8

    def c_invariants(self):
        b2, b4, b6, _ = self.b_invariants()
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
        return c4, c6

    def discriminant(self) -> BiquadElt:
        b2, b4, b6, b8 = self.b_invariants()
        return (
            -b2 * b2 * b8
            - 8 * b4 * b4 * b4
            - 27 * b6 * b6
            + 9 * b2 * b4 * b6
        )

    def is_integral(self) -> bool:
        """Integrality of all coordinates w.r.t. the basis (1, sqrt d,
        sqrt e, sqrt de); coarser than the maximal order, by design."""
        return all(
            ci.denominator == 1
            for coeff in (self.a2, self.a4, self.a6)
            for ci in coeff.c
        )

    def to_json(self) -> dict:
        return {
            "d": str(self.d),
            "e": str(self.e),
            "a2": self.a2.to_json(),
            "a4": self.a4.to_json(),
            "a6": self.a6.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CurveModel":
        d, e = int(data["d"]), int(data["e"])
        return cls(
            d,
            e,
            BiquadElt.from_json(d, e, data["a2"]),
            BiquadElt.from_json(d, e, data["a4"]),
            BiquadElt.from_json(d, e, data["a6"]),
        )


def quadratic_twist(curve: CurveModel, gamma: BiquadElt) -> CurveModel:
    """Twist by gamma: (a2, a4, a6) -> (gamma*a2, gamma^2*a4, gamma^3*a6)."""
    if gamma.is_zero():
        raise ValueError("twisting parameter must be nonzero")
    g2 = gamma * gamma
    return CurveModel(
        curve.d,
        curve.e,
        gamma * curve.a2,
        g2 * curve.a4,
        g2 * gamma * curve.a6,
    )


def integral_scale(curve: CurveModel, u: int | None = None) -> CurveModel:
    """Rescale (x, y) -> (x/u^2, y/u^3): coefficients scale by u^2, u^4, u^6.

    With u omitted, the least positive integer making every coordinate
    integral is chosen (prime by prime from the coordinate denominators).
    """
    if u is None:
        u = _least_clearing_scale(curve)
    if u < 1:
        raise ValueError("scale factor must be a positive integer")
    uu = Fraction(u * u)
    return CurveModel(
        curve.d,
        curve.e,
        uu * curve.a2,
        uu * uu * curve.a4,
        uu * uu * uu * curve.a6,
    )


def _least_clearing_scale(curve: CurveModel) -> int:
    exponents: dict[int, int] = {}
    for coeff, weight in ((curve.a2, 2), (curve.a4, 4), (curve.a6, 6)):
        for ci in coeff.c:
            for p, k in factorize(ci.denominator).items():
                need = -(-k // weight)  # ceil(k / weight)
                exponents[p] = max(exponents.get(p, 0), need)
    u = 1
    for p, k in exponents.items():
        u *= p**k
    return u


def j_invariant(curve: CurveModel) -> BiquadElt:
    """j = c4^3 / discriminant, exact in the biquadratic field."""
    c4, _ = curve.c_invariants()
    return c4 * c4 * c4 / curve.discriminant()


def conjugate(sigma: Automorphism, curve: CurveModel) -> CurveModel:
    """Apply a Galois automorphism to every coefficient."""
    return CurveModel(
        curve.d,
        curve.e,
        curve.a2.galois(sigma),
        curve.a4.galois(sigma),
        curve.a6.galois(sigma),
    )


@dataclass(frozen=True)
class QCurveInput:
    """Inputs of the classification pipeline.

    d fixes the quadratic field of definition Q(sqrt d); e extends it to
    the biquadratic field where the curve is completely defined.  The
    isogeny scalar m (optional) is only consumed through its sign and the
    square class of |m|: without it, existence of twists is still decided
    but origins are reported as unknown.
    """

    d: int
    e: int
    m: Fraction | None = None
    curve: CurveModel | None = None

    def __post_init__(self):
        from .embeddings import validate_field_pair

        validate_field_pair(self.d, self.e)
        if self.m is not None:
            m = Fraction(self.m)
            if m in (0, 1):
                raise ValueError(f"isogeny scalar m must avoid 0 and 1 (got {m})")
            object.__setattr__(self, "m", m)
        if self.curve is not None and (self.curve.d, self.curve.e) != (self.d, self.e):
            raise ValueError("curve model lives in the wrong field")


def family_curve(a: int) -> QCurveInput:
    """The one-parameter family of curves over Q(sqrt a), completely defined
    over Q(sqrt a, sqrt 3):

        y^2 = x^3 - 3*sqrt(a)*(4 + 5*sqrt(a))*x + 2*sqrt(a)*(2 + 14*sqrt(a) + 11*a)

    The isogeny scalar m of the family is not part of the published data,
    so it is left unset here; pass it explicitly when known.
    """
    if a in (0, 1) or not is_squarefree(a):
        raise ValueError(f"family parameter {a} must be squarefree, not 0 or 1")
    if a == 3:
        raise ValueError("family parameter 3 would collapse the biquadratic field")
    d, e = a, 3
    zero = Fraction(0)
    a4 = BiquadElt(d, e, (Fraction(-15 * a), Fraction(-12), zero, zero))
    a6 = BiquadElt(d, e, (Fraction(28 * a), Fraction(4 + 22 * a), zero, zero))
    model = CurveModel(d, e, BiquadElt.rational(d, e, 0), a4, a6)
    return QCurveInput(d=d, e=e, m=None, curve=model)


def pyl_curve(b: QuadElt) -> QCurveInput:
    """The trace-one curve y^2 = x^3 + 2*x^2 + b*x over Q(sqrt -3).

    b must lie in Q(sqrt -3) and have trace 1; the associated isogeny
    scalar is -2 and the field of complete definition is
    Q(sqrt -3, sqrt -2).
    """
    if b.disc != -3:
        raise ValueError("coefficient b must lie in Q(sqrt -3)")
    if b.trace() != 1:
        raise ValueError(f"coefficient b must have trace 1 (got {b.trace()})")
    d, e = -3, -2
    model = CurveModel(
        d,
        e,
        BiquadElt.rational(d, e, 2),
        BiquadElt.from_quad(b, d, e),
        BiquadElt.rational(d, e, 0),
    )
    return QCurveInput(d=d, e=e, m=Fraction(-2), curve=model)


def parse_curve_json(data: dict) -> CurveModel:
    """Parse {"d": ..., "e": ..., "a2": [...], "a4": [...], "a6": [...]}."""
    for key in ("d", "e", "a2", "a4", "a6"):
        if key not in data:
            raise ValueError(f"curve JSON missing field {key!r}")
    d = _integer_field(data["d"], "d")
    e = _integer_field(data["e"], "e")
    return CurveModel.from_json({**data, "d": d, "e": e})


def _integer_field(raw, name: str) -> int:
    value = parse_rational(str(raw))
    if value.denominator != 1:
        raise ValueError(f"field parameter {name} must be an integer (got {value})")
    return value.numerator
