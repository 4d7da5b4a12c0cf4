"""Sign-valued 2-cocycles on the Klein four-group Gal(Q(sqrt d, sqrt e)/Q).

The whole group H^2(G, {+-1}) for G = C2 x C2 is tiny: 16 normalized
cocycles falling into 8 classes, of which 4 are symmetric.  Everything is
computed by brute force over the 4 x 4 sign tables, so every structural
claim used downstream (class count, multiplication table, symmetry) is
checked rather than assumed.

Each class has a canonical name.  The four symmetric classes "triv",
"b_d", "b_e", "b_de" are inflations from the quadratic subfields and
correspond to abelian extensions; the four non-symmetric classes "h_d",
"h_e", "h_de" (dihedral of order 8, distinguished by which quadratic
subfield sits under the cyclic quartic layer) and "h0" (quaternion of
order 8) are the ones realized by non-abelian Galois closures
L(sqrt gamma)/Q.  "eta1" and "eta2" name the two tables attached to a
curve's sign cocycle; as classes they coincide with "h_de" and "h_e".
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .fields import GROUP_ORDER, Automorphism, BiquadElt, sqrt_in_biquad

__all__ = [
    "CocycleTable",
    "CohClass",
    "ExtType",
    "DegenerateTwistError",
    "enumerate_classes",
    "named_class",
    "class_name",
    "multiply",
    "is_symmetric",
    "classify_extension",
    "galois_type_of_gamma",
    "xi_sign_class",
]

_INDEX = {sigma: i for i, sigma in enumerate(GROUP_ORDER)}


class DegenerateTwistError(ValueError):
    """gamma is a square in L, so L(sqrt gamma) = L and nothing is twisted."""


@dataclass(frozen=True)
class CocycleTable:
    """Normalized 2-cocycle G x G -> {+-1} as a 4x4 sign table.

    Rows and columns follow GROUP_ORDER = (1, theta, nu, nu*theta).
    Construction validates normalization and the cocycle identity
    c(s,t) c(st,r) = c(t,r) c(s,tr).
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != 4 or any(len(r) != 4 for r in self.rows):
            raise ValueError("cocycle table must be 4x4")
        if any(x not in (1, -1) for row in self.rows for x in row):
            raise ValueError("cocycle table entries must be +1 or -1")
        for sigma in GROUP_ORDER:
            if self.value(Automorphism.ID, sigma) != 1 or self.value(sigma, Automorphism.ID) != 1:
                raise ValueError("cocycle table is not normalized")
        for s, t, r in product(GROUP_ORDER, repeat=3):
            if self.value(s, t) * self.value(s * t, r) != self.value(t, r) * self.value(s, t * r):
                raise ValueError("cocycle identity fails")

    def value(self, sigma: Automorphism, tau: Automorphism) -> int:
        return self.rows[_INDEX[sigma]][_INDEX[tau]]

    def product(self, other: "CocycleTable") -> "CocycleTable":
        return CocycleTable(
            tuple(
                tuple(a * b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def is_symmetric_table(self) -> bool:
        return all(
            self.value(s, t) == self.value(t, s)
            for s, t in product(GROUP_ORDER, repeat=2)
        )

    def _lex_key(self):
        return tuple(0 if x == 1 else 1 for row in self.rows for x in row)


@lru_cache(maxsize=1)
def coboundaries() -> tuple[CocycleTable, ...]:
    """All tables of the form (s,t) -> a(s) a(t) a(st) with a(1) = 1."""
    tables = set()
    for signs in product((1, -1), repeat=3):
        alpha = dict(zip(GROUP_ORDER[1:], signs))
        alpha[Automorphism.ID] = 1
        rows = tuple(
            tuple(alpha[s] * alpha[t] * alpha[s * t] for t in GROUP_ORDER)
            for s in GROUP_ORDER
        )
        tables.add(CocycleTable(rows))
    return tuple(sorted(tables, key=CocycleTable._lex_key))


@dataclass(frozen=True)
class CohClass:
    """Cohomology class, held as its lexicographically least representative."""

    table: CocycleTable

    @classmethod
    def of(cls, table: CocycleTable) -> "CohClass":
        rep = min(
            (table.product(cb) for cb in coboundaries()),
            key=CocycleTable._lex_key,
        )
        return cls(rep)

    def coset(self) -> tuple[CocycleTable, ...]:
        return tuple(
            sorted(
                {self.table.product(cb) for cb in coboundaries()},
                key=CocycleTable._lex_key,
            )
        )

    def __str__(self):
        return class_name(self)


@lru_cache(maxsize=1)
def enumerate_classes() -> tuple[CohClass, ...]:
    """All classes in H^2(G, {+-1}), by brute force over 512 sign tables."""
    classes = set()
    free = [(s, t) for s in GROUP_ORDER[1:] for t in GROUP_ORDER[1:]]
    for signs in product((1, -1), repeat=len(free)):
        entries = dict(zip(free, signs))
        rows = []
        for s in GROUP_ORDER:
            row = []
            for t in GROUP_ORDER:
                if s is Automorphism.ID or t is Automorphism.ID:
                    row.append(1)
                else:
                    row.append(entries[(s, t)])
            rows.append(tuple(row))
        try:
            table = CocycleTable(tuple(rows))
        except ValueError:
            continue
        classes.add(CohClass.of(table))
    return tuple(sorted(classes, key=lambda c: c.table._lex_key()))


# Named tables, rows/columns in GROUP_ORDER = (1, theta, nu, nu*theta).
_P, _M = 1, -1
_NAMED_ROWS = {
    "triv": ((_P, _P, _P, _P), (_P, _P, _P, _P), (_P, _P, _P, _P), (_P, _P, _P, _P)),
    # quaternion extension class
    "h0": ((_P, _P, _P, _P), (_P, _M, _M, _P), (_P, _P, _M, _M), (_P, _M, _P, _M)),
    # dihedral classes; suffix = quadratic subfield under the C4 layer
    "h_d": ((_P, _P, _P, _P), (_P, _M, _P, _M), (_P, _M, _P, _M), (_P, _P, _P, _P)),
    "h_e": ((_P, _P, _P, _P), (_P, _P, _P, _P), (_P, _M, _M, _P), (_P, _M, _M, _P)),
    "h_de": ((_P, _P, _P, _P), (_P, _P, _P, _P), (_P, _M, _P, _M), (_P, _M, _P, _M)),
    # nontrivial symmetric classes, inflated from K, K_e, K_de
    "b_d": ((_P, _P, _P, _P), (_P, _P, _P, _P), (_P, _P, _M, _M), (_P, _P, _M, _M)),
    "b_e": ((_P, _P, _P, _P), (_P, _M, _P, _M), (_P, _P, _P, _P), (_P, _M, _P, _M)),
    "b_de": ((_P, _P, _P, _P), (_P, _M, _M, _P), (_P, _M, _M, _P), (_P, _P, _P, _P)),
    # sign tables attached to a curve, selected by the sign of m
    "eta1": ((_P, _P, _P, _P), (_P, _P, _M, _M), (_P, _P, _P, _P), (_P, _P, _M, _M)),
    "eta2": ((_P, _P, _P, _P), (_P, _P, _M, _M), (_P, _P, _M, _M), (_P, _P, _P, _P)),
}

_ALIASES = {"η1": "eta1", "η2": "eta2", "1": "triv"}

_CANONICAL_NAMES = ("triv", "b_d", "b_e", "b_de", "h_d", "h_e", "h_de", "h0")


def named_table(name: str) -> CocycleTable:
    key = _ALIASES.get(name, name)
    try:
        return CocycleTable(_NAMED_ROWS[key])
    except KeyError:
        raise ValueError(f"unknown cocycle name {name!r}") from None


def named_class(name: str) -> CohClass:
    """The class of one of the named tables (eta1/eta2 allowed as inputs)."""
    return CohClass.of(named_table(name))


@lru_cache(maxsize=1)
def _name_by_class() -> dict[CohClass, str]:
    mapping = {named_class(name): name for name in _CANONICAL_NAMES}
    assert len(mapping) == 8, "named classes must exhaust H^2"
    return mapping


def class_name(x: CohClass) -> str:
    """Canonical name among triv, b_d, b_e, b_de, h_d, h_e, h_de, h0."""
    return _name_by_class()[x]


def multiply(x: CohClass, y: CohClass) -> CohClass:
    return CohClass.of(x.table.product(y.table))


def is_symmetric(x: CohClass) -> bool:
    """Whether the class consists of symmetric tables.

    Symmetry is constant on a coset (coboundaries on an abelian group are
    symmetric), which is asserted rather than assumed.
    """
    values = {t.is_symmetric_table() for t in x.coset()}
    assert len(values) == 1, "symmetry must be well defined on the class"
    return values.pop()


class ExtType(Enum):
    """Isomorphism type of the group extension 1 -> {+-1} -> G~ -> G -> 1."""

    C2_C2_C2 = "C2^3"
    C4_C2_OVER_D = "C4xC2_over_d"
    C4_C2_OVER_E = "C4xC2_over_e"
    C4_C2_OVER_DE = "C4xC2_over_de"
    D4_OVER_K = "D4_over_K"
    D4_OVER_KE = "D4_over_Ke"
    D4_OVER_KDE = "D4_over_Kde"
    H8 = "H8"


_EXT_BY_NAME = {
    "triv": ExtType.C2_C2_C2,
    "b_d": ExtType.C4_C2_OVER_D,
    "b_e": ExtType.C4_C2_OVER_E,
    "b_de": ExtType.C4_C2_OVER_DE,
    "h_d": ExtType.D4_OVER_K,
    "h_e": ExtType.D4_OVER_KE,
    "h_de": ExtType.D4_OVER_KDE,
    "h0": ExtType.H8,
}


def classify_extension(x: CohClass) -> ExtType:
    return _EXT_BY_NAME[class_name(x)]


def galois_type_of_gamma(gamma: BiquadElt) -> CohClass | None:
    """The class attached to the quadratic extension L(sqrt gamma) of L.

    Returns None when L(sqrt gamma)/Q is not Galois, i.e. when some
    conjugate ratio sigma(gamma)/gamma is not a square in L.  Otherwise
    picks square roots alpha_sigma of the ratios (alpha_1 = 1) and forms
    c(s,t) = alpha_s * s(alpha_t) / alpha_st, a sign-valued cocycle whose
    class does not depend on the sign choices.

    Raises DegenerateTwistError when gamma is itself a square in L (the
    extension collapses), ValueError when gamma is zero.
    """
    if gamma.is_zero():
        raise ValueError("gamma must be nonzero")
    g = gamma.scale_to_integral()
    if sqrt_in_biquad(g) is not None:
        raise DegenerateTwistError(f"{gamma} is a square in L")
    one = BiquadElt.rational(g.d, g.e, 1)
    alphas = {Automorphism.ID: one}
    for sigma in GROUP_ORDER[1:]:
        ratio = g.galois(sigma) / g
        root = sqrt_in_biquad(ratio)
        if root is None:
            return None
        alphas[sigma] = root
    rows = []
    for s in GROUP_ORDER:
        row = []
        for t in GROUP_ORDER:
            value = alphas[s] * alphas[t].galois(s) / alphas[s * t]
            assert value.is_rational() and value.rational_value() in (1, -1), (
                "extension cocycle must be sign-valued"
            )
            row.append(int(value.rational_value()))
        rows.append(tuple(row))
    return CohClass.of(CocycleTable(tuple(rows)))


def xi_sign_class(m: Fraction | int) -> CohClass:
    """Sign component of a curve's cocycle: class eta1 if m > 0, eta2 if m < 0.

    The isogeny scalar m sits in the (nu, nu) slot of the full cocycle
    table, so its sign selects which of the two eta tables represents the
    sign component.
    """
    m = Fraction(m)
    if m in (0, 1):
        raise ValueError(f"isogeny scalar m must avoid 0 and 1 (got {m})")
    return named_class("eta1" if m > 0 else "eta2")
