"""End-to-end decision pipeline: given (d, e) and optionally the isogeny
scalar m, decide which of the four twist cases are realizable over
L = Q(sqrt d, sqrt e), construct a generator for each realizable family,
label each twist primitive or inflated from a subfield, and produce the
quadratic twists that already live over K = Q(sqrt d).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .cocycles import (
    CohClass,
    class_name,
    galois_type_of_gamma,
    is_symmetric,
    multiply,
    named_class,
    xi_sign_class,
)
from .curves import QCurveInput
from .embeddings import (
    DEFAULT_HEIGHT,
    CaseId,
    GammaFamily,
    SolverBoundError,
    case_solvable,
    d4_gamma,
    h8_gamma,
)
from .fields import GROUP_ORDER, Automorphism, BiquadElt, QuadElt
from .rationals import is_rational_square, squarefree_part

__all__ = [
    "Origin",
    "XiData",
    "CaseReport",
    "ClassificationReport",
    "build_xi",
    "origin_label",
    "classify",
    "twist_over_k",
    "canonical_pair",
]


class Origin(Enum):
    PRIMITIVE = "primitive"
    FROM_Q = "inflated_from_Q"
    FROM_K = "inflated_from_K"
    FROM_KE = "inflated_from_K_e"
    FROM_KDE = "inflated_from_K_de"
    UNKNOWN = "unknown"


_SUBFIELD_ORIGIN = {
    "triv": Origin.FROM_Q,
    "b_d": Origin.FROM_K,
    "b_e": Origin.FROM_KE,
    "b_de": Origin.FROM_KDE,
}

# Origin table for square |m|, rows indexed by the sign class of m.
_ORIGIN_TABLE = {
    "eta1": {
        CaseId.A: Origin.FROM_KDE,
        CaseId.B: Origin.FROM_KE,
        CaseId.C: Origin.FROM_K,
        CaseId.D: Origin.FROM_Q,
    },
    "eta2": {
        CaseId.A: Origin.FROM_KE,
        CaseId.B: Origin.FROM_KDE,
        CaseId.C: Origin.FROM_Q,
        CaseId.D: Origin.FROM_K,
    },
}


@dataclass(frozen=True)
class XiData:
    """Cocycle data attached to the curve by its isogeny scalar m."""

    m: Fraction
    sign_name: str  # "eta1" or "eta2"
    sign_class: CohClass
    deg_trivial: bool  # |m| is a rational square
    full_table: tuple[tuple[Fraction, ...], ...]


def build_xi(m: Fraction | int) -> XiData:
    """Tabulate the curve cocycle for scalar m and split off its sign part.

    The full table (rows and columns ordered 1, theta, nu, nu*theta) has
    entries in {1, -1, m, -m}; the sign component is eta1 for positive m
    and eta2 for negative m, and is never symmetric, so the untwisted
    curve itself never has symmetric cocycle.
    """
    m = Fraction(m)
    if m in (0, 1):
        raise ValueError(f"isogeny scalar m must avoid 0 and 1 (got {m})")
    one = Fraction(1)
    full_table = (
        (one, one, one, one),
        (one, one, -one, -one),
        (one, one, m, m),
        (one, one, -m, -m),
    )
    sign_class = xi_sign_class(m)
    sign_name = "eta1" if m > 0 else "eta2"
    assert not is_symmetric(sign_class)
    return XiData(
        m=m,
        sign_name=sign_name,
        sign_class=sign_class,
        deg_trivial=is_rational_square(abs(m)),
        full_table=full_table,
    )


def origin_label(case: CaseId, sign_name: str, deg_trivial: bool) -> Origin:
    """Where the twisted curve comes from, up to isogeny.

    When |m| is a square the answer is a subfield read from the origin
    table; this is cross-checked against the cocycle product
    sign_class * h_case, which must be the symmetric class inflated from
    the same subfield.  When |m| is not a square only descent to K is
    possible: cases C and D are inflated from K, cases A and B are
    primitive.
    """
    if sign_name not in ("eta1", "eta2"):
        raise ValueError(f"sign class must be eta1 or eta2 (got {sign_name!r})")
    if not deg_trivial:
        if case in (CaseId.A, CaseId.B):
            return Origin.PRIMITIVE
        return Origin.FROM_K
    origin = _ORIGIN_TABLE[sign_name][case]
    # independent route through the class multiplication
    from .embeddings import expected_class

    product = multiply(named_class(sign_name), expected_class(case))
    assert _SUBFIELD_ORIGIN[class_name(product)] == origin
    return origin


@dataclass(frozen=True)
class CaseReport:
    case: CaseId
    solvable: bool
    gamma: GammaFamily | None = None
    origin: Origin | None = None
    solver_error: str | None = None

    def to_json(self) -> dict:
        data: dict = {"solvable": self.solvable}
        if self.gamma is not None:
            data["t"] = self.gamma.t.to_json()
            data["family"] = "q*t, q in Q^x"
            data["witness"] = _witness_json(self.gamma.witness)
        if self.origin is not None:
            data["origin"] = self.origin.value
        if self.solver_error is not None:
            data["solver_error"] = self.solver_error
        return data


def _witness_json(witness: dict) -> dict:
    from .rationals import format_rational

    out = {}
    for key, value in witness.items():
        if isinstance(value, tuple):
            out[key] = [format_rational(x) for x in value]
        else:
            out[key] = format_rational(value)
    return out


@dataclass(frozen=True)
class ClassificationReport:
    d: int
    e: int
    m: Fraction | None
    xi: XiData | None
    cases: dict
    twist_over_k_exists: bool
    gamma_in_k: QuadElt | None
    gammas_in_k: tuple = ()

    def to_json(self) -> dict:
        from .rationals import format_rational

        data: dict = {
            "d": str(self.d),
            "e": str(self.e),
            "m": None if self.m is None else format_rational(self.m),
            "cases": {c.value: r.to_json() for c, r in sorted(self.cases.items(), key=lambda kv: kv[0].value)},
            "twist_over_K": {
                "exists": self.twist_over_k_exists,
                "gamma": None if self.gamma_in_k is None else self.gamma_in_k.to_json(),
                "all": [
                    {"case": c.value, "gamma": g.to_json()} for c, g in self.gammas_in_k
                ],
            },
        }
        if self.xi is not None:
            data["xi"] = {
                "sign_class": self.xi.sign_name,
                "deg_trivial": self.xi.deg_trivial,
                "table": [
                    [format_rational(x) for x in row] for row in self.xi.full_table
                ],
            }
        return data


def canonical_pair(d: int, e: int) -> tuple[int, int]:
    """Squarefree-canonicalize raw field parameters, rejecting collisions."""
    if d == 0 or e == 0:
        raise ValueError("field parameters must be nonzero")
    d0 = squarefree_part(d)[0]
    e0 = squarefree_part(e)[0]
    for name, value in (("d", d0), ("e", e0)):
        if value == 1:
            raise ValueError(f"field parameter {name} is a square: Q(sqrt {name}) would be Q")
    if d0 == e0:
        raise ValueError(
            f"d = {d} and e = {e} generate the same quadratic field (both reduce to {d0})"
        )
    return d0, e0


def classify(inp: QCurveInput, height: int = DEFAULT_HEIGHT) -> ClassificationReport:
    """Run the whole pipeline for one input."""
    d, e = inp.d, inp.e
    xi = build_xi(inp.m) if inp.m is not None else None
    cases = {}
    for case in CaseId:
        solvable = case_solvable(case, d, e)
        gamma = None
        error = None
        origin = None
        if solvable:
            try:
                if case is CaseId.A:
                    gamma = h8_gamma(d, e, height)
                else:
                    gamma = d4_gamma(case, d, e)
            except SolverBoundError as exc:
                error = str(exc)
            if xi is not None:
                origin = origin_label(case, xi.sign_name, xi.deg_trivial)
            else:
                origin = Origin.UNKNOWN
            if gamma is not None and xi is not None:
                # a realizable twist must make the combined cocycle symmetric
                combined = multiply(xi.sign_class, galois_type_of_gamma(gamma.t))
                assert is_symmetric(combined)
        cases[case] = CaseReport(
            case=case,
            solvable=solvable,
            gamma=gamma,
            origin=origin,
            solver_error=error,
        )
    exists, preferred, all_gammas = _twists_over_k(cases)
    return ClassificationReport(
        d=d,
        e=e,
        m=inp.m,
        xi=xi,
        cases=cases,
        twist_over_k_exists=exists,
        gamma_in_k=preferred,
        gammas_in_k=all_gammas,
    )


def _twists_over_k(cases: dict) -> tuple[bool, QuadElt | None, tuple]:
    """Twists over K exist exactly when case C or D is realizable; their
    generators lie in K = Q(sqrt d) by construction (case C preferred)."""
    exists = cases[CaseId.C].solvable or cases[CaseId.D].solvable
    collected = []
    for case in (CaseId.C, CaseId.D):
        report = cases[case]
        if report.gamma is not None:
            collected.append((case, report.gamma.t.to_quad()))
    preferred = collected[0][1] if collected else None
    return exists, preferred, tuple(collected)


def twist_over_k(inp: QCurveInput, height: int = DEFAULT_HEIGHT) -> dict:
    """Existence and a generator for strongly modular twists over Q(sqrt d)."""
    report = classify(inp, height)
    return {
        "exists": report.twist_over_k_exists,
        "gamma": report.gamma_in_k,
        "all": report.gammas_in_k,
    }
