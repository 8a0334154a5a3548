"""Certificates for the inequalities and identities satisfied by G(m, lam).

The central quantity is the quadratic bound B(m, lam), the positive root of
y**2 - m*lam*y - 1 = 0 (equivalently m*lam/2 + sqrt(m**2*lam**2/4 + 1)),
which separates G(m, lam) from G(m+1, lam) for m >= 0.  All certificates
are interval statements: a strict inequality a < b is certified exactly when
the enclosure of a lies entirely below the enclosure of b.  Overlapping
enclosures are retried at tighter tolerance before reporting Inconclusive;
an identity that fails outright raises Violation since it can only mean an
arithmetic bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt

from .cf_core import (
    DEFAULT_TOL,
    CFPoint,
    Enclosure,
    EvalMode,
    EvalSettings,
    RationalLike,
    as_fraction,
    evaluate,
)
from .errors import DomainError, InconclusiveError, ViolationError

#: tightening stops once the working tolerance drops below this floor
CERT_TOL_FLOOR = Fraction(1, 10**30)
TIGHTEN_FACTOR = 10

ONE = Fraction(1)


class Claim(str, Enum):
    SANDWICH_UPPER = "sandwich-upper"
    SANDWICH_LOWER = "sandwich-lower"
    FUNCTIONAL_EQUATION = "functional"
    ABOVE_ONE = "above-one"
    RECIPROCAL = "reciprocal"
    ORACLE = "oracle-intersect"


@dataclass(frozen=True)
class BoundValue:
    """Rational enclosure [lo, hi] of the positive root of y**2 - m*lam*y - 1."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def as_enclosure(self) -> Enclosure:
        return Enclosure(lo=self.lo, hi=self.hi, depth=0, mode=EvalMode.EXACT)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one certificate.

    For inequality claims ``gap`` is the certified separation between the
    two enclosures (positive).  For identity claims (functional equation,
    reciprocal product, oracle intersection) ``gap`` is the width of the
    overlap that witnesses consistency.
    """

    point: CFPoint
    claim: Claim
    certified: bool
    left: Enclosure
    right: Enclosure
    gap: Fraction


def theorem_bound(point: CFPoint, tol: RationalLike = DEFAULT_TOL) -> BoundValue:
    """Enclose B(m, lam) by exact bisection on its defining quadratic.

    No floating square root is ever taken: the returned bounds carry the
    sign witness lo**2 - m*lam*lo - 1 <= 0 <= hi**2 - m*lam*hi - 1.  When
    the discriminant is a perfect rational square the root itself is
    rational and the enclosure is returned exact (width zero), which covers
    m = 0 where the bound equals 1.
    """
    tol = as_fraction(tol)
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    c = point.m * point.lam
    e, f = c.numerator, c.denominator
    disc = e * e + 4 * f * f
    r = isqrt(disc)
    if r * r == disc:
        root = Fraction(e + r, 2 * f)
        return BoundValue(lo=root, hi=root)

    def quad(y: Fraction) -> Fraction:
        return y * y - c * y - 1

    if c >= 0:
        lo, hi = Fraction(1), c + 1
    else:
        lo, hi = Fraction(0), Fraction(1)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        v = quad(mid)
        if v == 0:
            return BoundValue(lo=mid, hi=mid)
        if v < 0:
            lo = mid
        else:
            hi = mid
    return BoundValue(lo=lo, hi=hi)


def _tolerances(tol: Fraction, tighten_limit: int | None):
    """Working tolerances: tol, tol/10, ... down to the floor (or a step cap)."""
    t = tol
    steps = 0
    while True:
        yield t
        steps += 1
        if tighten_limit is not None and steps > tighten_limit:
            return
        if t <= CERT_TOL_FLOOR:
            return
        t = t / TIGHTEN_FACTOR


def check_sandwich(
    point: CFPoint,
    tol: RationalLike = DEFAULT_TOL,
    *,
    settings: EvalSettings | None = None,
    tighten_limit: int | None = None,
) -> tuple[CheckReport, CheckReport]:
    """Certify G(m+1, lam) > B(m, lam) > G(m, lam) for m >= 0.

    Returns the (upper, lower) report pair; each certificate is a disjoint
    pair of enclosures with a positive gap.  Raises InconclusiveError if
    the enclosures still overlap at the tightening floor.
    """
    if point.m < 0:
        raise DomainError(f"sandwich hypothesis needs m >= 0, got m = {point.m}")
    tol = as_fraction(tol)
    upper_point = point.shifted()
    last = None
    for t in _tolerances(tol, tighten_limit):
        g_hi = evaluate(upper_point, t, settings=settings)
        g_lo = evaluate(point, t, settings=settings)
        bound = theorem_bound(point, t).as_enclosure()
        last = (g_hi, g_lo, bound)
        if g_hi.lo > bound.hi and bound.lo > g_lo.hi:
            upper = CheckReport(
                point=point,
                claim=Claim.SANDWICH_UPPER,
                certified=True,
                left=g_hi,
                right=bound,
                gap=g_hi.lo - bound.hi,
            )
            lower = CheckReport(
                point=point,
                claim=Claim.SANDWICH_LOWER,
                certified=True,
                left=bound,
                right=g_lo,
                gap=bound.lo - g_lo.hi,
            )
            return upper, lower
    g_hi, g_lo, bound = last
    raise InconclusiveError(
        f"sandwich enclosures still overlap at m={point.m}, lam={point.lam}",
        claim=Claim.SANDWICH_UPPER,
        left=g_hi,
        right=bound,
    )


def check_functional_equation(
    point: CFPoint,
    tol: RationalLike = DEFAULT_TOL,
    *,
    settings: EvalSettings | None = None,
) -> CheckReport:
    """Verify the enclosure of G(m, lam) meets m*lam + 1/[enclosure of G(m+1, lam)].

    Both intervals contain the same real number, so they must intersect;
    a disjoint pair raises ViolationError.
    """
    tol = as_fraction(tol)
    direct = evaluate(point, tol, settings=settings)
    tail = evaluate(point.shifted(), tol, settings=settings)
    x0 = point.m * point.lam
    shifted = Enclosure(
        lo=x0 + 1 / tail.hi, hi=x0 + 1 / tail.lo, depth=tail.depth, mode=tail.mode
    )
    overlap = min(direct.hi, shifted.hi) - max(direct.lo, shifted.lo)
    if overlap < 0:
        raise ViolationError(
            f"functional equation enclosures disjoint at m={point.m}, "
            f"lam={point.lam}: {direct} vs {shifted}"
        )
    if overlap > 2 * tol:
        raise ViolationError(
            f"functional equation overlap {overlap} exceeds 2*tol at "
            f"m={point.m}, lam={point.lam}"
        )
    return CheckReport(
        point=point,
        claim=Claim.FUNCTIONAL_EQUATION,
        certified=True,
        left=direct,
        right=shifted,
        gap=overlap,
    )


def check_g_above_one(
    point: CFPoint,
    tol: RationalLike = DEFAULT_TOL,
    *,
    settings: EvalSettings | None = None,
    tighten_limit: int | None = None,
) -> CheckReport:
    """Certify G(m, lam) > 1 for m >= 1."""
    if point.m < 1:
        raise DomainError(f"hypothesis needs m >= 1, got m = {point.m}")
    tol = as_fraction(tol)
    unit = Enclosure(lo=ONE, hi=ONE, depth=0, mode=EvalMode.EXACT)
    enc = None
    for t in _tolerances(tol, tighten_limit):
        enc = evaluate(point, t, settings=settings)
        if enc.lo > 1:
            return CheckReport(
                point=point,
                claim=Claim.ABOVE_ONE,
                certified=True,
                left=enc,
                right=unit,
                gap=enc.lo - 1,
            )
    raise InconclusiveError(
        f"G enclosure still touches 1 at m={point.m}, lam={point.lam}",
        claim=Claim.ABOVE_ONE,
        left=enc,
        right=unit,
    )


def check_reciprocal(
    lam: RationalLike,
    tol: RationalLike = DEFAULT_TOL,
    *,
    settings: EvalSettings | None = None,
    tighten_limit: int | None = None,
) -> CheckReport:
    """Certify G(0, lam) * G(1, lam) = 1 (as an interval statement) and G(0, lam) < 1.

    The product interval must contain 1, since the two values are exact
    reciprocals; a product interval that excludes 1 raises ViolationError.
    """
    lam = as_fraction(lam)
    tol = as_fraction(tol)
    p0 = CFPoint(Fraction(0), lam)
    p1 = CFPoint(Fraction(1), lam)
    g0 = g1 = None
    for t in _tolerances(tol, tighten_limit):
        g0 = evaluate(p0, t, settings=settings)
        g1 = evaluate(p1, t, settings=settings)
        if not (g0.lo * g1.lo <= 1 <= g0.hi * g1.hi):
            raise ViolationError(
                f"product interval excludes 1 at lam={lam}: {g0} * {g1}"
            )
        if g0.hi < 1:
            return CheckReport(
                point=p0,
                claim=Claim.RECIPROCAL,
                certified=True,
                left=g0,
                right=g1,
                gap=1 - g0.hi,
            )
    raise InconclusiveError(
        f"G(0, lam) enclosure still touches 1 at lam={lam}",
        claim=Claim.RECIPROCAL,
        left=g0,
        right=g1,
    )
