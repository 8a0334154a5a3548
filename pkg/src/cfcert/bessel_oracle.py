"""Structurally independent cross-check of the convergent engine.

For integer m >= 0 the value G(m, lam) equals the ratio S_{m-1}(x)/S_m(x)
of modified-Bessel-type power series at x = 2/lam, because the ratios
R_v = S_{v-1}/S_v satisfy the same shift recurrence R_v = v*lam + 1/R_{v+1}
that defines the fraction.  That identity is not assumed here: this module
only produces rigorous series enclosures, and cross_check treats a disjoint
pair as a hard Violation, so agreement is established empirically over the
whole test grid.

All arithmetic is exact rational (factorials and powers of a rational x),
so enclosures are reproducible bit for bit.  Tails are bounded by a
geometric majorant: once the term ratio at the truncation point is below
1/2, the tail is at most twice the first omitted term.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .bounds import CheckReport, Claim
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
from .errors import BudgetExceededError, DomainError, TailNotBoundedError, ViolationError

_HALF = Fraction(1, 2)


def _series_interval(nu: int, x: Fraction, last: int) -> tuple[Fraction, Fraction]:
    """Enclose S_nu(x) = sum_k (x/2)**(2k+nu) / (k! (k+nu)!), k = 0..last, plus tail.

    Terms are positive and their successive ratio at k is
    (x/2)**2 / ((k+1)(k+nu+1)), decreasing in k.  With ratio rho < 1/2 at
    the truncation point the tail is below 2 * t_{last+1} = 2 * t_last * rho.
    """
    h = x / 2
    t = h**nu / factorial(nu)
    s = t
    hh = h * h
    for k in range(1, last + 1):
        t *= hh / (k * (k + nu))
        s += t
    rho = hh / ((last + 1) * (last + nu + 1))
    if rho >= _HALF:
        raise TailNotBoundedError(
            f"term ratio {float(rho):.3f} >= 1/2 at truncation k={last}, nu={nu}; "
            "more terms needed"
        )
    return s, s + 2 * t * rho


def _orders(m: int) -> tuple[int, int]:
    # numerator order m-1; at m = 0 the order -1 series coincides termwise with order 1
    return (m - 1 if m >= 1 else 1), m


@dataclass(frozen=True)
class SeriesEnclosure:
    """Exact-rational interval for the series ratio, with the truncation index used."""

    lo: Fraction
    hi: Fraction
    terms_used: int

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def as_enclosure(self) -> Enclosure:
        return Enclosure(lo=self.lo, hi=self.hi, depth=self.terms_used, mode=EvalMode.EXACT)


def series_ratio(m: int, lam: RationalLike, terms: int) -> SeriesEnclosure:
    """Rigorous quotient interval S_{m-1}(2/lam) / S_m(2/lam) truncated at ``terms``."""
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise DomainError(f"series oracle needs integer m >= 0, got {m!r}")
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    lam = as_fraction(lam)
    if lam <= 0:
        raise DomainError(f"lam must be positive, got {lam}")
    x = Fraction(2) / lam
    top, bot = _orders(m)
    n_lo, n_hi = _series_interval(top, x, terms)
    d_lo, d_hi = _series_interval(bot, x, terms)
    return SeriesEnclosure(lo=n_lo / d_hi, hi=n_hi / d_lo, terms_used=terms)


def cross_check(
    m: int,
    lam: RationalLike,
    tol: RationalLike = DEFAULT_TOL,
    *,
    settings: EvalSettings | None = None,
    max_terms: int = 65536,
) -> CheckReport:
    """Certified-intersection test between the convergent and series enclosures.

    Disjoint enclosures would mean one engine is wrong and raise
    ViolationError.  The series truncation grows until its width fits tol.
    """
    lam = as_fraction(lam)
    tol = as_fraction(tol)
    point = CFPoint(Fraction(m), lam)
    cf_enc = evaluate(point, tol, settings=settings)
    terms = max(8, (2 * lam.denominator) // lam.numerator + 8)
    series = None
    while True:
        try:
            series = series_ratio(m, lam, terms)
        except TailNotBoundedError:
            series = None
        if series is not None and series.width <= tol:
            break
        if terms >= max_terms:
            raise BudgetExceededError(
                f"series width did not reach tol within {max_terms} terms",
                best=series.as_enclosure() if series is not None else None,
            )
        terms = min(2 * terms, max_terms)
    oracle = series.as_enclosure()
    overlap = min(cf_enc.hi, oracle.hi) - max(cf_enc.lo, oracle.lo)
    if overlap < 0:
        raise ViolationError(
            f"convergent and series enclosures disjoint at m={m}, lam={lam}: "
            f"[{cf_enc.lo}, {cf_enc.hi}] vs [{oracle.lo}, {oracle.hi}]"
        )
    return CheckReport(
        point=point,
        claim=Claim.ORACLE,
        certified=True,
        left=cf_enc,
        right=oracle,
        gap=overlap,
    )
