"""Behavior of lam -> G(m, lam) at fixed m: small-lam limit and non-monotonicity.

limit_check tabulates enclosures along a descending lam list so the
approach of G(m, lam) to 1 can be observed with certified error bars.
find_witness searches an ascending grid for a certified decrease
G(m, lam1) > G(m, lam2) with lam1 < lam2, which is a rigorous witness that
the map is not monotonically increasing.  Absence of a witness on a grid
is reported as exactly that, never as a refutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cf_core import (
    DEFAULT_TOL,
    CFPoint,
    Enclosure,
    EvalSettings,
    RationalLike,
    as_fraction,
    evaluate,
)
from .errors import (
    BudgetExceededError,
    DomainError,
    NoWitnessFoundError,
    NotConvergedError,
)

#: geometric default grid 2**-4 .. 2**2 for the witness search
DEFAULT_WITNESS_GRID: tuple[Fraction, ...] = tuple(
    Fraction(2) ** k for k in range(-4, 3)
)
#: m values worth scanning by default (the dip below 1 lives at small m)
DEFAULT_WITNESS_MS: tuple[Fraction, ...] = (
    Fraction(1, 10),
    Fraction(1, 4),
    Fraction(1, 2),
)
TIGHTEN_ROUNDS = 8


@dataclass(frozen=True)
class Witness:
    """Certified decrease: lam1 < lam2 with disjoint enclosures g1 above g2.

    Construction re-checks the certificate, so a Witness object cannot
    exist unless the decrease really is certified.
    """

    m: Fraction
    lambda1: Fraction
    lambda2: Fraction
    g1: Enclosure
    g2: Enclosure

    def __post_init__(self) -> None:
        if not (0 < self.lambda1 < self.lambda2):
            raise ValueError("witness needs 0 < lambda1 < lambda2")
        if not (0 < self.m < 1):
            raise ValueError("witness m must lie in (0, 1)")
        if not self.g1.lo > self.g2.hi:
            raise ValueError("enclosures do not certify a decrease")


@dataclass(frozen=True)
class ScanPoint:
    """One grid entry: the enclosure, or the best rigorous one plus an error note."""

    lam: Fraction
    enclosure: Enclosure | None
    error: str | None = None


def limit_check(
    m: RationalLike,
    lambdas: list[RationalLike],
    tol: RationalLike = DEFAULT_TOL,
    *,
    settings: EvalSettings | None = None,
) -> list[Enclosure]:
    """Enclosures of G(m, lam) along ``lambdas`` (intended descending toward 0).

    A point that fails to reach tol within budget contributes its best
    rigorous enclosure instead of aborting the sweep.
    """
    m = as_fraction(m)
    out = []
    for lam in lambdas:
        point = CFPoint(m, as_fraction(lam))
        try:
            out.append(evaluate(point, tol, settings=settings))
        except (NotConvergedError, BudgetExceededError) as exc:
            out.append(exc.best)
    return out


def scan(
    m: RationalLike,
    lambda_grid: list[RationalLike],
    tol: RationalLike = DEFAULT_TOL,
    *,
    settings: EvalSettings | None = None,
) -> list[ScanPoint]:
    """Pointwise enclosures over a strictly ascending positive grid, order preserved."""
    m = as_fraction(m)
    grid = [as_fraction(lam) for lam in lambda_grid]
    for a, b in zip(grid, grid[1:]):
        if a >= b:
            raise DomainError("lambda grid must be strictly ascending")
    if grid and grid[0] <= 0:
        raise DomainError("lambda grid must be positive")
    entries = []
    for lam in grid:
        try:
            entries.append(ScanPoint(lam=lam, enclosure=evaluate(CFPoint(m, lam), tol, settings=settings)))
        except (NotConvergedError, BudgetExceededError) as exc:
            entries.append(ScanPoint(lam=lam, enclosure=exc.best, error=str(exc)))
    return entries


def find_witness(
    m: RationalLike,
    lambda_grid: list[RationalLike] | None = None,
    tol: RationalLike = DEFAULT_TOL,
    *,
    settings: EvalSettings | None = None,
    tighten_rounds: int = TIGHTEN_ROUNDS,
) -> Witness:
    """First grid pair (lam_i < lam_j) whose enclosures certify G(m, lam_i) > G(m, lam_j).

    Pairs are tried in grid order for determinism.  Near misses (midpoints
    ordered as a decrease but enclosures overlapping) are retried at
    tolerance tightened by 10 per round.  Raises NoWitnessFoundError when
    the grid shows no certified decrease.
    """
    m = as_fraction(m)
    if not (0 < m < 1):
        raise DomainError(f"witness search needs 0 < m < 1, got {m}")
    tol = as_fraction(tol)
    grid = list(DEFAULT_WITNESS_GRID) if lambda_grid is None else lambda_grid
    entries = scan(m, grid, tol, settings=settings)
    usable = [(e.lam, e.enclosure) for e in entries if e.enclosure is not None]

    for i in range(len(usable)):
        lam1, g1 = usable[i]
        for lam2, g2 in usable[i + 1 :]:
            if g1.lo > g2.hi:
                return Witness(m=m, lambda1=lam1, lambda2=lam2, g1=g1, g2=g2)

    # near misses: decreasing midpoints but overlapping enclosures
    for i in range(len(usable)):
        lam1, g1 = usable[i]
        for lam2, g2 in usable[i + 1 :]:
            if g1.midpoint <= g2.midpoint:
                continue
            t = tol
            for _ in range(tighten_rounds):
                t = t / 10
                try:
                    e1 = evaluate(CFPoint(m, lam1), t, settings=settings)
                    e2 = evaluate(CFPoint(m, lam2), t, settings=settings)
                except (NotConvergedError, BudgetExceededError):
                    break  # budget floor reached; this pair cannot be resolved
                if e1.lo > e2.hi:
                    return Witness(m=m, lambda1=lam1, lambda2=lam2, g1=e1, g2=e2)
                if e1.hi < e2.lo:
                    break
    raise NoWitnessFoundError(
        f"no certified decrease for m={m} on the scanned grid "
        "(absence on a grid is not a refutation)",
        m=m,
        grid=[lam for lam, _ in usable],
    )
