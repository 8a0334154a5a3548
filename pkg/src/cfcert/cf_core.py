"""Certified evaluation of the continued fraction G(m, lam).

G(m, lam) is the limit of the fraction whose j-th partial quotient is
(m + j) * lam, for m > -1 and lam > 0:

    G(m, lam) = m*lam + 1/((m+1)*lam + 1/((m+2)*lam + ...))

Every evaluator returns a two-sided enclosure that is guaranteed to contain
the limit.  The guarantee comes from the classical alternation of convergents
for positive partial quotients (even convergents increase, odd convergents
decrease, the limit sits strictly between consecutive ones) applied to the
shifted tail at m + 1, where every term is positive, and mapped back through
the shift identity G(m, lam) = m*lam + 1/G(m+1, lam).

Two modes are provided.  Exact mode runs the convergent recurrence over big
rationals; it is the reference semantics.  Directed mode runs a backward
interval pass in fixed-precision dyadic arithmetic with outward rounding,
for small lam where exact numerators get impractically large.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Union

from .errors import (
    BudgetExceededError,
    DepthTooSmallError,
    DomainError,
    NotConvergedError,
    PrecisionError,
)

RationalLike = Union[Fraction, int, str, float]

DEFAULT_TOL = Fraction(1, 10**12)
DEFAULT_MAX_DEPTH = 10_000
DEFAULT_PRECISION_BITS = 128
#: below this lam, exact numerators blow up (useful depth scales like 1/lam)
DIRECTED_LAMBDA_CUTOFF = Fraction(1, 64)


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce to an exact Fraction; floats convert to their exact binary value."""
    return Fraction(value)


class EvalMode(str, Enum):
    EXACT = "exact"
    DIRECTED = "directed-fixed-precision"


@dataclass(frozen=True)
class EvalSettings:
    """Evaluation budget and mode-routing knobs shared by the higher layers."""

    max_depth: int = DEFAULT_MAX_DEPTH
    precision_bits: int = DEFAULT_PRECISION_BITS
    directed_cutoff: Fraction = DIRECTED_LAMBDA_CUTOFF


DEFAULT_SETTINGS = EvalSettings()


@dataclass(frozen=True)
class CFPoint:
    """Parameter pair (m, lam); the fraction's j-th term is (m + j) * lam.

    Construction rejects m <= -1 and lam <= 0, so downstream code never has
    to re-check the standing hypotheses.
    """

    m: Fraction
    lam: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", as_fraction(self.m))
        object.__setattr__(self, "lam", as_fraction(self.lam))
        if self.m <= -1:
            raise DomainError(f"m must exceed -1, got {self.m}")
        if self.lam <= 0:
            raise DomainError(f"lam must be positive, got {self.lam}")

    def shifted(self) -> "CFPoint":
        """The (m + 1, lam) point whose fraction is the all-positive tail."""
        return CFPoint(self.m + 1, self.lam)


@dataclass(frozen=True)
class ConvergentPair:
    """Recurrence state (P_n, Q_n) with the previous pair and the index n.

    Seeded from P_{-2} = 0, P_{-1} = 1, Q_{-2} = 1, Q_{-1} = 0, so that the
    n-th advance with term x_n produces the classical convergent P_n / Q_n.
    """

    p: Fraction
    q: Fraction
    p_prev: Fraction
    q_prev: Fraction
    n: int

    @classmethod
    def seed(cls) -> "ConvergentPair":
        return cls(
            p=Fraction(1), q=Fraction(0), p_prev=Fraction(0), q_prev=Fraction(1), n=-1
        )

    def determinant(self) -> Fraction:
        """P_n * Q_{n-1} - P_{n-1} * Q_n, which must equal (-1)**(n+1)."""
        return self.p * self.q_prev - self.p_prev * self.q

    def value(self) -> Fraction:
        """The convergent P_n / Q_n; undefined on the seed state."""
        if self.n < 0:
            raise DomainError("seed state has no convergent value (Q_{-1} = 0)")
        return self.p / self.q


def term(point: CFPoint, j: int) -> Fraction:
    """Exact j-th partial quotient (m + j) * lam."""
    if j < 0:
        raise DomainError(f"term index must be >= 0, got {j}")
    return (point.m + j) * point.lam


def advance(state: ConvergentPair, x: RationalLike) -> ConvergentPair:
    """One recurrence step: P_n = x*P_{n-1} + P_{n-2}, likewise for Q."""
    x = as_fraction(x)
    return ConvergentPair(
        p=x * state.p + state.p_prev,
        q=x * state.q + state.q_prev,
        p_prev=state.p,
        q_prev=state.q,
        n=state.n + 1,
    )


def convergents(point: CFPoint, depth: int) -> list[Fraction]:
    """Exact convergent values G_0 .. G_depth at the given point."""
    state = ConvergentPair.seed()
    out = []
    for j in range(depth + 1):
        state = advance(state, term(point, j))
        out.append(state.value())
    return out


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lo, hi] certified to contain G at some point.

    ``depth`` is the convergent index (exact mode) or backward-pass length
    (directed mode) that produced the bounds.
    """

    lo: Fraction
    hi: Fraction
    depth: int
    mode: EvalMode

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"malformed enclosure: {self.lo} > {self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value: RationalLike) -> bool:
        value = as_fraction(value)
        return self.lo <= value <= self.hi

    def straddles(self, value: RationalLike) -> bool:
        """True when ``value`` is interior or on the boundary, i.e. no verdict."""
        return self.contains(value)

    def intersects(self, other: "Enclosure") -> bool:
        return max(self.lo, other.lo) <= min(self.hi, other.hi)

    def encloses(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


# ---------------------------------------------------------------------------
# exact mode
# ---------------------------------------------------------------------------


def _scaled_convergents(m: Fraction, lam: Fraction) -> Iterator[tuple[int, int, int, int, int]]:
    """Integer-scaled convergents (n, p, q, p_prev, q_prev) at the point (m, lam).

    With m = a/b, lam = c/d and D = b*d, the terms are u_j / D with
    u_j = (a + j*b) * c.  Scaling the classical recurrence by D**(n+1) keeps
    every state integral: p_n = u_n * p_{n-1} + D**2 * p_{n-2}.  The scale
    cancels in the ratio, so p/q is exactly the convergent G_n.
    """
    a, b = m.numerator, m.denominator
    c, d = lam.numerator, lam.denominator
    big_d = b * d
    dd = big_d * big_d
    u = a * c
    du = b * c
    p_prev, q_prev = 1, 0
    p, q = u, big_d
    n = 0
    yield n, p, q, p_prev, q_prev
    while True:
        n += 1
        u += du
        p, p_prev = u * p + dd * p_prev, p
        q, q_prev = u * q + dd * q_prev, q
        yield n, p, q, p_prev, q_prev


def _pair_interval(n: int, p: int, q: int, pp: int, qq: int) -> tuple[Fraction, Fraction]:
    """Order the consecutive convergents (n-1, n) as (even, odd) = (lo, hi)."""
    g_last = Fraction(p, q)
    g_prev = Fraction(pp, qq)
    if n % 2 == 0:
        return g_last, g_prev
    return g_prev, g_last


def tail_enclosure(point: CFPoint, depth: int) -> Enclosure:
    """Bracket G(point) between the last even and odd convergents up to ``depth``.

    Requires m >= 0 so every term from index 1 on is positive; then even
    convergents increase, odd ones decrease, and the limit is strictly
    between the consecutive pair (depth - 1, depth).
    """
    if depth < 1:
        raise DepthTooSmallError(f"depth must be >= 1, got {depth}")
    if point.m < 0:
        raise DomainError("tail bracketing needs m >= 0 so all tail terms are positive")
    for n, p, q, pp, qq in _scaled_convergents(point.m, point.lam):
        if n == depth:
            lo, hi = _pair_interval(n, p, q, pp, qq)
            return Enclosure(lo=lo, hi=hi, depth=depth, mode=EvalMode.EXACT)
    raise AssertionError("unreachable")


def eval_enclosure(
    point: CFPoint,
    tol: RationalLike = DEFAULT_TOL,
    *,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> Enclosure:
    """Exact enclosure of G(point) of width <= tol.

    Evaluation always runs on the shifted tail at m + 1 (all terms positive
    there for any m > -1) and maps back through m*lam + 1/tail.  For the
    consecutive tail convergents (n-1, n) the mapped width is exactly
    1 / (P_n * P_{n-1}), so the minimal sufficient depth is found by an
    integer comparison and the result is deterministic.

    Raises BudgetExceededError with the best enclosure attached when the
    tolerance is unreachable within ``max_depth``.
    """
    tol = as_fraction(tol)
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    shift = point.shifted()
    x0 = point.m * point.lam
    big_d = shift.m.denominator * point.lam.denominator
    dd = big_d * big_d
    tn, td = tol.numerator, tol.denominator
    tn_bits = tn.bit_length()
    dpow = big_d  # D**(2n+1) at the pair (n-1, n), updated as n grows
    for n, p, q, pp, qq in _scaled_convergents(shift.m, point.lam):
        if n == 0:
            continue
        dpow *= dd
        rhs = dpow * td
        # cheap filter: lhs < 2**lb and rhs >= 2**(rb-1), so lb < rb rules it out
        if p.bit_length() + pp.bit_length() + tn_bits >= rhs.bit_length():
            if p * pp * tn >= rhs:
                t_lo, t_hi = _pair_interval(n, p, q, pp, qq)
                return Enclosure(
                    lo=x0 + 1 / t_hi, hi=x0 + 1 / t_lo, depth=n, mode=EvalMode.EXACT
                )
        if n >= max_depth:
            t_lo, t_hi = _pair_interval(n, p, q, pp, qq)
            best = Enclosure(
                lo=x0 + 1 / t_hi, hi=x0 + 1 / t_lo, depth=n, mode=EvalMode.EXACT
            )
            raise BudgetExceededError(
                f"width {float(best.width):.3e} > tol {float(tol):.3e} "
                f"at max_depth={max_depth}; raise the budget or use directed mode",
                best=best,
            )
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# directed mode
# ---------------------------------------------------------------------------


def _directed_tail(
    a: int, b: int, c: int, big_d: int, depth: int, bits: int
) -> tuple[int, int]:
    """Backward interval pass over the tail terms u_j / D, u_j = (a + j*b) * c.

    Bounds are integers scaled by 2**bits; every rounding is outward, so the
    returned [lo, hi] (divided by 2**bits) rigorously contains the tail value.
    The seed uses T_depth in (x_depth, x_depth + 1/x_{depth+1}).
    """
    sq = 1 << (2 * bits)

    def down(u: int) -> int:
        return (u << bits) // big_d

    def up(u: int) -> int:
        return -((-u << bits) // big_d)

    du = b * c
    u = (a + depth * b) * c
    x_next = down(u + du)
    lo = down(u)
    if lo <= 0 or x_next <= 0:
        raise PrecisionError("tail term rounds to zero; raise precision_bits")
    hi = up(u) + (-(-sq // x_next))
    for _ in range(depth):
        u -= du
        xl = down(u)
        if xl <= 0:
            raise PrecisionError("tail term rounds to zero; raise precision_bits")
        # old hi feeds the new lower bound and vice versa (reciprocal flips order)
        lo, hi = xl + sq // hi, up(u) + (-(-sq // lo))
    return lo, hi


def _depth_guess(lam: Fraction) -> int:
    # terms (m+1+j)*lam pass 1 near j ~ 1/lam; start a bit beyond
    return max(32, (3 * lam.denominator) // lam.numerator + 32)


def eval_directed(
    point: CFPoint,
    tol: RationalLike = DEFAULT_TOL,
    *,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> Enclosure:
    """Directed-rounding enclosure of G(point), for deep (small lam) evaluation.

    Same bracketing contract as eval_enclosure, but all tail arithmetic is
    fixed-precision with lower bounds rounded down and upper bounds rounded
    up, so the result remains rigorous at any depth.  Raises
    NotConvergedError with the best enclosure attached when the width is
    still above tol at ``max_depth``.
    """
    tol = as_fraction(tol)
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if precision_bits < 64:
        raise DomainError(f"precision_bits must be >= 64, got {precision_bits}")
    # keep the rounding floor well below the requested width
    bits = max(precision_bits, (tol.denominator // tol.numerator).bit_length() + 64)
    shift = point.shifted()
    a, b = shift.m.numerator, shift.m.denominator
    c = point.lam.numerator
    big_d = b * point.lam.denominator
    x0 = point.m * point.lam
    one = 1 << bits
    best: Enclosure | None = None
    depth = min(_depth_guess(point.lam), max_depth)
    while True:
        t_lo, t_hi = _directed_tail(a, b, c, big_d, depth, bits)
        lo = x0 + Fraction(one, t_hi)
        hi = x0 + Fraction(one, t_lo)
        if best is not None:
            # successive passes both contain G, so the intersection does too
            lo, hi = max(lo, best.lo), min(hi, best.hi)
        best = Enclosure(lo=lo, hi=hi, depth=depth, mode=EvalMode.DIRECTED)
        if best.width <= tol:
            return best
        if depth >= max_depth:
            raise NotConvergedError(
                f"width {float(best.width):.3e} > tol {float(tol):.3e} "
                f"at max_depth={max_depth}",
                best=best,
            )
        depth = min(2 * depth, max_depth)


def evaluate(
    point: CFPoint,
    tol: RationalLike = DEFAULT_TOL,
    *,
    mode: str | EvalMode = "auto",
    settings: EvalSettings | None = None,
) -> Enclosure:
    """Evaluate with mode routing: exact for ordinary lam, directed below the cutoff."""
    s = settings or DEFAULT_SETTINGS
    if mode == "auto":
        mode = EvalMode.EXACT if point.lam >= s.directed_cutoff else EvalMode.DIRECTED
    elif mode in ("directed", EvalMode.DIRECTED):
        mode = EvalMode.DIRECTED
    elif mode in ("exact", EvalMode.EXACT):
        mode = EvalMode.EXACT
    else:
        raise DomainError(f"unknown mode {mode!r}")
    if mode is EvalMode.EXACT:
        return eval_enclosure(point, tol, max_depth=s.max_depth)
    return eval_directed(
        point, tol, precision_bits=s.precision_bits, max_depth=s.max_depth
    )
