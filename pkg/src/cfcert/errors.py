"""Exception types shared across the package."""

from __future__ import annotations


class CFCertError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CFCertError, ValueError):
    """Input outside the supported domain (m <= -1, lam <= 0, bad tolerance...)."""


class DepthTooSmallError(CFCertError, ValueError):
    """A bracketing enclosure needs at least one even and one odd convergent."""


class PrecisionError(CFCertError):
    """Fixed-precision bound collapsed to zero; raise precision_bits."""


class BudgetExceededError(CFCertError):
    """Exact evaluation hit the depth budget before reaching the tolerance.

    ``best`` holds the rigorous enclosure reached at the budget limit.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class NotConvergedError(CFCertError):
    """Directed evaluation stopped above the tolerance; ``best`` is still rigorous."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class InconclusiveError(CFCertError):
    """Enclosures still overlap after maximum tightening; no verdict either way."""

    def __init__(self, message: str, claim=None, left=None, right=None):
        super().__init__(message)
        self.claim = claim
        self.left = left
        self.right = right


class ViolationError(CFCertError):
    """An identity that must hold failed; signals an arithmetic bug, not new math."""


class TailNotBoundedError(CFCertError):
    """Series truncated too early for the geometric tail majorant to apply."""


class NoWitnessFoundError(CFCertError):
    """No certified decrease pair on the scanned grid (not a refutation)."""

    def __init__(self, message: str, m=None, grid=None):
        super().__init__(message)
        self.m = m
        self.grid = tuple(grid) if grid is not None else None
