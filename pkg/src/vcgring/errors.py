"""Exception types shared across the package."""

from __future__ import annotations


class VcgError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(VcgError, ValueError):
    """A group description or twist fails one of its arithmetic constraints.

    The message names the violated condition, e.g. ``"r^b ≢ 1 mod a"``.
    """


class NotAChainComplexError(VcgError, ValueError):
    """Two maps were composed that do not satisfy d∘d = 0.

    The message names the first nonzero entry of the composite.
    """


class CapacityError(VcgError, RuntimeError):
    """A computation was refused because it exceeds a configured size cap.

    Raised instead of silently degrading; the message carries the estimate
    that tripped the cap so callers can decide whether to retry elsewhere.
    """


class StructureUndeterminedError(CapacityError):
    """A group-size calculation pinned the *order* of an answer but could not
    afford the extra work to pin its isomorphism type."""


class RingElementError(VcgError, ValueError):
    """A cup-product request mixes symbols or degrees that do not make sense
    for the ring being queried."""
