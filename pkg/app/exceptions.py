"""
Error types raised by the RSL engine.

Every error derives from RslError so entry points can catch the whole family
in one place and map it to exit code 1.
"""

from typing import Optional


class RslError(Exception):
    """Base class for all engine errors."""


class RoundingUnsafe(RslError, ArithmeticError):
    """Floating FFT product cannot be rounded to exact integers."""


class NotAPolynomial(RslError, ValueError):
    """Operation needs an ordinary polynomial (offset 0)."""


class ZeroSequence(RslError, ValueError):
    """Operation needs a nonzero polynomial."""


class LengthMismatch(RslError, ValueError):
    """Two sequences were expected to have the same length."""


class ZeroDemeritFactor(RslError, ZeroDivisionError):
    """Merit factor requested for a demerit factor of zero."""


class BadSeed(RslError, ValueError):
    """Seed has a nonzero offset or a zero constant coefficient."""


class BadSign(RslError, ValueError):
    """Sign values must be +1 or -1."""


class DepthExceedsSigns(RslError, ValueError):
    """Requested stem depth is longer than the sign sequence."""


class StemDepthExceeded(RslError, ValueError):
    """Requested stem depth is above the exact-stem cap."""


class NotLittlewood(RslError, ValueError):
    """Polynomial has a coefficient outside {-1, +1}."""


class InvalidWord(RslError, ValueError):
    """Symmetry word uses an unknown generator or one not valid for the target."""


class RelationViolation(RslError):
    """A group relation failed on some witness."""

    def __init__(self, word: str, witness: str, detail: Optional[str] = None):
        self.word = word
        self.witness = witness
        message = f"relation {word} fails on {witness}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class BadHex(RslError, ValueError):
    """Hex seed text is malformed or inconsistent with the length."""


class CorruptCheckpoint(RslError):
    """Checkpoint content does not match its stored hash or cannot be parsed."""


class ObjectiveMismatch(RslError):
    """Checkpoint belongs to a different scan."""


class ScanInconsistency(RslError):
    """A scan representative does not re-evaluate to the scan minimum."""
