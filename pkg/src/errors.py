"""
Exception hierarchy for wittforge.
Sprint: S0

Library code raises these for precondition and contract violations.
Check functions never raise for mathematical failures: they record
counterexamples in their report instead.
"""

from __future__ import annotations


class WittforgeError(Exception):
    """Base class for every error raised by wittforge."""


class RingSpecError(WittforgeError, ValueError):
    """Invalid ring specification (non-prime p, bad exponents, parse failure)."""

    def __init__(self, message: str, position: int | None = None) -> None:
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class EnumerationBoundError(WittforgeError):
    """Requested enumeration exceeds the configured bound."""


class IncompatibleOperandsError(WittforgeError, ValueError):
    """Operands live over different rings, lengths or degrees."""


class DegreeError(WittforgeError, ValueError):
    """Degree bookkeeping violation, e.g. V applied to a degree not divisible by p."""


class NotAUnitError(WittforgeError, ArithmeticError):
    """Inversion of a non-unit."""


class DivisibilityError(WittforgeError, ArithmeticError):
    """An exact division failed."""


class DworkConditionError(DivisibilityError):
    """Ghost sequence violates the congruences required by Dwork's lemma."""


class PrecisionError(WittforgeError, ArithmeticError):
    """Tracked p-adic precision is exhausted."""


class ConsistencyError(WittforgeError):
    """Internal law violation, e.g. the two Witt strategies disagree."""


class HomomorphismError(WittforgeError, ValueError):
    """A proposed ring endomorphism is not a homomorphism or not a Frobenius lift."""


class SymbolicBoundError(WittforgeError):
    """Universal polynomials requested beyond the symbolic bound."""


class PrimitivityError(WittforgeError, ValueError):
    """A point or Witt vector fails the primitivity condition."""


class TruncationError(WittforgeError, ValueError):
    """Truncation length too short for the requested operation."""


class CategoryError(WittforgeError, ValueError):
    """Category axioms (associativity, identities, functoriality) fail."""


class CoeqAssumptionError(CategoryError):
    """Coequalizer instance violates the closed-form hypotheses."""


class SaturationError(CategoryError):
    """Brute-force word exploration did not stabilise within the window."""


class UnknownCheckError(WittforgeError, KeyError):
    """No registered check matches the given id or pattern."""
