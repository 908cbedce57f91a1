"""Exception hierarchy.

Everything that signals a bad user-supplied parameter derives from
:class:`ParameterError` so front ends can map it to a single exit status.
Internal consistency failures (a formula that should collapse to an integer
and does not, a histogram that disagrees with its closed form) derive from
:class:`VerificationError`.
"""


class CodesError(Exception):
    pass


class ParameterError(CodesError, ValueError):
    pass


class NonPrime(ParameterError):
    pass


class SizeCapExceeded(ParameterError):
    pass


class BudgetExceeded(ParameterError):
    pass


class NotADivisor(ParameterError):
    pass


class NotInSubfield(ParameterError):
    pass


class ParityViolation(ParameterError):
    pass


class InvalidExponent(ParameterError):
    pass


class UnclassifiableResidue(ParameterError):
    pass


class PreconditionViolated(ParameterError):
    pass


class UnsupportedBranch(ParameterError):
    pass


class ZeroForm(ParameterError):
    pass


class ZeroB(ParameterError):
    pass


class MixedP(ParameterError):
    pass


class DivisionByZero(CodesError, ZeroDivisionError):
    pass


class VerificationError(CodesError):
    pass


class NoPrimitivePolynomial(VerificationError):
    pass


class NoWitnessK(VerificationError):
    pass


class EmptyDefiningSet(VerificationError):
    pass


class NonIntegerCollapse(VerificationError):
    pass


class SpectrumMismatch(VerificationError):
    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


class Mismatch(VerificationError):
    def __init__(self, message, first=None):
        super().__init__(message)
        self.first = first
