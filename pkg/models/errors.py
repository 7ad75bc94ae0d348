"""
Exceptions raised by the pairing library.

ValidationFailure means the input was rejected (the CLI exits with 2),
InternalFailure means the computation could not finish (exit 1).
"""


class CtpairError(Exception):
    """Base class for every error raised by this package"""


class ValidationFailure(CtpairError):
    """The input does not satisfy a documented precondition"""


class InternalFailure(CtpairError):
    """A search or numeric procedure gave up before reaching an answer"""


# --- value-level errors ---

class ZeroFormError(CtpairError, ValueError):
    pass


class ZeroPointError(CtpairError, ValueError):
    pass


class SingularActionError(CtpairError, ValueError):
    pass


class ParentMismatchError(CtpairError, ValueError):
    pass


class NonUnitError(CtpairError, ArithmeticError):
    """Inversion of a zero divisor; `factor` is the common factor with the defining cubic"""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


# --- validation failures ---

class SingularQuarticError(ValidationFailure, ValueError):
    pass


class InvariantMismatchError(ValidationFailure):
    pass


class LocalInsolubilityError(ValidationFailure):
    def __init__(self, message, place=None):
        super().__init__(message)
        self.place = place


class NonSquareError(ValidationFailure):
    pass


class ArityError(ValidationFailure):
    pass


class MalformedInputError(ValidationFailure, ValueError):
    pass


# --- internal failures ---

class SqrtUndeterminedError(InternalFailure):
    pass


class LocalSearchError(InternalFailure):
    pass


class IdentityCheckError(InternalFailure):
    pass


class NormalizationError(InternalFailure):
    """No small proper action made z(g) a unit"""
