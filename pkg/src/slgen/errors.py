"""Exception hierarchy shared across the package.

Two families matter to callers: parse errors (bad text input, CLI exit 1)
and mathematical precondition failures (provable obstructions or violated
hypotheses, CLI exit 2).  Everything else is an internal defect.
"""


class SlgenError(Exception):
    """Base class for all package errors."""


class ParseError(SlgenError):
    """Malformed text input (field spec, polynomial, matrix)."""


class FieldMismatchError(SlgenError):
    """Arithmetic between elements of different fields or rings."""


class RepresentationError(SlgenError):
    """An internal consistency check on element coordinates failed."""


class MathPreconditionError(SlgenError):
    """A mathematical hypothesis of an operation does not hold."""

    code = "MathPrecondition"


class NotIrreducibleError(MathPreconditionError):
    code = "NotIrreducible"


class RootsNotConsistentError(MathPreconditionError):
    code = "RootsNotConsistent"


class ConsistencyLostError(MathPreconditionError):
    """Reduction mod p destroyed the consistency property."""

    code = "ConsistencyLost"


class ExceptionalCaseError(MathPreconditionError):
    """The (n, p) = (3, 3) obstruction: no generating pair exists."""

    code = "ExceptionalCase"


class EvenCharacteristicError(MathPreconditionError):
    """Constructions require odd characteristic; only random search works over F_2."""

    code = "EvenCharacteristic"


class RetryBudgetError(SlgenError):
    """A randomized search exhausted its retry budget."""
