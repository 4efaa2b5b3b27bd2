"""Exception types shared across the package."""

from __future__ import annotations


class CharlabError(Exception):
    """Base class for all package errors."""


class TooLarge(CharlabError):
    """An enumeration was requested beyond its configured bound."""


class UnsupportedOperation(CharlabError):
    """The variety does not carry the requested operation."""


class VarietyMismatch(CharlabError):
    """Two algebras that must share a variety (tag and modulus) do not."""


class ParentMismatch(CharlabError):
    """Two subobjects that must live in the same parent algebra do not."""


class ValidationError(CharlabError):
    """A variety law failed; ``witness`` instantiates the violation."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAGroup(ValidationError):
    pass


class NotAssociative(ValidationError):
    pass


class AntisymmetryFails(ValidationError):
    pass


class JacobiFails(ValidationError):
    pass


class InvalidMorphism(CharlabError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidAction(CharlabError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotNormalError(CharlabError):
    pass


class NotSurjectiveError(CharlabError):
    pass


class NotInvariantError(CharlabError):
    pass


class NotWellDefinedError(CharlabError):
    """An induced map failed representative independence.  Signals a bug or a
    violated hypothesis; must not occur when preconditions hold."""


class KernelNotInvariant(CharlabError):
    """Conjugation in a split extension left the kernel.  Cannot occur for a
    valid split extension; raised as a hard assertion."""


class NotCharacteristicError(CharlabError):
    pass


class NotRepresentative(CharlabError):
    """The variety has no actor object (actions are not representable)."""


class NotAccessibleVariety(CharlabError):
    """The variety does not support the canonical faithful quotient."""


class FreeBasisUnavailable(CharlabError):
    """A subalgebra or quotient of a free Z_m-module is not free over Z_m.

    Only possible for composite moduli; carriers stay free over prime ones.
    """


class SpecFileError(CharlabError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class SpecSyntaxError(SpecFileError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 expected: str | None = None):
        if expected:
            message = f"{message}; expected {expected}"
        super().__init__(message, line, column)
        self.expected = expected


class UndeclaredLabel(SpecFileError):
    def __init__(self, label: str, line: int | None = None, column: int | None = None):
        super().__init__(f"undeclared label {label!r}", line, column)
        self.label = label
