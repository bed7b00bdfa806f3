"""Exception hierarchy. CLI exit codes are attached to each class."""


class PmrError(Exception):
    exit_code = 1


class InputError(PmrError, ValueError):
    """Malformed input: bad edge id, bad file, wrong parameter."""

    exit_code = 2


class PreconditionError(InputError):
    pass


class StructureError(InputError):
    """Graph lacks a structural property an operation needs (e.g. 2-connectivity)."""


class DomainError(PmrError):
    """Instance outside the solvable class (non-outerplanar block)."""

    exit_code = 3


class DegenerateError(DomainError):
    pass


class SizeError(PmrError):
    """An enumeration or search guard was exceeded."""

    exit_code = 4


class InternalError(PmrError, AssertionError):
    """A proved invariant failed. Carries a dump of the offending instance."""

    def __init__(self, message, dump=None):
        super().__init__(message)
        self.dump = dump
