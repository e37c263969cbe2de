"""Exception types shared across the library."""


class BeliefNetError(Exception):
    """Base class for all errors raised by this library."""


class MissingValueError(BeliefNetError):
    """An assignment lacks a value that the operation needs."""


class InvalidQueryError(BeliefNetError):
    """The query is malformed: bad endpoints, an observed target, empty
    evidence where evidence is required, or mismatched vector lengths."""


class ImpossibleEvidenceError(BeliefNetError):
    """The evidence has probability zero under the network."""


class NotAPathError(BeliefNetError):
    """The requested triple is not a connected three-node chain."""


class NotAPolytreeError(BeliefNetError):
    """The operation requires a singly connected network."""


class NetworkTooLargeError(BeliefNetError):
    """The joint state space exceeds the enumeration guard."""


class NetfileSyntaxError(BeliefNetError):
    """A network file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class NetworkValidationError(BeliefNetError):
    """A parsed network violates structural invariants.

    Carries the list of violations so callers can report them one by one.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))
