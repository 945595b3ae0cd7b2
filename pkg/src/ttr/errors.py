"""Exception hierarchy shared by every layer of the engine."""


class TTRError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class ParseError(TTRError):
    pass


class NotFiniteDimensional(TTRError):
    pass


class NonAdmissible(TTRError):
    pass


class AlgebraMismatch(TTRError):
    pass


class SupportViolation(TTRError):
    pass


class NotMinimal(TTRError):
    pass


class NotPresilting(TTRError):
    pass


class CapZero(TTRError):
    pass


class IncompleteGraph(TTRError):
    exit_code = 2


class IncompleteInterval(IncompleteGraph):
    pass


class InvariantViolation(TTRError):
    """An internal consistency check failed; indicates a bug."""

    exit_code = 3


class DecompositionFailure(InvariantViolation):
    pass


class MutationInvariantViolation(InvariantViolation):
    pass


class DimCMismatch(InvariantViolation):
    pass
