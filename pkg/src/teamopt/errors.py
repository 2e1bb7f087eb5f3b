"""Exception hierarchy shared by all modules."""


class TeamOptError(Exception):
    """Base class for every error raised by this package."""


class DataError(TeamOptError):
    """Input data is malformed or violates a precondition (CLI exit code 2)."""


class LimitError(TeamOptError):
    """A size guard or resource limit was exceeded (CLI exit code 3)."""


class FormatError(DataError):
    def __init__(self, message, *, line=None, field=None):
        context = []
        if line is not None:
            context.append(f"line {line}")
        if field is not None:
            context.append(f"field {field!r}")
        if context:
            message = f"{message} ({', '.join(context)})"
        super().__init__(message)
        self.line = line
        self.field = field


class EmptyInstance(DataError):
    pass


class DuplicateHero(DataError):
    pass


class UnknownAlliance(DataError):
    pass


class NegativeBonus(DataError):
    pass


class InvalidInstance(DataError):
    pass


class UnknownHero(DataError):
    pass


class TeamTooLarge(DataError):
    pass


class IncompleteAssignment(DataError):
    pass


class NotApplicable(DataError):
    pass


class InvalidBranch(DataError):
    pass


class InvalidK(DataError):
    pass


class NotEnoughHeroes(DataError):
    pass


class DegenerateCap(DataError):
    pass


class NotPairForm(DataError):
    pass


class InconsistentClique(DataError):
    pass


class LabelMismatch(DataError):
    pass


class TooLarge(LimitError):
    pass
