"""Exception types raised across the package."""


class CDError(Exception):
    """Base class for every error raised by cdlattice."""


class NotAGroup(CDError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message if witness is None else f"{message} (witness {witness})")
        self.witness = witness


class BadDimensions(CDError, ValueError):
    pass


class NotAPermutation(CDError, ValueError):
    pass


class OrderCapExceeded(CDError):
    pass


class BudgetExceeded(CDError):
    pass


class NotNormal(CDError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message if witness is None else f"{message} (witness {witness})")
        self.witness = witness


class NotCentral(CDError, ValueError):
    pass


class OrderMismatch(CDError, ValueError):
    pass


class NotPGroup(CDError, ValueError):
    pass


class NotInLattice(CDError, ValueError):
    pass


class NotASubgroup(CDError, ValueError):
    pass


class InconsistentLattice(CDError):
    """The argmax set of the measure is not a sublattice; always an enumeration bug."""


class BadParameters(CDError, ValueError):
    pass


class PreconditionFailed(CDError, ValueError):
    pass


class GroupFileSyntaxError(CDError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
