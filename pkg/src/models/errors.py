class TldkitError(Exception):
    """
    Base class for every error raised by tldkit.
    The CLI maps any TldkitError to exit code 2 (invalid input)
    """


class InvalidArguments(TldkitError, ValueError):
    pass


class InvalidIndex(InvalidArguments):
    pass


class ParseError(InvalidArguments):
    pass


class NotDivisible(TldkitError, ArithmeticError):
    pass


class DivisionByZero(TldkitError, ZeroDivisionError):
    pass


class IncompatibleHalves(TldkitError, ValueError):
    pass


class SizeMismatch(TldkitError, ValueError):
    pass


class BasisMismatch(TldkitError, ValueError):
    pass


class MethodUnsupported(TldkitError):
    pass


class RenormalizationError(TldkitError):
    """
    A concatenation produced a parity pattern that is not a valid
    decoration set. Never observed on products of basis diagrams
    """
