"""Exceptions raised by the monoidcompletion package"""

from typing import Optional, Sequence, Tuple

from .enums import ExitCode


class CompletionError(Exception):
    pass


class InputError(CompletionError):
    pass


class ParseError(InputError):
    """A malformed input file

    :param message: What went wrong
    :param line: 1-based line number of the offending token
    :param column: 1-based column of the offending token
    """

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}" + (f", column {column}" if column is not None else "")
            location += ": "
        super().__init__(location + message)


class AssociativityError(InputError):
    """A table that is not a monoid, with the offending triple of element names"""

    def __init__(self, message: str, witness: Sequence[str]):
        self.witness: Tuple[str, ...] = tuple(witness)
        super().__init__(f"{message} (witness: {', '.join(self.witness)})")


class ResourceLimitError(CompletionError):
    """An enumeration or elimination exceeded its budget

    :param degree: The degree being built when the budget ran out, if any
    :param counts: Sizes reached so far, one per degree
    """

    def __init__(
        self, message: str, *, degree: Optional[int] = None, counts: Sequence[int] = ()
    ):
        self.degree = degree
        self.counts = tuple(counts)
        super().__init__(message)


class CertificateError(CompletionError):
    pass


class VerificationFailure(CompletionError):
    pass


_EXIT_CODES = {
    ExitCode.InputError: InputError,
    ExitCode.ResourceLimit: ResourceLimitError,
    ExitCode.VerificationFailure: VerificationFailure,
}


def create_exception(code: ExitCode, *args) -> CompletionError:
    """Create an exception from an ExitCode

    Extra args are forwarded to the Exception constructor.

    :param code: The exit code to create an Exception for
    """
    if code == ExitCode.Success:
        raise ValueError("Success is not an Error")
    return _EXIT_CODES[code](*args)


def exit_code_for(exc: BaseException) -> ExitCode:
    """The process exit code that reports this exception"""
    for code, exc_type in _EXIT_CODES.items():
        if isinstance(exc, exc_type):
            return code
    if isinstance(exc, CertificateError):
        return ExitCode.VerificationFailure
    raise exc
