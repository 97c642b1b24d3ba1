import pytest

from monoidcompletion.enums import ExitCode
from monoidcompletion.exceptions import (
    AssociativityError,
    CertificateError,
    CompletionError,
    InputError,
    ParseError,
    ResourceLimitError,
    VerificationFailure,
    create_exception,
    exit_code_for,
)


@pytest.mark.parametrize(
    "code, exc_type",
    [
        (ExitCode.InputError, InputError),
        (ExitCode.ResourceLimit, ResourceLimitError),
        (ExitCode.VerificationFailure, VerificationFailure),
    ],
)
def test_create_exception(code, exc_type):
    exc = create_exception(code, "message")
    assert isinstance(exc, exc_type)
    assert exit_code_for(exc) == code


def test_success_is_not_an_error():
    with pytest.raises(ValueError):
        create_exception(ExitCode.Success)


def test_subclasses_map_to_their_parents():
    assert exit_code_for(ParseError("bad", 3, 4)) == ExitCode.InputError
    assert exit_code_for(AssociativityError("bad", ("a", "b", "c"))) == ExitCode.InputError
    assert exit_code_for(CertificateError("bad")) == ExitCode.VerificationFailure


def test_unknown_exceptions_propagate():
    with pytest.raises(KeyError):
        exit_code_for(KeyError("x"))


def test_messages():
    assert str(ParseError("Unknown element", 4, 10)) == "line 4, column 10: Unknown element"
    assert str(ParseError("Missing rows")) == "Missing rows"
    error = AssociativityError("M violates the associative law", ("a", "a", "a"))
    assert str(error).endswith("(witness: a, a, a)")
    limit = ResourceLimitError("too big", degree=3, counts=[1, 5, 25])
    assert limit.counts == (1, 5, 25)
    assert isinstance(limit, CompletionError)
