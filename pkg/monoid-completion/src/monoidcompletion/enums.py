"""Enumerations shared across the package"""

import enum


class ExitCode(enum.IntEnum):
    """Process exit codes of the command line interface"""

    Success = 0
    VerificationFailure = 1
    InputError = 2
    ResourceLimit = 3


class VerdictStatus(enum.Enum):
    TrivialCertified = "TrivialCertified"
    NontrivialCertified = "NontrivialCertified"
    Unknown = "Unknown"


class CheckStatus(enum.Enum):
    Pass = "pass"
    Fail = "fail"
    Skipped = "skipped"


class HomologyMethod(enum.Enum):
    """How torsion of H_n is extracted

    KernelBasis: SNF of the outgoing boundary gives a kernel basis, the incoming
        boundary is rewritten in that basis and reduced again.
    Cokernel: the invariant factors of the incoming boundary alone.
    Auto: KernelBasis while the matrices are small enough, Cokernel otherwise.
    """

    KernelBasis = "kernel-basis"
    Cokernel = "cokernel"
    Auto = "auto"


class SimplifyRule(enum.Enum):
    """Rewrite rules of presentation simplification, in the order they are tried"""

    IdempotentCollapse = "idempotent-collapse"
    UnitGenerator = "unit-generator"
    TietzeSubstitution = "tietze-substitution"
