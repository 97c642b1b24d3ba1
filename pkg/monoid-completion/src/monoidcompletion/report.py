"""Verification reports and listeners notified as checks complete"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .enums import CheckStatus, ExitCode
from .exceptions import CompletionError

logger = logging.getLogger(__name__)

CONJECTURE = (
    "Conjecture under test: if M_* is a simplicial monoid and pi_0|M_*| is a group, then "
    "group completion induces a homotopy equivalence |M_*| -> |UM_*|."
)
CONSEQUENCE = (
    "In particular, when UM_* is trivial and pi_0|M_*| is a group, |M_*| would be contractible."
)
EXPECTED_LOOP_SPACE = (
    "Expected, not computed: |M_*| ~ Omega S^3, so H_n = Z for every even n and 0 for odd n."
)


@dataclass(frozen=True)
class CheckResult:
    """One named check

    :param name: Stable identifier of the check
    :param status: pass, fail or skipped
    :param values: Computed values, rendered in order
    :param witness: Why a check failed, or why it was skipped
    :param elapsed: Wall clock seconds spent
    """

    name: str
    status: CheckStatus
    values: Dict[str, Any] = field(default_factory=dict)
    witness: Optional[str] = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.Pass

    def to_json(self, show_timings: bool = False) -> dict:
        out = {"name": self.name, "status": self.status.value, "values": self.values}
        if self.witness is not None:
            out["witness"] = self.witness
        if show_timings:
            out["elapsed"] = round(self.elapsed, 3)
        return out


@dataclass
class VerificationReport:
    """Ordered checks; the report passes iff every check that ran passed"""

    checks: List[CheckResult] = field(default_factory=list)
    parameters: Dict[str, Any] = field(default_factory=dict)

    def add(self, result: CheckResult) -> None:
        self.checks.append(result)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.status != CheckStatus.Skipped)

    @property
    def exit_code(self) -> ExitCode:
        return ExitCode.Success if self.passed else ExitCode.VerificationFailure

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status == CheckStatus.Fail]

    def to_text(self, show_timings: bool = False) -> str:
        lines = [CONJECTURE, CONSEQUENCE, ""]
        if self.parameters:
            lines.append(
                "parameters: " + ", ".join(f"{k}={v}" for k, v in self.parameters.items())
            )
        for c in self.checks:
            line = f"[{c.status.value}] {c.name}"
            if show_timings:
                line += f" ({c.elapsed:.3f}s)"
            lines.append(line)
            for key, value in c.values.items():
                lines.append(f"    {key}: {value}")
            if c.witness is not None:
                lines.append(f"    witness: {c.witness}")
        lines.extend(["", EXPECTED_LOOP_SPACE, ""])
        lines.append("RESULT: " + ("PASS" if self.passed else "FAIL"))
        for c in self.failures():
            lines.append(f"failed: {c.name}")
        return "\n".join(lines) + "\n"

    def to_json(self, show_timings: bool = False) -> str:
        document = {
            "conjecture": CONJECTURE,
            "consequence": CONSEQUENCE,
            "parameters": self.parameters,
            "checks": [c.to_json(show_timings) for c in self.checks],
            "expected_loop_space_homology": EXPECTED_LOOP_SPACE,
            "passed": self.passed,
        }
        return json.dumps(document, indent=2, sort_keys=False) + "\n"


class Listener:
    """Base class for observers of a verification run

    Subclass and override the methods of interest.
    """

    def on_check(self, result: CheckResult):
        """Called once per finished check

        Overriding this bypasses the per-status methods unless the override calls it.
        """
        getattr(self, self._STATUS_CALLS[result.status])(result)

    def on_error(self, error: CompletionError):
        """An exception that aborted the run"""
        pass

    def on_check_started(self, name: str):
        pass

    def on_pass(self, result: CheckResult):
        pass

    def on_fail(self, result: CheckResult):
        pass

    def on_skipped(self, result: CheckResult):
        pass

    _STATUS_CALLS = {
        CheckStatus.Pass: "on_pass",
        CheckStatus.Fail: "on_fail",
        CheckStatus.Skipped: "on_skipped",
    }


class LoggingListener(Listener):
    def on_check_started(self, name: str):
        logger.info("Running %s", name)

    def on_pass(self, result: CheckResult):
        logger.info("%s passed in %.3fs", result.name, result.elapsed)

    def on_fail(self, result: CheckResult):
        logger.warning("%s FAILED: %s", result.name, result.witness)

    def on_skipped(self, result: CheckResult):
        logger.info("%s skipped: %s", result.name, result.witness)

    def on_error(self, error: CompletionError):
        logger.error("Verification aborted: %s", error)


class LatestResultListener(Listener):
    """Remembers the last result of one named check"""

    def __init__(self, target: str):
        self._target = target
        self.result: Optional[CheckResult] = None

    def on_check(self, result: CheckResult):
        if result.name == self._target:
            self.result = result
