"""The end to end check that P and M_* form a counterexample"""

import logging
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .bisimplicial import diagonal, wedge_levels
from .config import Settings, bundled_file
from .enums import CheckStatus, VerdictStatus
from .exceptions import CertificateError, CompletionError, VerificationFailure
from .homology import ZERO, HomologyGroup, Z, homology_groups, reduced
from .monoid import idempotents, make_paper_monoid_P, parse_monoid
from .presentation import simplify, universal_group_of_free_product, universal_group_of_table
from .report import CheckResult, Listener, LoggingListener, VerificationReport
from .resolution import (
    build_lemma_resolution,
    check_exactness,
    check_projectivity,
    tor_via_resolution,
)
from .simplicial import SimplicialSetTrunc, nerve, normalized_chains, simplicial_circle
from .simplicial_monoid import FACE_RULES, build_M, pi0_is_group

logger = logging.getLogger(__name__)

Values = Dict[str, object]
Check = Tuple[str, Callable[[], Values], int]


def _show(groups: Sequence[HomologyGroup]) -> str:
    return "(" + ", ".join(str(g) for g in groups) + ")"


def _expect(label: str, computed: Sequence[HomologyGroup], expected: Sequence[HomologyGroup]):
    if list(computed) != list(expected):
        raise VerificationFailure(f"{label} = {_show(computed)}, expected {_show(expected)}")


class PaperVerifier:
    """Runs every check in a fixed order and collects a VerificationReport

    :param settings: Truncation degree, number of levels and budgets
    :param face_rule: Name of the face rule of M_*, "standard" unless testing a negative control
    :param listeners: Notified as each check finishes
    """

    def __init__(
        self,
        settings: Optional[Settings] = None,
        face_rule: str = "standard",
        listeners: Optional[List[Listener]] = None,
    ):
        self.settings = settings or Settings()
        if face_rule not in FACE_RULES:
            raise CompletionError(f"Unknown face rule {face_rule!r}")
        self.face_rule = face_rule
        if listeners is None:
            listeners = [LoggingListener()]
        self._listeners = listeners
        self._p = make_paper_monoid_P()
        self._cache: Dict[str, object] = {}

    def add_listener(self, listener: Listener):
        self._listeners.append(listener)

    @property
    def _degree(self) -> int:
        return self.settings.max_degree

    def _homology(self, x: SimplicialSetTrunc) -> List[HomologyGroup]:
        return homology_groups(
            normalized_chains(x), two_step_max_cells=self.settings.two_step_max_cells
        )

    def _nerve_homology(self) -> List[HomologyGroup]:
        if "nerve" not in self._cache:
            bp = nerve(self._p, self._degree, self.settings.max_simplices)
            self._cache["nerve"] = self._homology(bp)
        return self._cache["nerve"]

    def _tor(self) -> List[HomologyGroup]:
        if "tor" not in self._cache:
            self._cache["tor"] = tor_via_resolution()
        return self._cache["tor"]

    def _suspension(self, x: SimplicialSetTrunc) -> List[HomologyGroup]:
        rule = FACE_RULES[self.face_rule]
        b = wedge_levels(x, self._degree, rule).verify()
        return self._homology(diagonal(b))

    def _diagonal_homology(self) -> List[HomologyGroup]:
        if "diagonal" not in self._cache:
            bp = nerve(self._p, self._degree, self.settings.max_simplices)
            self._cache["diagonal"] = self._suspension(bp)
        return self._cache["diagonal"]

    # Checks, each returning computed values or raising VerificationFailure

    def check_monoid(self) -> Values:
        bundled = parse_monoid(bundled_file("P.monoid").read_text(encoding="utf-8")).validate()
        if bundled != self._p:
            raise VerificationFailure("bundled P.monoid differs from the built-in table")
        found = idempotents(self._p)
        if len(found) != len(self._p):
            missing = sorted(set(self._p.element_names) - found)
            raise VerificationFailure(f"not idempotent: {', '.join(missing)}")
        return {"elements": len(self._p), "idempotents": len(found)}

    def check_universal_group(self) -> Values:
        original = universal_group_of_table(self._p)
        _, verdict = simplify(original, self.settings.step_limit)
        if verdict.status != VerdictStatus.TrivialCertified:
            raise VerificationFailure(f"UP simplification ended {verdict.status.value}")
        verdict.check(original)
        return {
            "generators": len(original.generators),
            "relators": len(original.relators),
            "verdict": verdict.status.value,
            "certificate steps": len(verdict.steps),
        }

    def check_resolution_exactness(self) -> Values:
        resolution = build_lemma_resolution()
        augmented = check_exactness(resolution.maps)
        if not augmented.exact:
            raise VerificationFailure(augmented.describe())
        deleted = check_exactness(resolution.maps[:2])
        interior = deleted.positions[:2]
        if not all(p.exact for p in interior):
            raise VerificationFailure(f"deleted resolution: {deleted.describe()}")
        return {
            "augmented": augmented.describe(),
            "deleted": "exact at " + ", ".join(p.module for p in interior),
        }

    def check_resolution_projectivity(self) -> Values:
        report = check_projectivity()
        if not report.projective:
            uncertified = [name for name, c in report.certificates.items() if c is None]
            raise VerificationFailure(f"no certificate for {', '.join(uncertified)}")
        values: Values = {
            name: f"e = {c.idempotent}, basis {' '.join(c.summand_basis)}"
            for name, c in report.certificates.items()
        }
        values["Z"] = "not certified (as expected)"
        return values

    def check_tor(self) -> Values:
        tor = self._tor()
        _expect("Tor", tor, [Z, ZERO, Z])
        return {"Tor_0..2": _show(tor)}

    def check_nerve_homology(self) -> Values:
        groups = self._nerve_homology()[:4]
        _expect("H_*(BP)", groups, [Z, ZERO, Z, ZERO][: len(groups)])
        return {f"H_0..{len(groups) - 1}(BP)": _show(groups)}

    def check_tor_matches_nerve(self) -> Values:
        nerve_groups = self._nerve_homology()[:3]
        tor = self._tor()[: len(nerve_groups)]
        if nerve_groups != tor:
            raise VerificationFailure(
                f"Tor {_show(tor)} differs from H_*(BP) {_show(nerve_groups)}"
            )
        return {"degrees": len(tor)}

    def check_simplicial_identities(self) -> Values:
        sm = build_M(self.settings.levels, FACE_RULES[self.face_rule])
        violation = sm.find_violation()
        if violation is not None:
            raise VerificationFailure(violation.describe())
        return {"levels": sm.k_max, "face rule": self.face_rule}

    def check_completion_levels(self) -> Values:
        values: Values = {}
        for j in range(1, self.settings.levels + 1):
            original = universal_group_of_free_product(j, self._p)
            _, verdict = simplify(original, self.settings.step_limit)
            if verdict.status != VerdictStatus.TrivialCertified:
                raise VerificationFailure(f"UM_{j} simplification ended {verdict.status.value}")
            verdict.check(original)
            values[f"UM_{j}"] = f"trivial ({len(original.generators)} generators)"
        return values

    def check_components(self) -> Values:
        result = pi0_is_group(build_M(self.settings.levels, FACE_RULES[self.face_rule]))
        if not result.is_group:
            raise VerificationFailure(f"pi_0 is not a group: {result.witness} has no inverse")
        size = len(result.quotient)
        return {"pi_0": "trivial group" if size == 1 else f"group of order {size}"}

    def check_suspension(self) -> Values:
        groups = self._diagonal_homology()[:4]
        _expect("H_*(diagonal S_*)", groups, [Z, ZERO, ZERO, Z][: len(groups)])
        return {f"H_0..{len(groups) - 1}(diagonal)": _show(groups)}

    def check_suspension_shift(self) -> Values:
        values: Values = {}
        n_max = self._degree
        spaces = {
            "BP": (self._nerve_homology(), self._diagonal_homology()),
            "circle": (
                self._homology(simplicial_circle(n_max)),
                self._suspension(simplicial_circle(n_max)),
            ),
        }
        for name, (base, suspended) in spaces.items():
            shifted = [ZERO] + [reduced(g, n) for n, g in enumerate(base)]
            observed = [reduced(g, n) for n, g in enumerate(suspended)]
            if observed != shifted[: len(observed)]:
                raise VerificationFailure(
                    f"reduced H_*(S {name}) = {_show(observed)}, "
                    f"expected shift {_show(shifted[: len(observed)])}"
                )
            values[name] = _show(observed)
        return values

    def checks(self) -> List[Check]:
        """(name, check, degree needed) in the order they run"""
        return [
            ("monoid-P", self.check_monoid, 0),
            ("universal-group-UP", self.check_universal_group, 0),
            ("resolution-exactness", self.check_resolution_exactness, 0),
            ("resolution-projectivity", self.check_resolution_projectivity, 0),
            ("tor", self.check_tor, 0),
            ("nerve-homology", self.check_nerve_homology, 3),
            ("tor-equals-nerve-homology", self.check_tor_matches_nerve, 3),
            ("simplicial-identities", self.check_simplicial_identities, 0),
            ("completion-levels", self.check_completion_levels, 0),
            ("pi0-group", self.check_components, 0),
            ("suspension-homology", self.check_suspension, 4),
            ("suspension-shift", self.check_suspension_shift, 2),
        ]

    def _notify(self, method: str, *args):
        for listener in self._listeners:
            try:
                getattr(listener, method)(*args)
            except Exception as exc:
                logger.error("Caught exception in listener callback: %s, %s", type(exc), exc)

    def run(self) -> VerificationReport:
        report = VerificationReport(
            parameters={
                "max_degree": self._degree,
                "levels": self.settings.levels,
                "face_rule": self.face_rule,
            }
        )
        for name, check, degree_needed in self.checks():
            self._notify("on_check_started", name)
            start = time.perf_counter()
            if self._degree < degree_needed:
                result = CheckResult(
                    name,
                    CheckStatus.Skipped,
                    witness=f"needs --max-degree >= {degree_needed}",
                )
            else:
                try:
                    values = check()
                    result = CheckResult(
                        name, CheckStatus.Pass, values, elapsed=time.perf_counter() - start
                    )
                except (VerificationFailure, CertificateError) as exc:
                    result = CheckResult(
                        name,
                        CheckStatus.Fail,
                        witness=str(exc),
                        elapsed=time.perf_counter() - start,
                    )
                except CompletionError as exc:
                    self._notify("on_error", exc)
                    raise
            report.add(result)
            self._notify("on_check", result)
        return report


def verify_paper(
    settings: Optional[Settings] = None,
    face_rule: str = "standard",
    listeners: Optional[List[Listener]] = None,
) -> VerificationReport:
    return PaperVerifier(settings, face_rule, listeners).run()
