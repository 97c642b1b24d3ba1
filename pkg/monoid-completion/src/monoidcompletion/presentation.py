"""Group presentations, the universal group of a monoid and simplification with certificates

A word is a tuple of letters (generator, exponent) with exponent +1 or -1. Relators
are kept freely reduced and nonempty.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .enums import SimplifyRule, VerdictStatus
from .exceptions import CertificateError, InputError, ParseError
from .monoid import FiniteMonoid
from .snf import smith_normal_form
from .sparse import SparseIntMatrix

logger = logging.getLogger(__name__)

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]

DEFAULT_STEP_LIMIT = 10_000


def free_reduce(word: Sequence[Letter]) -> Word:
    stack: List[Letter] = []
    for g, e in word:
        if stack and stack[-1] == (g, -e):
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


def inverse_word(word: Sequence[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def substitute(word: Sequence[Letter], values: Dict[str, Word]) -> Word:
    """Replace generators by words and freely reduce"""
    out: List[Letter] = []
    for g, e in word:
        if g in values:
            out.extend(values[g] if e == 1 else inverse_word(values[g]))
        else:
            out.append((g, e))
    return free_reduce(out)


def format_word(word: Sequence[Letter]) -> str:
    if not word:
        return "1"
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in word)


@dataclass(frozen=True)
class GroupPresentation:
    """<generators | relators>, each relator a word equal to the identity"""

    generators: Tuple[str, ...] = ()
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise InputError("Repeated generator in presentation")
        known = set(self.generators)
        for r in self.relators:
            for g, e in r:
                if g not in known:
                    raise InputError(f"Relator {format_word(r)} uses unknown generator {g}")
                if e not in (1, -1):
                    raise InputError(f"Exponent {e} in relator {format_word(r)}")
            if free_reduce(r) != r:
                raise InputError(f"Relator {format_word(r)} is not freely reduced")

    def format(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        lines.extend(f"rel: {format_word(r)}" for r in self.relators)
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        relators = ", ".join(format_word(r) for r in self.relators)
        return f"<{' '.join(self.generators)} | {relators}>"


def parse_presentation(text: str) -> GroupPresentation:
    """Read `gens: a b ...` followed by `rel: a b^-1 ...` lines

    Relators are freely reduced on the way in; those reducing to nothing are dropped.
    """
    generators: Optional[List[str]] = None
    relators: List[Word] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head, sep, body = line.partition(":")
        keyword = head.strip()
        if not sep or keyword not in ("gens", "rel"):
            raise ParseError("Expected 'gens:' or 'rel:'", number, 1)
        if keyword == "gens":
            if generators is not None:
                raise ParseError("'gens:' given twice", number, 1)
            generators = body.split()
            continue
        if generators is None:
            raise ParseError("'rel:' before 'gens:'", number, 1)
        word = []
        column = len(head) + 1
        for token in body.split():
            column = line.index(token, column)
            name, caret, power = token.partition("^")
            if caret and power != "-1":
                raise ParseError(f"Bad exponent in {token!r}", number, column + 1)
            if name not in generators:
                raise ParseError(f"Unknown generator {name!r}", number, column + 1)
            word.append((name, -1 if caret else 1))
            column += len(token)
        reduced = free_reduce(word)
        if reduced:
            relators.append(reduced)
    if generators is None:
        raise ParseError("Missing 'gens:' line")
    return GroupPresentation(tuple(generators), tuple(relators))


def universal_group_of_table(m: FiniteMonoid) -> GroupPresentation:
    """<[m] for non-units m | [m][n][mn]^-1>, with [unit] read as the empty word"""
    non_units = m.non_units()
    symbol = {a: f"[{m.element_names[a]}]" for a in non_units}
    relators = []
    for a in non_units:
        for b in non_units:
            c = m.multiply(a, b)
            word = [(symbol[a], 1), (symbol[b], 1)]
            if c != m.unit_index:
                word.append((symbol[c], -1))
            reduced = free_reduce(word)
            if reduced:
                relators.append(reduced)
    return GroupPresentation(tuple(symbol[a] for a in non_units), tuple(relators))


def free_product(presentations: Sequence[GroupPresentation]) -> GroupPresentation:
    """The coproduct: disjoint union of generators and relators

    With two or more summands generator g of summand t is renamed g_t.
    """
    if len(presentations) == 1:
        return presentations[0]
    generators: List[str] = []
    relators: List[Word] = []
    for t, p in enumerate(presentations, start=1):
        rename = {g: f"{g}_{t}" for g in p.generators}
        generators.extend(rename[g] for g in p.generators)
        relators.extend(tuple((rename[g], e) for g, e in r) for r in p.relators)
    return GroupPresentation(tuple(generators), tuple(relators))


def universal_group_of_free_product(k: int, factor: FiniteMonoid) -> GroupPresentation:
    """U of the k-fold free product, the k-fold free product of U(factor)"""
    if k < 0:
        raise InputError("Number of free summands must be nonnegative")
    return free_product([universal_group_of_table(factor)] * k)


class Abelianization(NamedTuple):
    free_rank: int
    torsion: Tuple[int, ...]

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def abelianization(p: GroupPresentation) -> Abelianization:
    """Invariants of the exponent-sum matrix, relators by generators"""
    column = {g: j for j, g in enumerate(p.generators)}
    entries: Dict[Tuple[int, int], int] = {}
    for i, r in enumerate(p.relators):
        for g, e in r:
            entries[(i, column[g])] = entries.get((i, column[g]), 0) + e
    matrix = SparseIntMatrix(len(p.relators), len(p.generators), entries)
    form = smith_normal_form(matrix, transforms=False)
    return Abelianization(len(p.generators) - form.rank, form.torsion)


@dataclass(frozen=True)
class RewriteStep:
    """Eliminate `generator` by `replacement`, justified by `relator`"""

    rule: SimplifyRule
    generator: str
    replacement: Word
    relator: Word

    def describe(self) -> str:
        return (
            f"{self.rule.value}: {self.generator} = {format_word(self.replacement)} "
            f"(from relator {format_word(self.relator)})"
        )


@dataclass(frozen=True)
class TrivialityVerdict:
    """The outcome of `simplify` with its certificate

    :param status: TrivialCertified, NontrivialCertified or Unknown
    :param steps: The rewrite log from the original presentation
    :param invariants: The nonzero abelianization for NontrivialCertified
    """

    status: VerdictStatus
    steps: Tuple[RewriteStep, ...] = ()
    invariants: Optional[Abelianization] = None

    def check(self, original: GroupPresentation) -> GroupPresentation:
        """Replay the certificate, raising CertificateError if it does not hold"""
        final = replay_certificate(original, self.steps)
        if self.status == VerdictStatus.TrivialCertified:
            if final.generators:
                raise CertificateError(f"Generators {final.generators} survive the rewrite log")
            values = eliminated_values(original, self.steps)
            survivors = [g for g, w in values.items() if w]
            if survivors:
                raise CertificateError(f"Generators {survivors} do not reduce to the empty word")
        elif self.status == VerdictStatus.NontrivialCertified:
            recomputed = abelianization(original)
            if self.invariants is None or recomputed != self.invariants:
                raise CertificateError(
                    f"Abelianization {recomputed} does not match the certificate {self.invariants}"
                )
            if recomputed.is_trivial():
                raise CertificateError("A trivial abelianization certifies nothing")
        return final


def _normalize(relators: Sequence[Word]) -> Tuple[Word, ...]:
    seen = set()
    out = []
    for r in relators:
        r = free_reduce(r)
        if r and r not in seen:
            seen.add(r)
            out.append(r)
    return tuple(out)


def _apply(p: GroupPresentation, step: RewriteStep) -> GroupPresentation:
    values = {step.generator: step.replacement}
    relators = _normalize([substitute(r, values) for r in p.relators])
    generators = tuple(g for g in p.generators if g != step.generator)
    return GroupPresentation(generators, relators)


def _find_step(p: GroupPresentation) -> Optional[RewriteStep]:
    """The first applicable rule in the fixed order, scanning relators in order"""
    for r in p.relators:
        if len(r) == 1 and r[0][1] == 1:
            return RewriteStep(SimplifyRule.IdempotentCollapse, r[0][0], (), r)
    for r in p.relators:
        if len(r) == 1:
            return RewriteStep(SimplifyRule.UnitGenerator, r[0][0], (), r)
    for r in sorted(p.relators, key=len):
        counts: Dict[str, int] = {}
        for g, _ in r:
            counts[g] = counts.get(g, 0) + 1
        for position, (g, e) in enumerate(r):
            if counts[g] != 1:
                continue
            # g^e * rest = 1 after rotating g^e to the front
            rest = r[position + 1 :] + r[:position]
            replacement = free_reduce(inverse_word(rest) if e == 1 else rest)
            return RewriteStep(SimplifyRule.TietzeSubstitution, g, replacement, r)
    return None


def simplify(
    p: GroupPresentation, step_limit: int = DEFAULT_STEP_LIMIT
) -> Tuple[GroupPresentation, TrivialityVerdict]:
    """Eliminate generators until no rule applies or the step limit is reached

    Rules are tried in order: idempotent collapse (a relator that is a single
    generator), unit generator (a relator of length one), Tietze substitution (a
    relator containing some generator exactly once). Every step ends with free
    reduction and removal of empty and repeated relators.
    """
    current = GroupPresentation(p.generators, _normalize(p.relators))
    steps: List[RewriteStep] = []
    exhausted = False
    while True:
        step = _find_step(current)
        if step is None:
            break
        if len(steps) >= step_limit:
            exhausted = True
            break
        steps.append(step)
        current = _apply(current, step)
        logger.debug(step.describe())

    if not current.generators:
        verdict = TrivialityVerdict(VerdictStatus.TrivialCertified, tuple(steps))
    elif exhausted:
        verdict = TrivialityVerdict(VerdictStatus.Unknown, tuple(steps))
    else:
        invariants = abelianization(current)
        if invariants.is_trivial():
            verdict = TrivialityVerdict(VerdictStatus.Unknown, tuple(steps))
        else:
            verdict = TrivialityVerdict(
                VerdictStatus.NontrivialCertified, tuple(steps), invariants
            )
    logger.info(
        "Simplified %d generators to %d in %d steps: %s",
        len(p.generators),
        len(current.generators),
        len(steps),
        verdict.status.value,
    )
    return current, verdict


def replay_certificate(
    original: GroupPresentation, steps: Sequence[RewriteStep]
) -> GroupPresentation:
    """Re-derive the simplified presentation, checking each step is justified"""
    current = GroupPresentation(original.generators, _normalize(original.relators))
    for number, step in enumerate(steps, start=1):
        if step.generator not in current.generators:
            raise CertificateError(f"Step {number}: {step.generator} is not a generator")
        if step.relator not in current.relators:
            raise CertificateError(
                f"Step {number}: relator {format_word(step.relator)} is not present"
            )
        if any(g == step.generator for g, _ in step.replacement):
            raise CertificateError(f"Step {number}: replacement mentions {step.generator}")
        if any(g not in current.generators for g, _ in step.replacement):
            raise CertificateError(f"Step {number}: replacement uses unknown generators")
        if substitute(step.relator, {step.generator: step.replacement}):
            raise CertificateError(
                f"Step {number}: {step.describe()} does not follow from its relator"
            )
        current = _apply(current, step)
    return current


def eliminated_values(
    original: GroupPresentation, steps: Sequence[RewriteStep]
) -> Dict[str, Word]:
    """Each original generator as a word in the generators that survive the steps"""
    values: Dict[str, Word] = {g: ((g, 1),) for g in original.generators}
    for step in steps:
        update = {step.generator: step.replacement}
        values = {g: substitute(w, update) for g, w in values.items()}
    return values
