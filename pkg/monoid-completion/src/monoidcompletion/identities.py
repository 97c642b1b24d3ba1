"""The simplicial identities, checked on any truncated simplicial object

An object only has to say how to evaluate a face or degeneracy on a batch of
probe values at a given level, and how to compare two batches.
"""

from dataclasses import dataclass
from typing import Any, Iterator, Optional, Protocol, Sequence, Tuple

# An operator is ("d", i) or ("s", i); a composite lists them in the order applied.
Operator = Tuple[str, int]


@dataclass(frozen=True)
class SimplicialIdentity:
    """One instance lhs = rhs of a simplicial identity on level `level`"""

    family: str
    level: int
    lhs: Tuple[Operator, ...]
    rhs: Tuple[Operator, ...]

    def describe(self) -> str:
        def spell(ops):
            if not ops:
                return "id"
            return " ".join(f"{kind}{i}" for kind, i in reversed(ops))

        return f"{spell(self.lhs)} = {spell(self.rhs)} on level {self.level}"


@dataclass(frozen=True)
class IdentityViolation:
    identity: SimplicialIdentity
    probe: Any
    lhs_value: Any
    rhs_value: Any

    def describe(self) -> str:
        return (
            f"{self.identity.describe()} fails on {self.probe}: "
            f"{self.lhs_value} != {self.rhs_value}"
        )


class SimplicialObject(Protocol):
    """What `find_identity_violation` needs from a truncated simplicial object"""

    @property
    def top(self) -> int:
        """Highest level present"""

    def probes(self, level: int) -> Sequence[Any]:
        """Values on which identities are tested at this level"""

    def apply(self, kind: str, i: int, level: int, values: Any) -> Any:
        """Apply d_i or s_i of the given level to a batch of values"""

    def same(self, a: Any, b: Any) -> Optional[int]:
        """None if the batches agree, else the position of the first difference"""

    def label(self, level: int, position: int) -> Any:
        """Human readable name of a probe"""

    def format_value(self, level: int, value: Any) -> Any:
        """Human readable form of one value on the given level"""


def iter_identities(level: int, top: int) -> Iterator[SimplicialIdentity]:
    """Every identity instance with source `level` whose maps exist up to `top`

    Faces exist on levels 1..top and degeneracies on levels 0..top-1.
    """
    k = level
    if k >= 2:
        for j in range(1, k + 1):
            for i in range(j):
                yield SimplicialIdentity("dd", k, (("d", j), ("d", i)), (("d", i), ("d", j - 1)))
    if k + 2 <= top:
        for j in range(k + 1):
            for i in range(j + 1):
                yield SimplicialIdentity("ss", k, (("s", j), ("s", i)), (("s", i), ("s", j + 1)))
    if k + 1 <= top:
        for j in range(k + 1):
            for i in range(k + 2):
                lhs = (("s", j), ("d", i))
                if i < j:
                    yield SimplicialIdentity("ds", k, lhs, (("d", i), ("s", j - 1)))
                elif i == j or i == j + 1:
                    yield SimplicialIdentity("ds", k, lhs, ())
                else:
                    yield SimplicialIdentity("ds", k, lhs, (("d", i - 1), ("s", j)))


def _target_level(ops: Sequence[Operator], level: int) -> int:
    return level + sum(1 if kind == "s" else -1 for kind, _ in ops)


def _evaluate(obj: SimplicialObject, ops: Sequence[Operator], level: int, values: Any) -> Any:
    for kind, i in ops:
        values = obj.apply(kind, i, level, values)
        level += 1 if kind == "s" else -1
    return values


def find_identity_violation(
    obj: SimplicialObject, top: Optional[int] = None
) -> Optional[IdentityViolation]:
    """The first failing identity instance, or None when all hold"""
    if top is None:
        top = obj.top
    for level in range(top + 1):
        probes = obj.probes(level)
        for identity in iter_identities(level, top):
            lhs = _evaluate(obj, identity.lhs, level, probes)
            rhs = _evaluate(obj, identity.rhs, level, probes)
            position = obj.same(lhs, rhs)
            if position is not None:
                target = _target_level(identity.lhs, level)
                return IdentityViolation(
                    identity,
                    obj.label(level, position),
                    obj.format_value(target, lhs[position]),
                    obj.format_value(target, rhs[position]),
                )
    return None


def count_identities(top: int) -> int:
    return sum(1 for level in range(top + 1) for _ in iter_identities(level, top))


def first_difference(a: Sequence[Any], b: Sequence[Any]) -> Optional[int]:
    for position, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return position
    return None

