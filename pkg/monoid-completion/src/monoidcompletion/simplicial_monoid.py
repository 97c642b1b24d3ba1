"""The simplicial monoid M_* whose k-th level is the k-fold free product of P

Faces and degeneracies only move whole free summands around, so each is given
by a summand map sigma: summand t goes to summand sigma[t - 1], or is killed
when sigma[t - 1] == 0. The same summand maps drive the wedge construction in
`bisimplicial`.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import InputError
from .free_product import FreeProductElement, FreeProductHom, FreeProductMonoid
from .identities import IdentityViolation, find_identity_violation, first_difference
from .monoid import FiniteMonoid, inverse_of, make_paper_monoid_P

logger = logging.getLogger(__name__)

SummandMap = Tuple[int, ...]
FaceRule = Callable[[int, int], SummandMap]


def face_summand_map(k: int, i: int) -> SummandMap:
    """d_i on k summands: d_0 kills the first, d_k the last, d_i folds summands i, i+1"""
    if not 0 <= i <= k or k < 1:
        raise InputError(f"No face d{i} on level {k}")
    if i == 0:
        return tuple(0 if t == 1 else t - 1 for t in range(1, k + 1))
    if i == k:
        return tuple(0 if t == k else t for t in range(1, k + 1))
    return tuple(t if t <= i else t - 1 for t in range(1, k + 1))


def misnumbered_face_map(k: int, i: int) -> SummandMap:
    """A wrong codiagonal that folds summands i-1, i; kept as a negative control"""
    if 2 <= i < k:
        return tuple(t if t < i else t - 1 for t in range(1, k + 1))
    return face_summand_map(k, i)


def degeneracy_summand_map(k: int, i: int) -> SummandMap:
    """s_i from k to k+1 summands, the inclusion missing summand i+1"""
    if not 0 <= i <= k:
        raise InputError(f"No degeneracy s{i} on level {k}")
    return tuple(t if t <= i else t + 1 for t in range(1, k + 1))


FACE_RULES: Dict[str, FaceRule] = {
    "standard": face_summand_map,
    "misnumbered": misnumbered_face_map,
}


@dataclass(frozen=True)
class SimplicialMonoid:
    """A simplicial monoid truncated at level k_max

    faces[k][i] is d_i: M_k -> M_(k-1) (faces[0] is empty) and degeneracies[k][i]
    is s_i: M_k -> M_(k+1) for k < k_max. Maps are stored on generators.
    """

    levels: Tuple[FreeProductMonoid, ...]
    faces: Tuple[Tuple[FreeProductHom, ...], ...]
    degeneracies: Tuple[Tuple[FreeProductHom, ...], ...]

    @property
    def k_max(self) -> int:
        return len(self.levels) - 1

    @property
    def top(self) -> int:
        return self.k_max

    def probes(self, level: int) -> List[FreeProductElement]:
        return self.levels[level].generators()

    def apply(self, kind: str, i: int, level: int, values):
        hom = self.faces[level][i] if kind == "d" else self.degeneracies[level][i]
        return [hom(w) for w in values]

    def same(self, a, b) -> Optional[int]:
        return first_difference(a, b)

    def label(self, level: int, position: int) -> str:
        return self.levels[level].format(self.probes(level)[position])

    def format_value(self, level: int, value: FreeProductElement) -> str:
        return self.levels[level].format(value)

    def find_violation(self) -> Optional[IdentityViolation]:
        return find_identity_violation(self)

    def check_identities(self) -> bool:
        """All simplicial identities, verified on every generator of every level"""
        return self.find_violation() is None


def build_M(k_max: int, face_rule: FaceRule = face_summand_map) -> SimplicialMonoid:
    """Levels M_0..M_k_max with M_k the k-fold free product of P

    :param k_max: Highest level, at least 1
    :param face_rule: Summand map of each face, replaceable for negative controls
    """
    if k_max < 1:
        raise InputError("build_M needs k_max >= 1")
    p = make_paper_monoid_P()
    levels = tuple(FreeProductMonoid.power(p, k) for k in range(k_max + 1))

    faces: List[Tuple[FreeProductHom, ...]] = [()]
    for k in range(1, k_max + 1):
        faces.append(
            tuple(
                FreeProductHom.from_summand_map(levels[k], levels[k - 1], face_rule(k, i), f"d{i}")
                for i in range(k + 1)
            )
        )
    degeneracies = tuple(
        tuple(
            FreeProductHom.from_summand_map(
                levels[k], levels[k + 1], degeneracy_summand_map(k, i), f"s{i}"
            )
            for i in range(k + 1)
        )
        for k in range(k_max)
    )
    logger.debug("Built M_* up to level %d", k_max)
    return SimplicialMonoid(levels, tuple(faces), degeneracies)


def constant_simplicial_monoid(factor: FiniteMonoid, k_max: int) -> SimplicialMonoid:
    """Every level is `factor`, every face and degeneracy the identity"""
    level = FreeProductMonoid.power(factor, 1)
    identity = FreeProductHom.identity(level)
    return SimplicialMonoid(
        tuple(level for _ in range(k_max + 1)),
        ((),) + tuple((identity,) * (k + 1) for k in range(1, k_max + 1)),
        tuple((identity,) * (k + 1) for k in range(k_max)),
    )


@dataclass(frozen=True)
class Pi0Result:
    """The component monoid, the coequalizer of d_0, d_1: M_1 -> M_0

    :param is_group: Whether every element of the quotient has a two-sided inverse
    :param quotient: The quotient of M_0 as a table monoid
    :param witness: An element without inverse when is_group is False
    """

    is_group: bool
    quotient: FiniteMonoid
    witness: Optional[str] = None


class _UnionFind:
    def __init__(self, n: int):
        self._parent = list(range(n))

    def find(self, a: int) -> int:
        while self._parent[a] != a:
            self._parent[a] = self._parent[self._parent[a]]
            a = self._parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        # Smaller index is the representative, so classes are deterministic.
        if b < a:
            a, b = b, a
        self._parent[b] = a
        return True


def _as_table(m: FreeProductMonoid) -> Tuple[FiniteMonoid, Dict[FreeProductElement, int]]:
    if not m.is_finite():
        raise InputError("The component monoid can only be computed for a finite M_0")
    elements = list(m.elements(1))
    index = {w: a for a, w in enumerate(elements)}
    table = np.array(
        [[index[m.multiply(a, b)] for b in elements] for a in elements], dtype=np.int64
    )
    names = tuple(m.format(w) for w in elements)
    return FiniteMonoid(names, 0, table, name="M_0"), index


def coequalizer(m0: FiniteMonoid, pairs: Sequence[Tuple[int, int]]) -> FiniteMonoid:
    """Quotient of a finite monoid by the congruence generated by the pairs"""
    n = len(m0)
    classes = _UnionFind(n)
    for a, b in pairs:
        classes.union(a, b)
    changed = True
    while changed:
        changed = False
        for a in range(n):
            for b in range(n):
                if a != b and classes.find(a) == classes.find(b):
                    for c in range(n):
                        changed |= classes.union(m0.multiply(a, c), m0.multiply(b, c))
                        changed |= classes.union(m0.multiply(c, a), m0.multiply(c, b))

    representatives = sorted({classes.find(a) for a in range(n)})
    position = {r: q for q, r in enumerate(representatives)}
    table = np.array(
        [
            [position[classes.find(m0.multiply(a, b))] for b in representatives]
            for a in representatives
        ],
        dtype=np.int64,
    )
    names = tuple(m0.element_names[r] for r in representatives)
    unit = position[classes.find(m0.unit_index)]
    return FiniteMonoid(names, unit, table, name=f"{m0.name}/~")


def pi0_is_group(sm: SimplicialMonoid) -> Pi0Result:
    """Whether the monoid of path components is a group"""
    if sm.k_max < 1:
        raise InputError("pi0 needs levels 0 and 1")
    m0, index = _as_table(sm.levels[0])
    d0, d1 = sm.faces[1]
    pairs = [(index[d0(g)], index[d1(g)]) for g in sm.levels[1].generators()]
    quotient = coequalizer(m0, pairs)
    for a in range(len(quotient)):
        if inverse_of(quotient, a) is None:
            return Pi0Result(False, quotient, quotient.element_names[a])
    return Pi0Result(True, quotient)
