"""Bisimplicial sets built from wedges, and their diagonals

Level k of `wedge_levels(x, k_max)` is the k-fold wedge of a pointed simplicial
set x. Horizontal faces and degeneracies act on whole wedge summands through
the summand maps of `simplicial_monoid`, so the realization is the suspension
of x.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import InputError, VerificationFailure
from .identities import IdentityViolation, find_identity_violation
from .monoid import make_paper_monoid_P
from .simplicial import DEFAULT_MAX_SIMPLICES, SimplicialSetTrunc, nerve, wedge
from .simplicial_monoid import (
    FaceRule,
    SummandMap,
    degeneracy_summand_map,
    face_summand_map,
)

logger = logging.getLogger(__name__)

# HorizontalMap[n] is the index array of the map on vertical degree n
HorizontalMap = Tuple[np.ndarray, ...]


@dataclass(frozen=True)
class SimplicialityDefect:
    """A horizontal map that does not commute with a vertical operator"""

    horizontal: str
    vertical: str
    degree: int
    simplex: object

    def describe(self) -> str:
        return (
            f"horizontal {self.horizontal} does not commute with vertical {self.vertical} "
            f"on the {self.degree}-simplex {self.simplex!r}"
        )


class _HorizontalSlice:
    """The horizontal simplicial set at a fixed vertical degree"""

    def __init__(self, b: "BisimplicialTrunc", n: int):
        self._b = b
        self._n = n

    @property
    def top(self) -> int:
        return self._b.k_max

    def probes(self, level: int) -> np.ndarray:
        return np.arange(self._b.levels[level].count(self._n))

    def apply(self, kind: str, i: int, level: int, values: np.ndarray) -> np.ndarray:
        maps = self._b.h_faces if kind == "d" else self._b.h_degeneracies
        return maps[level][i][self._n][values]

    def same(self, a: np.ndarray, b: np.ndarray) -> Optional[int]:
        bad = np.flatnonzero(a != b)
        return int(bad[0]) if bad.size else None

    def label(self, level: int, position: int):
        return (self._n, self._b.levels[level].label(self._n, position))

    def format_value(self, level: int, value):
        return self._b.levels[level].label(self._n, int(value))


class BisimplicialTrunc:
    """Levels 0..k_max of simplicial sets with horizontal maps between them

    :param levels: levels[k] is a truncated simplicial set
    :param h_faces: h_faces[k][i] is horizontal d_i from level k to k-1 (h_faces[0] empty)
    :param h_degeneracies: h_degeneracies[k][i] is horizontal s_i from level k to k+1
    """

    def __init__(
        self,
        levels: Sequence[SimplicialSetTrunc],
        h_faces: Sequence[Sequence[HorizontalMap]],
        h_degeneracies: Sequence[Sequence[HorizontalMap]],
    ):
        self.levels = tuple(levels)
        if not self.levels:
            raise InputError("A bisimplicial set needs level 0")
        self.h_faces = tuple(tuple(level) for level in h_faces)
        self.h_degeneracies = tuple(tuple(level) for level in h_degeneracies)

    @property
    def k_max(self) -> int:
        return len(self.levels) - 1

    def _horizontal_maps(self):
        for k in range(1, self.k_max + 1):
            for i, h in enumerate(self.h_faces[k]):
                yield f"d{i} on level {k}", self.levels[k], self.levels[k - 1], h
        for k in range(self.k_max):
            for i, h in enumerate(self.h_degeneracies[k]):
                yield f"s{i} on level {k}", self.levels[k], self.levels[k + 1], h

    def find_simpliciality_defect(self) -> Optional[SimplicialityDefect]:
        """The first horizontal map failing to commute with a vertical face or degeneracy"""
        for name, source, target, h in self._horizontal_maps():
            n_max = min(source.n_max, target.n_max)
            for n in range(1, n_max + 1):
                for i in range(n + 1):
                    lhs = h[n - 1][source.face(n, i)]
                    rhs = target.face(n, i)[h[n]]
                    bad = np.flatnonzero(lhs != rhs)
                    if bad.size:
                        return SimplicialityDefect(name, f"d{i}", n, source.label(n, int(bad[0])))
            for n in range(n_max):
                for i in range(n + 1):
                    lhs = h[n + 1][source.degeneracy(n, i)]
                    rhs = target.degeneracy(n, i)[h[n]]
                    bad = np.flatnonzero(lhs != rhs)
                    if bad.size:
                        return SimplicialityDefect(name, f"s{i}", n, source.label(n, int(bad[0])))
        return None

    def find_horizontal_violation(self) -> Optional[IdentityViolation]:
        """The first horizontal simplicial identity failing at some vertical degree"""
        n_max = min(level.n_max for level in self.levels)
        for n in range(n_max + 1):
            violation = find_identity_violation(_HorizontalSlice(self, n))
            if violation is not None:
                return violation
        return None

    def verify(self) -> "BisimplicialTrunc":
        defect = self.find_simpliciality_defect()
        if defect is not None:
            raise VerificationFailure(defect.describe())
        violation = self.find_horizontal_violation()
        if violation is not None:
            raise VerificationFailure(f"horizontal {violation.describe()}")
        return self


def _relabel(sigma: SummandMap, block: int, count: int, target_count: int) -> np.ndarray:
    """Move simplex indices of a wedge between summands according to sigma

    Index 0 is the base and summand t occupies 1 + (t-1)*block .. t*block.
    """
    g = np.arange(count)
    out = np.zeros(count, dtype=np.int64)
    if block == 0:
        return out
    rest = g[1:] - 1
    t = rest // block
    q = rest % block
    lookup = np.asarray((0,) + tuple(sigma), dtype=np.int64)
    image = lookup[t + 1]
    out[1:] = np.where(image == 0, 0, 1 + (image - 1) * block + q)
    if out.max(initial=0) >= max(target_count, 1):
        raise InputError(f"Summand map {sigma} leaves the target wedge")
    return out


def wedge_levels(
    x: SimplicialSetTrunc, k_max: int, face_rule: FaceRule = face_summand_map
) -> BisimplicialTrunc:
    """Level k is the k-fold wedge of x; faces and degeneracies move wedge summands

    Horizontal d_0 sends summand 1 to the base, d_k sends summand k to the base and
    0 < i < k folds summands i and i+1. Horizontal s_i includes the wedge missing
    summand i+1.
    """
    if k_max < 1:
        raise InputError("A wedge bisimplicial set needs k_max >= 1")
    levels = [wedge([x] * k, n_max=x.n_max) for k in range(k_max + 1)]
    blocks = [x.count(n) - 1 for n in range(x.n_max + 1)]

    def horizontal(sigma: SummandMap, source: int, target: int) -> HorizontalMap:
        return tuple(
            _relabel(sigma, blocks[n], levels[source].count(n), levels[target].count(n))
            for n in range(x.n_max + 1)
        )

    h_faces: List[Sequence[HorizontalMap]] = [()]
    for k in range(1, k_max + 1):
        h_faces.append([horizontal(face_rule(k, i), k, k - 1) for i in range(k + 1)])
    h_degeneracies = [
        [horizontal(degeneracy_summand_map(k, i), k, k + 1) for i in range(k + 1)]
        for k in range(k_max)
    ]
    logger.debug("Wedge levels of %s up to level %d", x.name, k_max)
    return BisimplicialTrunc(levels, h_faces, h_degeneracies)


def build_S(
    k_max: int, n_max: int, max_simplices: int = DEFAULT_MAX_SIMPLICES
) -> BisimplicialTrunc:
    """Level k is the k-fold wedge of the nerve of P, with all structure verified"""
    bp = nerve(make_paper_monoid_P(), n_max, max_simplices)
    return wedge_levels(bp, k_max).verify()


def diagonal(b: BisimplicialTrunc, n_max: Optional[int] = None) -> SimplicialSetTrunc:
    """The diagonal simplicial set: degree n is level n at vertical degree n

    Face i is horizontal d_i followed by vertical d_i; degeneracy i is horizontal s_i
    followed by vertical s_i.

    :param b: The bisimplicial set
    :param n_max: Truncation degree, by default as far as b allows
    """
    available = min(b.k_max, min(level.n_max for level in b.levels))
    if n_max is None:
        n_max = available
    for n in range(n_max + 1):
        if n > b.k_max:
            raise InputError(f"The diagonal needs level {n} at vertical degree {n} (k={n}, n={n})")
        if b.levels[n].n_max < n:
            raise InputError(f"Level {n} stops below vertical degree {n} (k={n}, n={n})")

    simplices = [b.levels[n].simplices(n) for n in range(n_max + 1)]
    faces: List[Sequence[np.ndarray]] = [()]
    for n in range(1, n_max + 1):
        below = b.levels[n - 1]
        faces.append(
            [below.face(n, i)[b.h_faces[n][i][n]] for i in range(n + 1)]
        )
    degeneracies = []
    for n in range(n_max):
        above = b.levels[n + 1]
        degeneracies.append(
            [above.degeneracy(n, i)[b.h_degeneracies[n][i][n]] for i in range(n + 1)]
        )
    return SimplicialSetTrunc(simplices, faces, degeneracies, name="diagonal")
