"""Truncated simplicial sets, nerves of finite monoids, wedges and normalized chains

Simplices get stable integer ids per degree and every face and degeneracy is an
index array, so all constructions are exact and reproducible.
"""

import logging
from typing import Hashable, List, Optional, Sequence

import numpy as np
import scipy.sparse

from .exceptions import InputError, ResourceLimitError, VerificationFailure
from .homology import ChainComplex
from .identities import IdentityViolation, find_identity_violation
from .monoid import FiniteMonoid
from .sparse import SparseIntMatrix

logger = logging.getLogger(__name__)

DEFAULT_MAX_SIMPLICES = 2_000_000


def _frozen(array) -> np.ndarray:
    array = np.asarray(array, dtype=np.int64)
    array.setflags(write=False)
    return array


class SimplicialSetTrunc:
    """A simplicial set known up to degree n_max

    :param simplices: simplices[n] labels the n-simplices, one hashable label each
    :param faces: faces[n][i] is the index array of d_i from degree n to n-1 (faces[0] is empty)
    :param degeneracies: degeneracies[n][i] is the index array of s_i from degree n to n+1,
        for n < n_max
    :param basepoint: Index of the base vertex, or None for an unpointed set
    :param name: A label for logs and reports
    """

    def __init__(
        self,
        simplices: Sequence[Sequence[Hashable]],
        faces: Sequence[Sequence[np.ndarray]],
        degeneracies: Sequence[Sequence[np.ndarray]],
        basepoint: Optional[int] = 0,
        name: str = "X",
    ):
        self._simplices = tuple(tuple(level) for level in simplices)
        n_max = len(self._simplices) - 1
        if n_max < 0:
            raise InputError("A simplicial set needs degree 0")
        if len(faces) != n_max + 1 or len(degeneracies) != n_max:
            raise InputError("Face and degeneracy tables do not match the truncation degree")
        self._faces = tuple(tuple(_frozen(f) for f in level) for level in faces)
        self._degeneracies = tuple(tuple(_frozen(s) for s in level) for level in degeneracies)
        for n in range(1, n_max + 1):
            if len(self._faces[n]) != n + 1:
                raise InputError(f"Degree {n} needs {n + 1} faces")
        for n in range(n_max):
            if len(self._degeneracies[n]) != n + 1:
                raise InputError(f"Degree {n} needs {n + 1} degeneracies")
        self.basepoint = basepoint
        self.name = name

    @property
    def n_max(self) -> int:
        return len(self._simplices) - 1

    @property
    def top(self) -> int:
        return self.n_max

    def simplices(self, n: int) -> Sequence[Hashable]:
        return self._simplices[n]

    def count(self, n: int) -> int:
        return len(self._simplices[n])

    def counts(self) -> List[int]:
        return [len(level) for level in self._simplices]

    def face(self, n: int, i: int) -> np.ndarray:
        return self._faces[n][i]

    def degeneracy(self, n: int, i: int) -> np.ndarray:
        return self._degeneracies[n][i]

    def index(self, n: int, label: Hashable) -> int:
        try:
            return self._simplices[n].index(label)
        except ValueError:
            raise InputError(f"{label!r} is not a {n}-simplex of {self.name}") from None

    def base_simplex(self, n: int) -> int:
        """The n-fold degeneracy of the base vertex"""
        if self.basepoint is None:
            raise InputError(f"{self.name} has no basepoint")
        b = self.basepoint
        for m in range(n):
            b = int(self._degeneracies[m][0][b])
        return b

    def nondegenerate_mask(self, n: int) -> np.ndarray:
        """True for simplices outside the image of every degeneracy into degree n"""
        mask = np.ones(self.count(n), dtype=bool)
        if n > 0:
            for s in self._degeneracies[n - 1]:
                mask[s] = False
        return mask

    def nondegenerate_indices(self, n: int) -> np.ndarray:
        return np.flatnonzero(self.nondegenerate_mask(n))

    def nondegenerate_counts(self) -> List[int]:
        return [int(self.nondegenerate_mask(n).sum()) for n in range(self.n_max + 1)]

    # Protocol used by `find_identity_violation`
    def probes(self, level: int) -> np.ndarray:
        return np.arange(self.count(level))

    def apply(self, kind: str, i: int, level: int, values: np.ndarray) -> np.ndarray:
        table = self._faces[level][i] if kind == "d" else self._degeneracies[level][i]
        return table[values]

    def same(self, a: np.ndarray, b: np.ndarray) -> Optional[int]:
        bad = np.flatnonzero(a != b)
        return int(bad[0]) if bad.size else None

    def label(self, level: int, position: int) -> Hashable:
        return self._simplices[level][position]

    def format_value(self, level: int, value) -> Hashable:
        return self._simplices[level][int(value)]

    def find_violation(self) -> Optional[IdentityViolation]:
        return find_identity_violation(self)

    def degeneracies_injective(self) -> bool:
        return all(
            len(np.unique(s)) == len(s) for level in self._degeneracies for s in level
        )

    def verify(self) -> "SimplicialSetTrunc":
        """Raise VerificationFailure unless the identities hold and degeneracies are injective"""
        violation = self.find_violation()
        if violation is not None:
            raise VerificationFailure(f"{self.name}: {violation.describe()}")
        if not self.degeneracies_injective():
            raise VerificationFailure(f"{self.name}: a degeneracy map is not injective")
        return self


def point(n_max: int) -> SimplicialSetTrunc:
    """The one point simplicial set"""
    zero = np.zeros(1, dtype=np.int64)
    return SimplicialSetTrunc(
        [("*",)] * (n_max + 1),
        [()] + [(zero,) * (n + 1) for n in range(1, n_max + 1)],
        [(zero,) * (n + 1) for n in range(n_max)],
        name="point",
    )


def discrete(points: int, n_max: int) -> SimplicialSetTrunc:
    """A constant simplicial set on finitely many points"""
    ids = np.arange(points)
    return SimplicialSetTrunc(
        [tuple(range(points))] * (n_max + 1),
        [()] + [(ids,) * (n + 1) for n in range(1, n_max + 1)],
        [(ids,) * (n + 1) for n in range(n_max)],
        name=f"{points} points",
    )


def simplicial_circle(n_max: int) -> SimplicialSetTrunc:
    """The circle as the 1-simplex with its endpoints identified

    An n-simplex other than the base is a monotone surjection [n] -> [1], recorded
    by the first position j (1 <= j <= n) sent to 1; index 0 is the base.
    """
    simplices = [("*",) + tuple(f"c{n}.{j}" for j in range(1, n + 1)) for n in range(n_max + 1)]
    faces: List[Sequence[np.ndarray]] = [()]
    for n in range(1, n_max + 1):
        level = []
        for i in range(n + 1):
            table = np.zeros(n + 1, dtype=np.int64)
            for j in range(1, n + 1):
                moved = j - 1 if i < j else j
                table[j] = moved if 0 < moved < n else 0
            level.append(table)
        faces.append(level)
    degeneracies = []
    for n in range(n_max):
        level = []
        for i in range(n + 1):
            table = np.zeros(n + 1, dtype=np.int64)
            for j in range(1, n + 1):
                table[j] = j + 1 if i < j else j
            level.append(table)
        degeneracies.append(level)
    return SimplicialSetTrunc(simplices, faces, degeneracies, name="circle")


def nerve(
    m: FiniteMonoid, n_max: int, max_simplices: int = DEFAULT_MAX_SIMPLICES
) -> SimplicialSetTrunc:
    """The nerve of a monoid: n-simplices are n-tuples of elements

    d_0 drops the first entry, d_n the last, d_i multiplies entries i and i+1; s_i
    inserts the unit after entry i. Simplex ids are the tuples read as base-|m| numbers.
    """
    size = len(m)
    for n in range(n_max + 1):
        if size**n > max_simplices:
            raise ResourceLimitError(
                f"Nerve of {m.name} has {size ** n} simplices in degree {n}, "
                f"budget is {max_simplices}",
                degree=n,
                counts=[size**d for d in range(n)],
            )

    # degree 0 holds the single empty tuple
    tuples = [np.zeros((1, 0), dtype=np.int64)]
    tuples += [np.indices((size,) * n).reshape(n, -1).T for n in range(1, n_max + 1)]

    def ids(rows: np.ndarray) -> np.ndarray:
        n = rows.shape[1]
        if n == 0:
            return np.zeros(rows.shape[0], dtype=np.int64)
        powers = size ** np.arange(n - 1, -1, -1, dtype=np.int64)
        return rows @ powers

    faces: List[Sequence[np.ndarray]] = [()]
    for n in range(1, n_max + 1):
        t = tuples[n]
        level = [ids(t[:, 1:])]
        for i in range(1, n):
            merged = m.table[t[:, i - 1], t[:, i]]
            level.append(ids(np.column_stack([t[:, : i - 1], merged, t[:, i + 1 :]])))
        level.append(ids(t[:, :-1]))
        faces.append(level)

    degeneracies = []
    for n in range(n_max):
        t = tuples[n]
        unit = np.full((t.shape[0], 1), m.unit_index, dtype=np.int64)
        degeneracies.append([ids(np.hstack([t[:, :i], unit, t[:, i:]])) for i in range(n + 1)])

    names = m.element_names
    simplices = [[tuple(names[e] for e in row) for row in tuples[n]] for n in range(n_max + 1)]
    logger.debug("Nerve of %s up to degree %d", m.name, n_max)
    return SimplicialSetTrunc(simplices, faces, degeneracies, name=f"N{m.name}")


def wedge(xs: Sequence[SimplicialSetTrunc], n_max: Optional[int] = None) -> SimplicialSetTrunc:
    """Disjoint union of pointed simplicial sets with the basepoints identified

    Simplex 0 of every degree is the common base simplex; after it come the other
    simplices of the first summand labelled (1, label), then the second summand, and
    so on. The wedge of no summands is the point.

    :param xs: Pointed simplicial sets with equal truncation degrees
    :param n_max: Truncation degree, required only when xs is empty
    """
    if not xs:
        if n_max is None:
            raise InputError("The empty wedge needs an explicit truncation degree")
        return point(n_max)
    degrees = {x.n_max for x in xs}
    if len(degrees) != 1 or (n_max is not None and degrees != {n_max}):
        raise InputError(f"Wedge summands have mismatched truncation degrees {sorted(degrees)}")
    n_max = degrees.pop()

    # local_to_global[t][n][j]: index in the wedge of simplex j of summand t
    local_to_global = []
    simplices: List[List[Hashable]] = [["*"] for _ in range(n_max + 1)]
    for t, x in enumerate(xs, start=1):
        per_degree = []
        for n in range(n_max + 1):
            base = x.base_simplex(n)
            table = np.zeros(x.count(n), dtype=np.int64)
            for j, label in enumerate(x.simplices(n)):
                if j != base:
                    table[j] = len(simplices[n])
                    simplices[n].append((t, label))
            per_degree.append(table)
        local_to_global.append(per_degree)

    def glue(maps_of, n_from: int, n_to: int, count: int) -> List[np.ndarray]:
        out = []
        for i in range(count):
            table = np.zeros(len(simplices[n_from]), dtype=np.int64)
            for t, x in enumerate(xs):
                local = local_to_global[t]
                table[local[n_from]] = local[n_to][maps_of(x, i)]
            table[0] = 0
            out.append(table)
        return out

    faces: List[Sequence[np.ndarray]] = [()]
    for n in range(1, n_max + 1):
        faces.append(glue(lambda x, i: x.face(n, i), n, n - 1, n + 1))
    degeneracies = [glue(lambda x, i: x.degeneracy(n, i), n, n + 1, n + 1) for n in range(n_max)]
    name = " v ".join(x.name for x in xs)
    return SimplicialSetTrunc(simplices, faces, degeneracies, name=name)


def normalized_chains(x: SimplicialSetTrunc) -> ChainComplex:
    """Free abelian groups on nondegenerate simplices, boundary sum (-1)^i d_i

    Faces landing on degenerate simplices count as zero. Basis elements of degree n
    are the nondegenerate simplices in increasing id order.
    """
    positions = []
    ranks = []
    for n in range(x.n_max + 1):
        mask = x.nondegenerate_mask(n)
        position = np.full(x.count(n), -1, dtype=np.int64)
        position[mask] = np.arange(int(mask.sum()))
        positions.append(position)
        ranks.append(int(mask.sum()))

    boundaries = []
    for n in range(1, x.n_max + 1):
        columns = np.flatnonzero(positions[n] >= 0)
        rows_all, cols_all, data_all = [], [], []
        for i in range(n + 1):
            targets = positions[n - 1][x.face(n, i)[columns]]
            keep = targets >= 0
            rows_all.append(targets[keep])
            cols_all.append(positions[n][columns[keep]])
            data_all.append(np.full(int(keep.sum()), (-1) ** i, dtype=np.int64))
        coo = scipy.sparse.coo_matrix(
            (np.concatenate(data_all), (np.concatenate(rows_all), np.concatenate(cols_all))),
            shape=(ranks[n - 1], ranks[n]),
            dtype=np.int64,
        )
        boundaries.append(SparseIntMatrix.from_coo(coo))
    logger.debug("Normalized chains of %s: ranks %s", x.name, ranks)
    return ChainComplex(ranks, boundaries)
