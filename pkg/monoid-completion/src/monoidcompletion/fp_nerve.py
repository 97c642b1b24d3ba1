"""Nerves of free products of P, truncated by total word length

Exploratory: the homology of these finite pieces is reported, never asserted.
"""

import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .exceptions import InputError, ResourceLimitError
from .free_product import UNIT_WORD, FreeProductElement, FreeProductMonoid
from .monoid import FiniteMonoid, make_paper_monoid_P
from .simplicial import DEFAULT_MAX_SIMPLICES, SimplicialSetTrunc

logger = logging.getLogger(__name__)

Simplex = Tuple[FreeProductElement, ...]


def _tuples_by_degree(
    words: Sequence[FreeProductElement], length: int, n_max: int, max_simplices: int
) -> List[List[Simplex]]:
    by_length: Dict[int, List[FreeProductElement]] = {}
    for w in words:
        by_length.setdefault(len(w), []).append(w)

    # frontier[budget]: n-tuples using exactly `budget` letters
    levels: List[List[Simplex]] = [[()]]
    frontier: Dict[int, List[Simplex]] = {0: [()]}
    for n in range(1, n_max + 1):
        grown: Dict[int, List[Simplex]] = {}
        for used, simplices in sorted(frontier.items()):
            for extra in range(length - used + 1):
                for w in by_length.get(extra, ()):
                    grown.setdefault(used + extra, []).extend(s + (w,) for s in simplices)
        level = [s for used in sorted(grown) for s in grown[used]]
        if len(level) > max_simplices:
            raise ResourceLimitError(
                f"Truncated nerve has {len(level)} simplices in degree {n}, "
                f"budget is {max_simplices}",
                degree=n,
                counts=[len(previous) for previous in levels] + [len(level)],
            )
        levels.append(sorted(level))
        frontier = grown
    return levels


def truncated_fp_nerve(
    k: int,
    length: int,
    n_max: int,
    factor: FiniteMonoid = None,
    max_simplices: int = DEFAULT_MAX_SIMPLICES,
) -> SimplicialSetTrunc:
    """The subcomplex of the nerve of the k-fold free product on tuples of total length <= L

    Multiplying two normal forms never lengthens them, so faces stay inside; inserting
    the unit adds no letters, so degeneracies do too.

    :param k: Number of free summands, at least 1
    :param length: Maximum total word length L, at least 1
    :param n_max: Truncation degree
    :param factor: The free factor, P by default
    """
    if k < 1 or length < 1:
        raise InputError("The truncated nerve needs k >= 1 and L >= 1")
    m = FreeProductMonoid.power(factor or make_paper_monoid_P(), k)
    words = list(m.elements(length))
    levels = _tuples_by_degree(words, length, n_max, max_simplices)
    ids = [{s: index for index, s in enumerate(level)} for level in levels]

    faces = [()]
    for n in range(1, n_max + 1):
        level = levels[n]
        tables = [np.empty(len(level), dtype=np.int64) for _ in range(n + 1)]
        for index, s in enumerate(level):
            tables[0][index] = ids[n - 1][s[1:]]
            for i in range(1, n):
                merged = s[: i - 1] + (m.multiply(s[i - 1], s[i]),) + s[i + 1 :]
                tables[i][index] = ids[n - 1][merged]
            tables[n][index] = ids[n - 1][s[:-1]]
        faces.append(tables)

    degeneracies = []
    for n in range(n_max):
        level = levels[n]
        tables = [np.empty(len(level), dtype=np.int64) for _ in range(n + 1)]
        for index, s in enumerate(level):
            for i in range(n + 1):
                tables[i][index] = ids[n + 1][s[:i] + (UNIT_WORD,) + s[i:]]
        degeneracies.append(tables)

    simplices = [
        [tuple(m.format(w) for w in s) for s in level] for level in levels
    ]
    logger.info("Truncated nerve k=%d L=%d: counts %s", k, length, [len(x) for x in levels])
    return SimplicialSetTrunc(simplices, faces, degeneracies, name=f"N(M_{k})<={length}")
