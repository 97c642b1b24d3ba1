"""Smith normal form of sparse integer matrices

Elimination picks the nonzero entry of smallest magnitude, ties broken by
row-major order, which keeps fill-in low on boundary matrices where almost every
entry is +-1 and makes the result deterministic. All arithmetic is on Python
ints.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from .exceptions import ResourceLimitError
from .sparse import SparseIntMatrix

logger = logging.getLogger(__name__)

MAX_CELLS = 100_000_000

Rows = Dict[int, Dict[int, int]]


@dataclass(frozen=True)
class SmithForm:
    """U * A * V = S with S diagonal, nonnegative and a divisibility chain

    :param shape: Shape of A
    :param invariants: The nonzero diagonal entries d_1 | d_2 | ... of S
    :param u: Unimodular row transform, None when transforms were not requested
    :param v: Unimodular column transform
    :param u_inv: Inverse of u
    :param v_inv: Inverse of v
    """

    shape: Tuple[int, int]
    invariants: Tuple[int, ...]
    u: Optional[SparseIntMatrix] = None
    v: Optional[SparseIntMatrix] = None
    u_inv: Optional[SparseIntMatrix] = None
    v_inv: Optional[SparseIntMatrix] = None

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.invariants if d > 1)

    @property
    def s(self) -> SparseIntMatrix:
        rows, cols = self.shape
        return SparseIntMatrix(rows, cols, {(i, i): d for i, d in enumerate(self.invariants)})


def _add_multiple(dst: Dict[int, int], src: Dict[int, int], q: int) -> None:
    """dst += q * src, dropping zeros"""
    for c, v in src.items():
        value = dst.get(c, 0) + q * v
        if value:
            dst[c] = value
        else:
            dst.pop(c, None)


class _Transforms:
    """U and V with their inverses, kept as dicts of rows

    u[r] is row r of U, u_inv_t[r] is column r of U^-1, v_t[c] is column c of V
    and v_inv[c] is row c of V^-1.
    """

    def __init__(self, rows: int, cols: int):
        self.u: Rows = {i: {i: 1} for i in range(rows)}
        self.u_inv_t: Rows = {i: {i: 1} for i in range(rows)}
        self.v_t: Rows = {j: {j: 1} for j in range(cols)}
        self.v_inv: Rows = {j: {j: 1} for j in range(cols)}

    def row_op(self, target: int, source: int, q: int) -> None:
        # row_target -= q * row_source
        _add_multiple(self.u[target], self.u[source], -q)
        _add_multiple(self.u_inv_t[source], self.u_inv_t[target], q)

    def col_op(self, target: int, source: int, q: int) -> None:
        # col_target -= q * col_source
        _add_multiple(self.v_t[target], self.v_t[source], -q)
        _add_multiple(self.v_inv[source], self.v_inv[target], q)

    def negate_row(self, r: int) -> None:
        self.u[r] = {c: -v for c, v in self.u[r].items()}
        self.u_inv_t[r] = {c: -v for c, v in self.u_inv_t[r].items()}

    def gcd_lcm(self, ri: int, rj: int, ci: int, cj: int, a: int, b: int) -> Tuple[int, int]:
        """Turn diag(a, b) at (ri, ci), (rj, cj) into diag(gcd, lcm)"""
        g, s, t = _xgcd(a, b)
        ag, bg = a // g, b // g

        def combine(table: Rows, i: int, j: int, m: Tuple[int, int, int, int]) -> None:
            # (row_i, row_j) <- (m0 row_i + m1 row_j, m2 row_i + m3 row_j)
            new_i: Dict[int, int] = {}
            _add_multiple(new_i, table[i], m[0])
            _add_multiple(new_i, table[j], m[1])
            new_j: Dict[int, int] = {}
            _add_multiple(new_j, table[i], m[2])
            _add_multiple(new_j, table[j], m[3])
            table[i], table[j] = new_i, new_j

        combine(self.u, ri, rj, (s, t, -bg, ag))
        combine(self.u_inv_t, ri, rj, (ag, bg, -t, s))
        combine(self.v_t, ci, cj, (1, 1, -t * bg, s * ag))
        combine(self.v_inv, ci, cj, (s * ag, t * bg, -1, 1))
        return g, a * bg


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b) >= 0"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class _Eliminator:
    def __init__(self, a: SparseIntMatrix, transforms: Optional[_Transforms]):
        self.rows: Rows = a.row_dicts()
        self.col_index: Dict[int, Set[int]] = {}
        for r, row in self.rows.items():
            for c in row:
                self.col_index.setdefault(c, set()).add(r)
        self.active: List[int] = sorted(self.rows)
        self.transforms = transforms
        self.pivots: List[Tuple[int, int, int]] = []

    def row_op(self, target: int, source: int, q: int) -> None:
        dst = self.rows[target]
        for c, v in self.rows[source].items():
            value = dst.get(c, 0) - q * v
            if value:
                if c not in dst:
                    self.col_index.setdefault(c, set()).add(target)
                dst[c] = value
            elif c in dst:
                del dst[c]
                self.col_index[c].discard(target)
        if self.transforms is not None:
            self.transforms.row_op(target, source, q)

    def col_op(self, target: int, source: int, q: int) -> None:
        for r in list(self.col_index.get(source, ())):
            row = self.rows[r]
            value = row.get(target, 0) - q * row[source]
            if value:
                if target not in row:
                    self.col_index.setdefault(target, set()).add(r)
                row[target] = value
            elif target in row:
                del row[target]
                self.col_index[target].discard(r)
        if self.transforms is not None:
            self.transforms.col_op(target, source, q)

    def find_pivot(self) -> Optional[Tuple[int, int]]:
        best = None
        best_key = None
        alive = []
        for position, r in enumerate(self.active):
            row = self.rows.get(r)
            if not row:
                continue
            alive.append(r)
            c = min(row, key=lambda col: (abs(row[col]), col))
            key = (abs(row[c]), r, c)
            if best_key is None or key < best_key:
                best_key, best = key, (r, c)
            if best_key[0] == 1:
                # nothing beats a unit, and earlier rows win ties
                alive.extend(self.active[position + 1 :])
                break
        self.active = alive
        return best

    def reduce(self, p_r: int, p_c: int) -> Tuple[int, int]:
        """Clear the pivot's row and column, moving to smaller remainders as needed"""
        while True:
            pv = self.rows[p_r][p_c]
            smaller = None
            for r in sorted(self.col_index[p_c] - {p_r}):
                self.row_op(r, p_r, self.rows[r][p_c] // pv)
                rem = self.rows[r].get(p_c, 0)
                if rem and (smaller is None or abs(rem) < smaller[0]):
                    smaller = (abs(rem), r, p_c)
            if smaller is not None:
                p_r, p_c = smaller[1], smaller[2]
                continue

            row = self.rows[p_r]
            divisible = all(v % pv == 0 for v in row.values())
            if divisible and self.transforms is None:
                return p_r, p_c
            for c in sorted(set(row) - {p_c}):
                self.col_op(c, p_c, row[c] // pv)
                rem = row.get(c, 0)
                if rem and (smaller is None or abs(rem) < smaller[0]):
                    smaller = (abs(rem), p_r, c)
            if smaller is None:
                return p_r, p_c
            p_r, p_c = smaller[1], smaller[2]

    def run(self) -> None:
        while True:
            pivot = self.find_pivot()
            if pivot is None:
                return
            p_r, p_c = self.reduce(*pivot)
            row = self.rows.pop(p_r)
            for c in row:
                self.col_index[c].discard(p_r)
            self.col_index.pop(p_c, None)
            self.pivots.append((p_r, p_c, row[p_c]))
            if len(self.pivots) % 1000 == 0:
                logger.debug(
                    "%d pivots eliminated, %d rows left", len(self.pivots), len(self.rows)
                )


def smith_normal_form(a: SparseIntMatrix, *, transforms: bool = True) -> SmithForm:
    """Smith normal form of a, with the unimodular transforms when requested

    :param a: The matrix
    :param transforms: Whether to compute U, V and their inverses. Skipping them is
        much cheaper and still gives the invariant factors.
    """
    rows, cols = a.shape
    if rows * cols > MAX_CELLS:
        raise ResourceLimitError(
            f"Matrix of shape {rows}x{cols} exceeds the elimination budget", counts=(rows, cols)
        )
    tracked = _Transforms(rows, cols) if transforms else None
    eliminator = _Eliminator(a, tracked)
    eliminator.run()

    pivots = eliminator.pivots
    diagonal = []
    for p_r, _, value in pivots:
        if value < 0 and tracked is not None:
            tracked.negate_row(p_r)
        diagonal.append(abs(value))

    for i in range(len(diagonal)):
        for j in range(i + 1, len(diagonal)):
            if diagonal[j] % diagonal[i] == 0:
                continue
            if tracked is None:
                g = math.gcd(diagonal[i], diagonal[j])
                diagonal[i], diagonal[j] = g, diagonal[i] * diagonal[j] // g
            else:
                diagonal[i], diagonal[j] = tracked.gcd_lcm(
                    pivots[i][0],
                    pivots[j][0],
                    pivots[i][1],
                    pivots[j][1],
                    diagonal[i],
                    diagonal[j],
                )

    logger.debug("SNF of %dx%d: rank %d", rows, cols, len(diagonal))
    if tracked is None:
        return SmithForm((rows, cols), tuple(diagonal))

    pivot_rows = [p[0] for p in pivots]
    pivot_cols = [p[1] for p in pivots]
    taken_rows, taken_cols = set(pivot_rows), set(pivot_cols)
    row_order = pivot_rows + [r for r in range(rows) if r not in taken_rows]
    col_order = pivot_cols + [c for c in range(cols) if c not in taken_cols]

    u = {(k, c): v for k, r in enumerate(row_order) for c, v in tracked.u[r].items()}
    u_inv = {(i, k): v for k, r in enumerate(row_order) for i, v in tracked.u_inv_t[r].items()}
    v = {(i, k): x for k, c in enumerate(col_order) for i, x in tracked.v_t[c].items()}
    v_inv = {(k, j): x for k, c in enumerate(col_order) for j, x in tracked.v_inv[c].items()}
    return SmithForm(
        (rows, cols),
        tuple(diagonal),
        SparseIntMatrix(rows, rows, u),
        SparseIntMatrix(cols, cols, v),
        SparseIntMatrix(rows, rows, u_inv),
        SparseIntMatrix(cols, cols, v_inv),
    )


def invariant_factors(a: SparseIntMatrix) -> Tuple[int, ...]:
    return smith_normal_form(a, transforms=False).invariants


def rank(a: SparseIntMatrix) -> int:
    return len(invariant_factors(a))
