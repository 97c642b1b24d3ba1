"""Sparse integer matrices with arbitrary precision entries"""

from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

import scipy.sparse

from .exceptions import InputError

Entry = Tuple[int, int]


class SparseIntMatrix:
    """An immutable rows x cols integer matrix holding only its nonzero entries

    Entries are Python ints, so nothing overflows.

    :param rows: Number of rows
    :param cols: Number of columns
    :param entries: Mapping (row, col) -> value; zeros are dropped
    """

    __slots__ = ("_shape", "_rows")

    def __init__(self, rows: int, cols: int, entries: Mapping[Entry, int] = None):
        if rows < 0 or cols < 0:
            raise InputError(f"Invalid matrix shape {rows}x{cols}")
        self._shape = (rows, cols)
        self._rows: Dict[int, Dict[int, int]] = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise InputError(f"Entry ({r}, {c}) outside a {rows}x{cols} matrix")
            value = int(value)
            if value:
                self._rows.setdefault(r, {})[c] = value

    @classmethod
    def _from_rows(cls, rows: int, cols: int, row_dicts: Dict[int, Dict[int, int]]):
        matrix = cls(rows, cols)
        matrix._rows = {r: dict(row) for r, row in row_dicts.items() if row}
        return matrix

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: int = None) -> "SparseIntMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        entries = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise InputError("Ragged dense matrix")
            for c, value in enumerate(row):
                if value:
                    entries[(r, c)] = int(value)
        return cls(rows, cols, entries)

    @classmethod
    def from_coo(cls, matrix: scipy.sparse.spmatrix) -> "SparseIntMatrix":
        """Convert a scipy sparse integer matrix, summing duplicate entries"""
        csr = scipy.sparse.csr_matrix(matrix)
        csr.sum_duplicates()
        csr.eliminate_zeros()
        coo = csr.tocoo()
        entries = {
            (int(r), int(c)): int(v) for r, c, v in zip(coo.row, coo.col, coo.data)
        }
        return cls(csr.shape[0], csr.shape[1], entries)

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self) -> Tuple[int, int]:
        return self._shape

    @property
    def rows(self) -> int:
        return self._shape[0]

    @property
    def cols(self) -> int:
        return self._shape[1]

    @property
    def entries(self) -> Dict[Entry, int]:
        return {(r, c): v for r, row in self._rows.items() for c, v in row.items()}

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def __getitem__(self, key: Entry) -> int:
        r, c = key
        return self._rows.get(r, {}).get(c, 0)

    def row(self, r: int) -> Dict[int, int]:
        return dict(self._rows.get(r, {}))

    def row_dicts(self) -> Dict[int, Dict[int, int]]:
        """A fresh copy of the nonzero rows, for elimination"""
        return {r: dict(row) for r, row in self._rows.items()}

    def items(self) -> Iterator[Tuple[int, int, int]]:
        """(row, col, value) in row-major order"""
        for r in sorted(self._rows):
            row = self._rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    def is_zero(self) -> bool:
        return not self._rows

    def transpose(self) -> "SparseIntMatrix":
        out: Dict[int, Dict[int, int]] = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                out.setdefault(c, {})[r] = v
        return SparseIntMatrix._from_rows(self.cols, self.rows, out)

    @property
    def T(self) -> "SparseIntMatrix":
        return self.transpose()

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise InputError(f"Cannot multiply {self.shape} by {other.shape}")
        out: Dict[int, Dict[int, int]] = {}
        for r, row in self._rows.items():
            acc: Dict[int, int] = {}
            for k, a in row.items():
                for c, b in other._rows.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return SparseIntMatrix._from_rows(self.rows, other.cols, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self._shape == other._shape and self._rows == other._rows

    def __hash__(self):
        return hash((self._shape, tuple(self.items())))

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def to_dense(self) -> List[List[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.items():
            dense[r][c] = v
        return dense

    def select(self, rows: Sequence[int] = None, cols: Sequence[int] = None) -> "SparseIntMatrix":
        """The submatrix on the given rows and columns, in the given order"""
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        col_position = {c: j for j, c in enumerate(cols)}
        out: Dict[int, Dict[int, int]] = {}
        for i, r in enumerate(rows):
            source = self._rows.get(r, {})
            row = {col_position[c]: v for c, v in source.items() if c in col_position}
            if row:
                out[i] = row
        return SparseIntMatrix._from_rows(len(rows), len(cols), out)

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "SparseIntMatrix":
        """Entry (r, c) moves to (row_perm[r], col_perm[c])"""
        out: Dict[int, Dict[int, int]] = {}
        for r, row in self._rows.items():
            out[row_perm[r]] = {col_perm[c]: v for c, v in row.items()}
        return SparseIntMatrix._from_rows(self.rows, self.cols, out)

    @staticmethod
    def hstack(blocks: Iterable["SparseIntMatrix"], rows: int) -> "SparseIntMatrix":
        out: Dict[int, Dict[int, int]] = {}
        offset = 0
        for block in blocks:
            if block.rows != rows:
                raise InputError("hstack blocks need equal row counts")
            for r, row in block._rows.items():
                out.setdefault(r, {}).update({c + offset: v for c, v in row.items()})
            offset += block.cols
        return SparseIntMatrix._from_rows(rows, offset, out)
