"""Finite monoids given by multiplication tables"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from .exceptions import AssociativityError, InputError, ParseError

logger = logging.getLogger(__name__)

TableLike = Union[np.ndarray, Sequence[Sequence[int]]]


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    """A finite monoid as a multiplication table

    table[a][b] is the index of the product a*b. The table is stored as a read-only
    numpy array; nothing is validated here beyond its shape, use `check_associativity`
    or `validate` for the monoid laws.

    :param element_names: Distinct symbols naming the elements
    :param unit_index: Index of the unit in element_names
    :param table: Square table of element indices
    :param name: A label used in reports
    """

    element_names: Tuple[str, ...]
    unit_index: int
    table: np.ndarray
    name: str = "M"
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.element_names)
        if len(set(names)) != len(names):
            raise InputError(f"Element names of {self.name} are not distinct")
        try:
            table = np.array(self.table, dtype=np.int64)
        except (TypeError, ValueError) as exc:
            raise InputError(f"Table of {self.name} is not a square integer array") from exc
        table.setflags(write=False)
        object.__setattr__(self, "element_names", names)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self):
        return len(self.element_names)

    def __eq__(self, other):
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return (
            self.element_names == other.element_names
            and self.unit_index == other.unit_index
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.element_names, self.unit_index, self.table.tobytes()))

    @property
    def unit(self) -> str:
        return self.element_names[self.unit_index]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"{name!r} is not an element of {self.name}") from None

    def multiply(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def product(self, a: str, b: str) -> str:
        """Multiply two elements given by name"""
        return self.element_names[self.multiply(self.index(a), self.index(b))]

    def non_units(self) -> List[int]:
        return [i for i in range(len(self)) if i != self.unit_index]

    def validate(self) -> "FiniteMonoid":
        """Raise AssociativityError with a witness unless the table is a monoid"""
        witness = find_associativity_witness(self)
        if witness is not None:
            kind, names = witness
            raise AssociativityError(f"{self.name} violates the {kind}", names)
        return self


@dataclass(frozen=True, eq=False)
class MonoidHom:
    """A homomorphism between finite monoids, stored as the image of every element"""

    source: FiniteMonoid
    target: FiniteMonoid
    image: Tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.image[a]

    def is_homomorphism(self) -> bool:
        """Exhaustive check of the unit and product laws"""
        if len(self.image) != len(self.source):
            return False
        if self.image[self.source.unit_index] != self.target.unit_index:
            return False
        image = np.asarray(self.image)
        lhs = image[self.source.table]
        rhs = self.target.table[image[:, None], image[None, :]]
        return bool(np.array_equal(lhs, rhs))


def _check_shape(table: np.ndarray, unit_index: int) -> None:
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise InputError(f"Multiplication table must be square, got shape {table.shape}")
    n = table.shape[0]
    if n == 0:
        raise InputError("A monoid has at least one element")
    if not 0 <= unit_index < n:
        raise InputError(f"Unit index {unit_index} out of range for {n} elements")
    if table.size and (table.min() < 0 or table.max() >= n):
        raise InputError("Multiplication table entry out of range")


def find_associativity_witness(
    m: FiniteMonoid,
) -> Optional[Tuple[str, Tuple[str, ...]]]:
    """Find the first failing monoid law

    Returns None for a valid monoid, else (law, element names) where law is
    "left unit law", "right unit law" or "associative law".
    """
    table = m.table
    _check_shape(table, m.unit_index)
    n = len(m)
    names = m.element_names
    u = m.unit_index
    everything = np.arange(n)

    bad = np.flatnonzero(table[u, :] != everything)
    if bad.size:
        return "left unit law", (names[u], names[bad[0]])
    bad = np.flatnonzero(table[:, u] != everything)
    if bad.size:
        return "right unit law", (names[bad[0]], names[u])

    # (ab)c against a(bc), indexed [a, b, c]
    lhs = table[table[:, :, None], everything[None, None, :]]
    rhs = table[everything[:, None, None], table[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b, c = bad[0]
        return "associative law", (names[a], names[b], names[c])
    return None


def check_associativity(m: FiniteMonoid) -> bool:
    """True iff the table associates and the unit laws hold

    Raises InputError for a malformed table (not square, entries out of range).
    """
    return find_associativity_witness(m) is None


def idempotents(m: FiniteMonoid) -> Set[str]:
    diagonal = m.table[np.arange(len(m)), np.arange(len(m))]
    return {m.element_names[e] for e in np.flatnonzero(diagonal == np.arange(len(m)))}


def inverse_of(m: FiniteMonoid, a: int) -> Optional[int]:
    """A two-sided inverse of a, if there is one"""
    u = m.unit_index
    for b in range(len(m)):
        if m.table[a, b] == u and m.table[b, a] == u:
            return b
    return None


def make_paper_monoid_P() -> FiniteMonoid:
    """The five element monoid {1, x11, x12, x21, x22} with x_ij * x_kl = x_il"""
    pairs = [(i, j) for i in (1, 2) for j in (1, 2)]
    names = ("1",) + tuple(f"x{i}{j}" for i, j in pairs)
    table = np.zeros((5, 5), dtype=np.int64)
    table[0, :] = np.arange(5)
    table[:, 0] = np.arange(5)
    for a, (i, _) in enumerate(pairs, start=1):
        for b, (_, l) in enumerate(pairs, start=1):
            table[a, b] = 1 + pairs.index((i, l))
    return FiniteMonoid(names, 0, table, name="P")


def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(("1",), 0, np.zeros((1, 1), dtype=np.int64), name="trivial")


def cyclic_group(n: int) -> FiniteMonoid:
    """Z/n as a monoid table, elements 1, g, g^2, ..."""
    if n < 1:
        raise InputError("Cyclic group order must be positive")
    names = ("1",) + tuple("g" if k == 1 else f"g{k}" for k in range(1, n))
    everything = np.arange(n)
    table = (everything[:, None] + everything[None, :]) % n
    return FiniteMonoid(names, 0, table, name=f"Z{n}")


def direct_product(a: FiniteMonoid, b: FiniteMonoid) -> FiniteMonoid:
    """The product monoid, element (x, y) named "x,y" in row-major order"""
    pairs = list(itertools.product(range(len(a)), range(len(b))))
    names = tuple(f"{a.element_names[x]},{b.element_names[y]}" for x, y in pairs)
    table = np.empty((len(pairs), len(pairs)), dtype=np.int64)
    for p, (x1, y1) in enumerate(pairs):
        for q, (x2, y2) in enumerate(pairs):
            table[p, q] = a.table[x1, x2] * len(b) + b.table[y1, y2]
    unit = a.unit_index * len(b) + b.unit_index
    return FiniteMonoid(names, unit, table, name=f"{a.name}x{b.name}")


def _tokens(line: str) -> List[Tuple[str, int]]:
    """Whitespace separated tokens with their 1-based columns"""
    out = []
    column = 0
    for token in line.split():
        column = line.index(token, column)
        out.append((token, column + 1))
        column += len(token)
    return out


def parse_monoid(text: str) -> FiniteMonoid:
    """Parse the line oriented multiplication table format

    ```
    monoid P
    elements: 1 a b
    unit: 1
    row 1: 1 a b
    row a: a a b
    row b: b a b
    ```

    `#` starts a comment. Every row is required.
    """
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            lines.append((number, line))

    def expect(position: int, keyword: str) -> Tuple[int, str]:
        if position >= len(lines):
            raise ParseError(f"Missing '{keyword}' line", len(text.splitlines()) + 1, 1)
        number, line = lines[position]
        head = line.lstrip()
        if not head.startswith(keyword):
            raise ParseError(f"Expected '{keyword}'", number, len(line) - len(head) + 1)
        return number, line

    number, line = expect(0, "monoid")
    words = line.split()
    if len(words) != 2:
        raise ParseError("Expected 'monoid <name>'", number, 1)
    name = words[1]

    number, line = expect(1, "elements:")
    elements = _tokens(line.split(":", 1)[1])
    names = [token for token, _ in elements]
    if not names:
        raise ParseError("No elements listed", number, len(line) + 1)
    offset = line.index(":") + 2
    seen: Dict[str, int] = {}
    for token, column in elements:
        if token in seen:
            raise ParseError(f"Duplicate element {token!r}", number, column + offset - 1)
        seen[token] = len(seen)

    number, line = expect(2, "unit:")
    unit_tokens = _tokens(line.split(":", 1)[1])
    if len(unit_tokens) != 1 or unit_tokens[0][0] not in seen:
        raise ParseError("Unit must be one of the listed elements", number, line.index(":") + 2)
    unit = seen[unit_tokens[0][0]]

    n = len(names)
    table = np.full((n, n), -1, dtype=np.int64)
    for number, line in lines[3:]:
        head, sep, body = line.partition(":")
        head_words = head.split()
        if not sep or len(head_words) != 2 or head_words[0] != "row":
            raise ParseError("Expected 'row <element>: <products>'", number, 1)
        row_name = head_words[1]
        if row_name not in seen:
            raise ParseError(f"Unknown element {row_name!r}", number, line.index(row_name) + 1)
        row = seen[row_name]
        if table[row, 0] != -1:
            raise ParseError(f"Row {row_name!r} given twice", number, 1)
        products = _tokens(body)
        if len(products) != n:
            # first surplus entry, or the end of a short row
            if len(products) > n:
                column = products[n][1] + len(head) + 1
            else:
                column = len(line.rstrip()) + 1
            raise ParseError(
                f"Row {row_name!r} needs {n} entries, got {len(products)}", number, column
            )
        for col, (token, column) in enumerate(products):
            if token not in seen:
                raise ParseError(f"Unknown element {token!r}", number, column + len(head) + 1)
            table[row, col] = seen[token]

    missing = [names[r] for r in range(n) if table[r, 0] == -1]
    if missing:
        raise ParseError(
            f"Missing rows for {', '.join(missing)}", len(text.splitlines()) + 1, 1
        )

    logger.debug("Parsed monoid %s with %d elements", name, n)
    return FiniteMonoid(tuple(names), unit, table, name=name)


def read_monoid(path: str) -> FiniteMonoid:
    with open(path, "r", encoding="utf-8") as f:
        return parse_monoid(f.read())


def format_monoid(m: FiniteMonoid) -> str:
    """Write a monoid in the format read by `parse_monoid`"""
    names = m.element_names
    lines = [f"monoid {m.name}", "elements: " + " ".join(names), f"unit: {m.unit}"]
    for a in range(len(m)):
        lines.append(f"row {names[a]}: " + " ".join(names[b] for b in m.table[a]))
    return "\n".join(lines) + "\n"
