"""Chain complexes of free abelian groups and their integral homology"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .enums import HomologyMethod
from .exceptions import InputError, ParseError
from .snf import SmithForm, smith_normal_form
from .sparse import SparseIntMatrix

logger = logging.getLogger(__name__)

DEFAULT_TWO_STEP_MAX_CELLS = 4_000_000


@dataclass(frozen=True)
class HomologyGroup:
    """Z^free_rank + Z/d_1 + Z/d_2 + ... with d_1 | d_2 | ..."""

    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        torsion = tuple(int(d) for d in self.torsion)
        if self.free_rank < 0 or any(d <= 1 for d in torsion):
            raise InputError(f"Invalid homology group {self.free_rank}, {torsion}")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise InputError(f"Torsion {torsion} is not a divisibility chain")
        object.__setattr__(self, "torsion", torsion)

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


Z = HomologyGroup(1)
ZERO = HomologyGroup()


def from_invariants(free_rank: int, invariants: Iterable[int]) -> HomologyGroup:
    """A group from a free rank and invariant factors, dropping the 1s"""
    return HomologyGroup(free_rank, tuple(d for d in invariants if d > 1))


def reduced(group: HomologyGroup, degree: int) -> HomologyGroup:
    """Reduced homology of a nonempty space from its unreduced group"""
    if degree != 0:
        return group
    if group.free_rank == 0:
        raise InputError("H_0 of a nonempty space has positive rank")
    return HomologyGroup(group.free_rank - 1, group.torsion)


class ChainComplex:
    """C_0 <- C_1 <- ... <- C_n_max, truncated at n_max

    boundary(n) maps degree n to degree n-1 as a ranks[n-1] x ranks[n] matrix; entry
    (i, j) is the coefficient of basis element i in the boundary of basis element j.
    boundary(0) is the zero map to the zero group.

    :param ranks: Rank of C_n for n = 0..n_max
    :param boundaries: boundary(n) for n = 1..n_max
    """

    def __init__(self, ranks: Sequence[int], boundaries: Sequence[SparseIntMatrix]):
        self._ranks = tuple(int(r) for r in ranks)
        if not self._ranks:
            raise InputError("A chain complex needs at least degree 0")
        if len(boundaries) != len(self._ranks) - 1:
            raise InputError(
                f"Expected {len(self._ranks) - 1} boundary matrices, got {len(boundaries)}"
            )
        for n, matrix in enumerate(boundaries, start=1):
            expected = (self._ranks[n - 1], self._ranks[n])
            if matrix.shape != expected:
                raise InputError(f"boundary {n} has shape {matrix.shape}, expected {expected}")
        self._boundaries = (SparseIntMatrix(0, self._ranks[0]),) + tuple(boundaries)

    @property
    def ranks(self) -> Tuple[int, ...]:
        return self._ranks

    @property
    def n_max(self) -> int:
        return len(self._ranks) - 1

    def boundary(self, n: int) -> SparseIntMatrix:
        if not 0 <= n <= self.n_max:
            raise InputError(f"No boundary in degree {n}, complex stops at {self.n_max}")
        return self._boundaries[n]

    def find_nonzero_composite(self) -> Optional[int]:
        """The first n with boundary(n-1) * boundary(n) != 0, or None"""
        for n in range(2, self.n_max + 1):
            if not (self._boundaries[n - 1] @ self._boundaries[n]).is_zero():
                return n
        return None

    def is_complex(self) -> bool:
        return self.find_nonzero_composite() is None

    def permuted(self, perms: Sequence[Sequence[int]]) -> "ChainComplex":
        """The same complex with basis element j of degree n renumbered perms[n][j]"""
        boundaries = [
            self._boundaries[n].permute(perms[n - 1], perms[n]) for n in range(1, self.n_max + 1)
        ]
        return ChainComplex(self._ranks, boundaries)

    def format(self) -> str:
        """Text form: `dim n: r` per degree, then `n i j c` per boundary entry"""
        lines = [f"dim {n}: {r}" for n, r in enumerate(self._ranks)]
        for n in range(1, self.n_max + 1):
            lines.extend(f"{n} {i} {j} {c}" for i, j, c in self._boundaries[n].items())
        return "\n".join(lines) + "\n"

    def write(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.format())


def parse_chain_complex(text: str) -> ChainComplex:
    """Read the text form written by `ChainComplex.format`"""
    ranks: Dict[int, int] = {}
    entries: Dict[int, Dict[Tuple[int, int], int]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("dim"):
            head, sep, value = line.partition(":")
            words = head.split()
            if not sep or len(words) != 2:
                raise ParseError("Expected 'dim n: r'", number, 1)
            try:
                n, r = int(words[1]), int(value)
            except ValueError:
                raise ParseError("Degree and rank must be integers", number, 1) from None
            if n in ranks or n < 0 or r < 0:
                raise ParseError(f"Bad or repeated degree {n}", number, 1)
            ranks[n] = r
            continue
        words = line.split()
        if len(words) != 4:
            raise ParseError("Expected 'n i j c'", number, 1)
        try:
            n, i, j, c = (int(w) for w in words)
        except ValueError:
            raise ParseError("Boundary entries must be integers", number, 1) from None
        if n not in ranks or n - 1 not in ranks:
            raise ParseError(f"Entry for degree {n} before its 'dim' lines", number, 1)
        if not (0 <= i < ranks[n - 1] and 0 <= j < ranks[n]):
            raise ParseError(f"Entry ({i}, {j}) out of range in degree {n}", number, 1)
        entries.setdefault(n, {})[(i, j)] = entries.get(n, {}).get((i, j), 0) + c

    if not ranks or sorted(ranks) != list(range(len(ranks))):
        raise ParseError("Degrees must run 0, 1, ..., n_max without gaps")
    rank_list = [ranks[n] for n in range(len(ranks))]
    boundaries = [
        SparseIntMatrix(rank_list[n - 1], rank_list[n], entries.get(n, {}))
        for n in range(1, len(rank_list))
    ]
    return ChainComplex(rank_list, boundaries)


def read_chain_complex(path: str) -> ChainComplex:
    with open(path, "r", encoding="utf-8") as f:
        return parse_chain_complex(f.read())


class HomologyCalculator:
    """Computes H_n of one complex, reusing eliminations across degrees

    :param complex_: The chain complex
    :param method: How torsion is extracted
    :param two_step_max_cells: With HomologyMethod.Auto, the largest rows*cols handled by
        the kernel-basis method
    """

    def __init__(
        self,
        complex_: ChainComplex,
        method: HomologyMethod = HomologyMethod.Auto,
        two_step_max_cells: int = DEFAULT_TWO_STEP_MAX_CELLS,
    ):
        self._complex = complex_
        self._method = method
        self._limit = two_step_max_cells
        self._forms: Dict[Tuple[int, bool], SmithForm] = {}

    def _snf(self, n: int, transforms: bool) -> SmithForm:
        if (n, True) in self._forms:
            return self._forms[(n, True)]
        if (n, transforms) not in self._forms:
            logger.info("Eliminating boundary %d of shape %s", n, self._complex.boundary(n).shape)
            self._forms[(n, transforms)] = smith_normal_form(
                self._complex.boundary(n), transforms=transforms
            )
        return self._forms[(n, transforms)]

    def boundary_rank(self, n: int) -> int:
        return self._snf(n, False).rank

    def _method_for(self, n: int) -> HomologyMethod:
        if self._method != HomologyMethod.Auto:
            return self._method
        ranks = self._complex.ranks
        below = ranks[n - 1] if n > 0 else 0
        if max(below * ranks[n], ranks[n] * ranks[n + 1]) <= self._limit:
            return HomologyMethod.KernelBasis
        return HomologyMethod.Cokernel

    def homology(self, n: int) -> HomologyGroup:
        c = self._complex
        if not 0 <= n < c.n_max:
            raise InputError(
                f"H_{n} is not reliable: the complex is truncated at degree {c.n_max}"
            )
        if self._method_for(n) == HomologyMethod.Cokernel:
            incoming = self._snf(n + 1, False)
            free = c.ranks[n] - self.boundary_rank(n) - incoming.rank
            return from_invariants(free, incoming.invariants)

        outgoing = self._snf(n, True)
        r = outgoing.rank
        # Columns r.. of V span ker(boundary n); V^-1 rewrites cycles in that basis.
        rewritten = outgoing.v_inv @ c.boundary(n + 1)
        if any(row < r for row, _, _ in rewritten.items()):
            raise InputError(
                f"Not a chain complex: boundary {n} after boundary {n + 1} is nonzero"
            )
        on_kernel = rewritten.select(rows=range(r, c.ranks[n]))
        relations = smith_normal_form(on_kernel, transforms=False)
        free = c.ranks[n] - r - relations.rank
        return from_invariants(free, relations.invariants)

    def groups(self, degrees: Iterable[int]) -> List[HomologyGroup]:
        return [self.homology(n) for n in degrees]


def homology_of_complex(
    c: ChainComplex,
    n: int,
    method: HomologyMethod = HomologyMethod.KernelBasis,
) -> HomologyGroup:
    """H_n = ker boundary(n) / im boundary(n+1); refused at the truncation degree"""
    return HomologyCalculator(c, method).homology(n)


def homology_groups(
    c: ChainComplex,
    degrees: Optional[Iterable[int]] = None,
    method: HomologyMethod = HomologyMethod.Auto,
    two_step_max_cells: int = DEFAULT_TWO_STEP_MAX_CELLS,
) -> List[HomologyGroup]:
    """H_n for each requested degree, by default every reliable one"""
    if degrees is None:
        degrees = range(c.n_max)
    return HomologyCalculator(c, method, two_step_max_cells).groups(degrees)


@dataclass(frozen=True)
class EulerCheck:
    """Both sides of the truncated Euler characteristic identity

    sum_{n<N} (-1)^n rank C_n = sum_{n<N} (-1)^n rank H_n + (-1)^(N-1) rank boundary(N)
    """

    chain_side: int
    homology_side: int
    boundary_term: int

    @property
    def value(self) -> int:
        return self.chain_side

    @property
    def consistent(self) -> bool:
        return self.chain_side == self.homology_side + self.boundary_term


def euler_characteristic(c: ChainComplex) -> EulerCheck:
    """Alternating rank sums over the reliable range, computed from chains and from homology

    A complex with only degree 0 is complete, and its single group counts.
    """
    calculator = HomologyCalculator(c, HomologyMethod.Cokernel)
    top = c.n_max
    if top == 0:
        return EulerCheck(c.ranks[0], c.ranks[0], 0)
    chain_side = sum((-1) ** n * c.ranks[n] for n in range(top))
    homology_side = sum((-1) ** n * calculator.homology(n).free_rank for n in range(top))
    boundary_term = (-1) ** (top - 1) * calculator.boundary_rank(top)
    return EulerCheck(chain_side, homology_side, boundary_term)
