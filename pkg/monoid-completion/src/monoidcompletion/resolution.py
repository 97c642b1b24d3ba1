"""Right modules over the monoid ring Z[P], the four term resolution of Z and Tor

All modules here are permutation modules: a right P-set linearized over the
integers. A module map is an integer matrix whose column j is the image of basis
element j.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import InputError
from .homology import ChainComplex, HomologyCalculator, HomologyGroup
from .monoid import FiniteMonoid, make_paper_monoid_P
from .snf import smith_normal_form
from .sparse import SparseIntMatrix

logger = logging.getLogger(__name__)


def _frozen(array, dtype=np.int64) -> np.ndarray:
    array = np.array(array, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class MonoidRingModule:
    """Free abelian group on `basis` with a right action of a finite monoid

    :param basis: Names of the basis elements
    :param action: action[b, m] is the basis element b . m
    :param monoid: The acting monoid
    :param name: A label for reports
    """

    basis: Tuple[str, ...]
    action: np.ndarray
    monoid: FiniteMonoid
    name: str = "M"

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "action", _frozen(self.action))
        if self.action.shape != (len(self.basis), len(self.monoid)):
            raise InputError(
                f"Action of {self.name} has shape {self.action.shape}, expected "
                f"{(len(self.basis), len(self.monoid))}"
            )
        if self.action.size and (self.action.min() < 0 or self.action.max() >= self.rank):
            raise InputError(f"Action of {self.name} leaves the basis")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def act(self, b: int, m: int) -> int:
        return int(self.action[b, m])

    def action_matrix(self, m: int) -> np.ndarray:
        """The linear map x -> x . m"""
        out = np.zeros((self.rank, self.rank), dtype=np.int64)
        out[self.action[:, m], np.arange(self.rank)] = 1
        return out

    def is_action(self) -> bool:
        """b . 1 = b and (b . m) . n = b . mn for every b, m, n"""
        unit_ok = np.array_equal(self.action[:, self.monoid.unit_index], np.arange(self.rank))
        composed = self.action[self.action]
        direct = self.action[:, self.monoid.table]
        return bool(unit_ok and np.array_equal(composed, direct))

    def vector(self, coefficients: Dict[str, int]) -> np.ndarray:
        out = np.zeros(self.rank, dtype=np.int64)
        for b, c in coefficients.items():
            out[self.basis.index(b)] += c
        return out

    def describe(self, vector: Sequence[int]) -> str:
        terms = []
        for b, c in zip(self.basis, vector):
            if c:
                terms.append(b if c == 1 else f"-{b}" if c == -1 else f"{c}{b}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """A Z-linear map between modules; matrix is target.rank x source.rank"""

    source: MonoidRingModule
    target: MonoidRingModule
    matrix: np.ndarray
    name: str = "f"

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(self.matrix))
        if self.matrix.shape != (self.target.rank, self.source.rank):
            raise InputError(f"Matrix of {self.name} has shape {self.matrix.shape}")

    @classmethod
    def zero(cls, source: MonoidRingModule, target: MonoidRingModule, name: str = "0"):
        return cls(source, target, np.zeros((target.rank, source.rank), dtype=np.int64), name)

    def __call__(self, vector: Sequence[int]) -> np.ndarray:
        return self.matrix @ np.asarray(vector, dtype=np.int64)

    def image_of(self, b: str) -> np.ndarray:
        return self.matrix[:, self.source.basis.index(b)]

    def is_equivariant(self) -> bool:
        return all(
            np.array_equal(
                self.target.action_matrix(m) @ self.matrix,
                self.matrix @ self.source.action_matrix(m),
            )
            for m in range(len(self.source.monoid))
        )

    def then(self, other: "ModuleMap") -> "ModuleMap":
        """other after self"""
        matrix = other.matrix @ self.matrix
        return ModuleMap(self.source, other.target, matrix, f"{other.name} {self.name}")

    def sparse(self) -> SparseIntMatrix:
        return SparseIntMatrix.from_dense(self.matrix.tolist(), cols=self.source.rank)


def linearize(
    monoid: FiniteMonoid, points: Sequence[str], action: np.ndarray, name: str
) -> MonoidRingModule:
    """The permutation module of a right P-set, checked to be an action"""
    module = MonoidRingModule(tuple(points), action, monoid, name)
    if not module.is_action():
        raise InputError(f"{name} is not a right {monoid.name}-set")
    return module


def regular_module(m: FiniteMonoid) -> MonoidRingModule:
    """Z[M] acted on by right multiplication"""
    return linearize(m, m.element_names, m.table, f"Z[{m.name}]")


def right_ideal_module(m: FiniteMonoid, elements: Sequence[str], name: str) -> MonoidRingModule:
    """Z[I] for a subset I of M closed under right multiplication"""
    indices = [m.index(e) for e in elements]
    position = {a: p for p, a in enumerate(indices)}
    try:
        action = [[position[int(m.table[a, x])] for x in range(len(m))] for a in indices]
    except KeyError:
        raise InputError(f"{elements} is not closed under right multiplication") from None
    return linearize(m, elements, np.array(action), name)


def trivial_module(m: FiniteMonoid) -> MonoidRingModule:
    return linearize(m, ("1",), np.zeros((1, len(m)), dtype=np.int64), "Z")


def direct_sum(modules: Sequence[MonoidRingModule], name: str = None) -> MonoidRingModule:
    monoid = modules[0].monoid
    names = [b for mod in modules for b in mod.basis]
    if len(set(names)) != len(names):
        names = [f"{b}_{t}" for t, mod in enumerate(modules, start=1) for b in mod.basis]
    blocks = []
    offset = 0
    for mod in modules:
        blocks.append(mod.action + offset)
        offset += mod.rank
    action = np.vstack(blocks) if blocks else np.zeros((0, len(monoid)), dtype=np.int64)
    name = name or " + ".join(mod.name for mod in modules)
    return MonoidRingModule(tuple(names), action, monoid, name)


def permute_basis(module: MonoidRingModule, perm: Sequence[int]) -> MonoidRingModule:
    """The same module with basis element j renumbered perm[j]"""
    perm = np.asarray(perm, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(module.rank)):
        raise InputError(f"{list(perm)} is not a permutation of {module.rank} elements")
    basis = [""] * module.rank
    action = np.empty_like(module.action)
    for j, b in enumerate(module.basis):
        basis[perm[j]] = b
        action[perm[j]] = perm[module.action[j]]
    return MonoidRingModule(tuple(basis), action, module.monoid, module.name)


def permute_map(
    f: ModuleMap,
    source: MonoidRingModule,
    target: MonoidRingModule,
    source_perm: Sequence[int],
    target_perm: Sequence[int],
) -> ModuleMap:
    """f rewritten between renumbered copies of its source and target"""
    matrix = np.zeros_like(f.matrix)
    matrix[np.ix_(np.asarray(target_perm), np.asarray(source_perm))] = f.matrix
    return ModuleMap(source, target, matrix, f.name)


@dataclass(frozen=True)
class LemmaResolution:
    """0 -> Z[P_1] + Z[P_2] -alpha-> Z[P] -beta-> Z[P_1] -gamma-> Z -> 0"""

    alpha: ModuleMap
    beta: ModuleMap
    gamma: ModuleMap

    @property
    def maps(self) -> Tuple[ModuleMap, ModuleMap, ModuleMap]:
        return self.alpha, self.beta, self.gamma

    @property
    def modules(self) -> Tuple[MonoidRingModule, ...]:
        return self.alpha.source, self.alpha.target, self.beta.target, self.gamma.target


def build_lemma_resolution() -> LemmaResolution:
    """The resolution of the trivial module over Z[P]

    alpha includes the basis of Z[P_1] + Z[P_2] into Z[P]; beta is left multiplication by
    x11 - x12, which lands in the span of P_1; gamma sends both x1j to 1.
    """
    p = make_paper_monoid_P()
    zp = regular_module(p)
    p1 = right_ideal_module(p, ("x11", "x12"), "Z[P_1]")
    p2 = right_ideal_module(p, ("x21", "x22"), "Z[P_2]")
    z = trivial_module(p)
    summands = direct_sum([p1, p2], "Z[P_1] + Z[P_2]")

    alpha = np.zeros((zp.rank, summands.rank), dtype=np.int64)
    for j, b in enumerate(summands.basis):
        alpha[zp.basis.index(b), j] = 1

    beta = np.zeros((p1.rank, zp.rank), dtype=np.int64)
    x11, x12 = p.index("x11"), p.index("x12")
    for j in range(zp.rank):
        beta[p1.basis.index(p.element_names[p.multiply(x11, j)]), j] += 1
        beta[p1.basis.index(p.element_names[p.multiply(x12, j)]), j] -= 1

    gamma = np.ones((1, p1.rank), dtype=np.int64)

    resolution = LemmaResolution(
        ModuleMap(summands, zp, alpha, "alpha"),
        ModuleMap(zp, p1, beta, "beta"),
        ModuleMap(p1, z, gamma, "gamma"),
    )
    for f in resolution.maps:
        if not f.is_equivariant():
            raise InputError(f"{f.name} is not a module map")
    return resolution


@dataclass(frozen=True)
class PositionCheck:
    """ker(outgoing) / im(incoming) at one module of a sequence"""

    module: str
    kernel_rank: int
    image_rank: int
    homology: HomologyGroup

    @property
    def exact(self) -> bool:
        return self.homology.is_zero()

    @property
    def defect_rank(self) -> int:
        return self.kernel_rank - self.image_rank


@dataclass(frozen=True)
class ExactnessReport:
    """Composite checks and per-position homology of 0 -> X_0 -> ... -> X_k -> 0"""

    nonzero_composites: Tuple[str, ...] = ()
    positions: Tuple[PositionCheck, ...] = ()

    @property
    def exact(self) -> bool:
        return not self.nonzero_composites and all(p.exact for p in self.positions)

    def __bool__(self) -> bool:
        return self.exact

    def first_failure(self) -> Optional[PositionCheck]:
        return next((p for p in self.positions if not p.exact), None)

    def describe(self) -> str:
        if self.nonzero_composites:
            return "nonzero composites: " + ", ".join(self.nonzero_composites)
        failure = self.first_failure()
        if failure is None:
            return "exact at " + ", ".join(p.module for p in self.positions)
        return (
            f"not exact at {failure.module}: kernel rank {failure.kernel_rank}, "
            f"image rank {failure.image_rank}, homology {failure.homology}"
        )


def _sequence_complex(maps: Sequence[ModuleMap]) -> ChainComplex:
    """0 -> X_0 -> ... -> X_k -> 0 as a chain complex, X_j in degree k - j + 1

    Degree 0 and degree k + 2 hold the zero group, so every X_j sits strictly
    below the top.
    """
    modules = [maps[0].source] + [f.target for f in maps]
    k = len(maps)
    ranks = [0] + [modules[k - d + 1].rank for d in range(1, k + 2)] + [0]
    boundaries = [SparseIntMatrix(0, modules[k].rank)]
    for d in range(2, k + 2):
        boundaries.append(maps[k - d + 1].sparse())
    boundaries.append(SparseIntMatrix(modules[0].rank, 0))
    return ChainComplex(ranks, boundaries)


def check_exactness(maps: Sequence[ModuleMap]) -> ExactnessReport:
    """Exactness of 0 -> X_0 -> X_1 -> ... -> X_k -> 0 over the integers

    The first map must be injective and the last surjective.
    """
    if not maps:
        raise InputError("Exactness needs at least one map")
    for f, g in zip(maps, maps[1:]):
        if f.target is not g.source and f.target.basis != g.source.basis:
            raise InputError(f"{f.name} and {g.name} are not composable")
    composites = tuple(
        f"{g.name} {f.name}" for f, g in zip(maps, maps[1:]) if (g.matrix @ f.matrix).any()
    )
    if composites:
        return ExactnessReport(nonzero_composites=composites)

    complex_ = _sequence_complex(maps)
    calculator = HomologyCalculator(complex_)
    modules = [maps[0].source] + [f.target for f in maps]
    k = len(maps)
    positions = []
    for j, module in enumerate(modules):
        degree = k - j + 1
        kernel_rank = module.rank - calculator.boundary_rank(degree)
        image_rank = calculator.boundary_rank(degree + 1)
        positions.append(
            PositionCheck(module.name, kernel_rank, image_rank, calculator.homology(degree))
        )
    report = ExactnessReport(positions=tuple(positions))
    logger.info("Exactness: %s", report.describe())
    return report


def _pset_isomorphism(
    a_action: np.ndarray, b_action: np.ndarray
) -> Optional[Tuple[int, ...]]:
    """A bijection phi with phi(x . m) = phi(x) . m, by exhaustive search"""
    if a_action.shape != b_action.shape:
        return None
    for phi in itertools.permutations(range(a_action.shape[0])):
        phi_arr = np.asarray(phi, dtype=np.int64)
        if np.array_equal(phi_arr[a_action], b_action[phi_arr]):
            return tuple(phi)
    return None


@dataclass(frozen=True)
class IdempotentSummand:
    """e Z[M] is a direct summand of Z[M] isomorphic to a given module

    :param idempotent: Name of e
    :param summand_basis: The elements e.m spanning e Z[M]
    :param complement_rank: Rank of (1 - e) Z[M]
    :param isomorphism: Basis element j of the module goes to summand_basis[isomorphism[j]]
    """

    idempotent: str
    summand_basis: Tuple[str, ...]
    complement_rank: int
    isomorphism: Tuple[int, ...]


def idempotent_summand(module: MonoidRingModule, e: str) -> Optional[IdempotentSummand]:
    """Certify module = e Z[M] with Z[M] = e Z[M] + (1 - e) Z[M], or None"""
    m = module.monoid
    a = m.index(e)
    if m.multiply(a, a) != a:
        return None
    size = len(m)
    left = np.zeros((size, size), dtype=np.int64)
    left[m.table[a], np.arange(size)] = 1
    complement = np.eye(size, dtype=np.int64) - left
    image = SparseIntMatrix.from_dense(left.tolist())
    rest = SparseIntMatrix.from_dense(complement.tolist())
    both = SparseIntMatrix.hstack([image, rest], size)
    image_rank = smith_normal_form(image, transforms=False).rank
    complement_rank = smith_normal_form(rest, transforms=False).rank
    spanning = smith_normal_form(both, transforms=False)
    if image_rank + complement_rank != size or spanning.invariants != (1,) * size:
        return None

    elements = sorted({int(x) for x in m.table[a]})
    position = {x: p for p, x in enumerate(elements)}
    summand_action = np.array(
        [[position[int(m.table[x, y])] for y in range(size)] for x in elements], dtype=np.int64
    )
    phi = _pset_isomorphism(module.action, summand_action)
    if phi is None:
        return None
    return IdempotentSummand(
        e, tuple(m.element_names[x] for x in elements), complement_rank, phi
    )


def find_projectivity_certificate(module: MonoidRingModule) -> Optional[IdempotentSummand]:
    """The first idempotent e, in element order, with module = e Z[M]"""
    m = module.monoid
    for a in range(len(m)):
        certificate = idempotent_summand(module, m.element_names[a])
        if certificate is not None:
            return certificate
    return None


@dataclass(frozen=True)
class ProjectivityReport:
    certificates: Dict[str, Optional[IdempotentSummand]] = field(default_factory=dict)
    trivial_module_certified: bool = False

    @property
    def projective(self) -> bool:
        return all(c is not None for c in self.certificates.values()) and not (
            self.trivial_module_certified
        )

    def __bool__(self) -> bool:
        return self.projective


def check_projectivity() -> ProjectivityReport:
    """Direct-summand-of-free certificates for Z[P], Z[P_1] and Z[P_2]

    Z[P] is certified by e = 1, Z[P_i] by e = x_i1. The trivial module is searched
    as a control and must find no certificate.
    """
    p = make_paper_monoid_P()
    modules = [
        regular_module(p),
        right_ideal_module(p, ("x11", "x12"), "Z[P_1]"),
        right_ideal_module(p, ("x21", "x22"), "Z[P_2]"),
    ]
    preferred = {"Z[P]": "1", "Z[P_1]": "x11", "Z[P_2]": "x21"}
    certificates = {mod.name: idempotent_summand(mod, preferred[mod.name]) for mod in modules}
    trivial = find_projectivity_certificate(trivial_module(p)) is not None
    return ProjectivityReport(certificates, trivial)


@dataclass(frozen=True)
class Coinvariants:
    """M_P = M / span{b.m - b} with a projection from M and a section back

    :param rank: Rank of the (torsion free) quotient
    :param projection: rank x M.rank
    :param section: M.rank x rank, projection @ section = identity
    """

    module: MonoidRingModule
    rank: int
    projection: np.ndarray
    section: np.ndarray


def coinvariants(module: MonoidRingModule) -> Coinvariants:
    """The quotient by the action relations, computed by Smith normal form"""
    columns = []
    for b in range(module.rank):
        for m in range(len(module.monoid)):
            target = module.act(b, m)
            if target != b:
                column = np.zeros(module.rank, dtype=np.int64)
                column[target] += 1
                column[b] -= 1
                columns.append(column)
    relations = (
        np.column_stack(columns) if columns else np.zeros((module.rank, 0), dtype=np.int64)
    )
    form = smith_normal_form(
        SparseIntMatrix.from_dense(relations.tolist(), cols=relations.shape[1])
    )
    if form.torsion:
        raise InputError(f"Coinvariants of {module.name} have torsion {form.torsion}")
    r = form.rank
    u = np.array(form.u.to_dense(), dtype=np.int64).reshape(module.rank, module.rank)
    u_inv = np.array(form.u_inv.to_dense(), dtype=np.int64).reshape(module.rank, module.rank)
    return Coinvariants(module, module.rank - r, u[r:, :], u_inv[:, r:])


def transport(f: ModuleMap, source: Coinvariants, target: Coinvariants) -> np.ndarray:
    """The map induced by f on coinvariants"""
    return target.projection @ f.matrix @ source.section


def tor_via_resolution(resolution: Optional[LemmaResolution] = None) -> List[HomologyGroup]:
    """Tor_0, Tor_1, Tor_2 of Z with Z over Z[P]

    Drops the augmentation, takes coinvariants of Z[P_1] + Z[P_2] -> Z[P] -> Z[P_1]
    and reads off homology, Z[P_1] in degree 0.
    """
    resolution = resolution or build_lemma_resolution()
    report = check_exactness(resolution.maps)
    if not report.exact:
        raise InputError(f"Not a resolution: {report.describe()}")
    a, b, c = (coinvariants(mod) for mod in resolution.modules[:3])
    beta = transport(resolution.beta, b, c)
    alpha = transport(resolution.alpha, a, b)
    logger.debug("Transported maps: beta %s, alpha %s", beta.tolist(), alpha.tolist())
    complex_ = ChainComplex(
        [c.rank, b.rank, a.rank, 0],
        [
            SparseIntMatrix.from_dense(beta.tolist(), cols=b.rank),
            SparseIntMatrix.from_dense(alpha.tolist(), cols=a.rank),
            SparseIntMatrix(a.rank, 0),
        ],
    )
    return HomologyCalculator(complex_).groups(range(3))
