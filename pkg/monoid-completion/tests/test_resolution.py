import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monoidcompletion.exceptions import InputError
from monoidcompletion.homology import ZERO, Z, homology_groups
from monoidcompletion.resolution import (
    LemmaResolution,
    ModuleMap,
    MonoidRingModule,
    build_lemma_resolution,
    check_exactness,
    check_projectivity,
    coinvariants,
    direct_sum,
    find_projectivity_certificate,
    idempotent_summand,
    permute_basis,
    permute_map,
    regular_module,
    right_ideal_module,
    tor_via_resolution,
    transport,
    trivial_module,
)
from monoidcompletion.simplicial import nerve, normalized_chains

RESOLUTION = build_lemma_resolution()


def test_modules(p):
    zp = regular_module(p)
    assert zp.name == "Z[P]"
    assert zp.rank == 5
    assert zp.is_action()
    p1 = right_ideal_module(p, ("x11", "x12"), "Z[P_1]")
    assert p1.basis[p1.act(0, p.index("x22"))] == "x12"
    assert trivial_module(p).is_action()
    with pytest.raises(InputError):
        right_ideal_module(p, ("x11",), "not closed")


def test_direct_sum_renames_clashes(p):
    zp = regular_module(p)
    both = direct_sum([zp, zp])
    assert both.rank == 10
    assert both.basis[:2] == ("1_1", "x11_1")
    assert both.is_action()


def test_resolution_shape():
    a, b, c, z = RESOLUTION.modules
    assert [m.name for m in RESOLUTION.modules] == ["Z[P_1] + Z[P_2]", "Z[P]", "Z[P_1]", "Z"]
    assert [m.rank for m in RESOLUTION.modules] == [4, 5, 2, 1]
    assert all(f.is_equivariant() for f in RESOLUTION.maps)


def test_beta_values(p):
    beta = RESOLUTION.beta
    p1 = beta.target
    assert list(beta.image_of("1")) == list(p1.vector({"x11": 1, "x12": -1}))
    assert p1.describe(beta.image_of("1")) == "x11 - x12"
    for x in ("x11", "x12", "x21", "x22"):
        assert not beta.image_of(x).any()
    assert list(RESOLUTION.gamma.image_of("x11")) == [1]


def test_exact():
    report = check_exactness(RESOLUTION.maps)
    assert report.exact
    assert bool(report)
    assert report.first_failure() is None
    assert len(report.positions) == 4
    assert report.describe().startswith("exact at")


def test_zero_beta_is_caught():
    zero = ModuleMap.zero(RESOLUTION.beta.source, RESOLUTION.beta.target, "beta")
    report = check_exactness((RESOLUTION.alpha, zero, RESOLUTION.gamma))
    assert not report.exact
    failure = report.first_failure()
    assert failure.module == "Z[P]"
    assert failure.kernel_rank == 5
    assert failure.image_rank == 4
    assert failure.defect_rank == 1
    assert failure.homology == Z
    assert "not exact at Z[P]" in report.describe()


def test_nonzero_composite():
    doubled = ModuleMap(
        RESOLUTION.gamma.source, RESOLUTION.gamma.target, np.array([[1, 1]]), "gamma"
    )
    bad_beta = ModuleMap(
        RESOLUTION.beta.source, RESOLUTION.beta.target, np.ones((2, 5), dtype=np.int64), "beta"
    )
    report = check_exactness((bad_beta, doubled))
    assert report.nonzero_composites == ("gamma beta",)
    assert not report.exact


def test_identity_on_z(p):
    z = trivial_module(p)
    assert check_exactness([ModuleMap(z, z, np.eye(1, dtype=np.int64), "id")]).exact


def test_maps_must_compose(p):
    z = trivial_module(p)
    with pytest.raises(InputError):
        check_exactness([RESOLUTION.alpha, ModuleMap(z, z, np.eye(1, dtype=np.int64))])
    with pytest.raises(InputError):
        check_exactness([])


def test_projectivity():
    report = check_projectivity()
    assert report.projective
    assert not report.trivial_module_certified
    unit = report.certificates["Z[P]"]
    assert unit.idempotent == "1"
    assert unit.summand_basis == ("1", "x11", "x12", "x21", "x22")
    assert unit.complement_rank == 0
    first = report.certificates["Z[P_1]"]
    assert first.idempotent == "x11"
    assert first.summand_basis == ("x11", "x12")
    assert first.complement_rank == 3
    assert report.certificates["Z[P_2]"].summand_basis == ("x21", "x22")


def test_no_certificate_for_z(p):
    assert find_projectivity_certificate(trivial_module(p)) is None
    assert idempotent_summand(regular_module(p), "x11") is None


def test_coinvariants(p):
    a, b, c, _ = (coinvariants(m) for m in RESOLUTION.modules)
    assert (a.rank, b.rank, c.rank) == (2, 1, 1)
    assert np.array_equal(c.projection @ c.section, np.eye(1, dtype=np.int64))
    assert not transport(RESOLUTION.beta, b, c).any()
    assert np.abs(transport(RESOLUTION.alpha, a, b)).tolist() == [[1, 1]]


def test_coinvariants_with_torsion_are_refused(z2):
    sign = MonoidRingModule(("u", "v"), [[0, 1], [1, 0]], z2, "swap")
    assert coinvariants(sign).rank == 1
    with pytest.raises(InputError):
        MonoidRingModule(("u",), [[0, 3]], z2, "bad")


def test_tor():
    assert tor_via_resolution() == [Z, ZERO, Z]


def test_tor_matches_nerve(p):
    nerve_groups = homology_groups(normalized_chains(nerve(p, 4)))[:3]
    assert tor_via_resolution(RESOLUTION) == nerve_groups


def test_broken_resolution_has_no_tor():
    zero = ModuleMap.zero(RESOLUTION.beta.source, RESOLUTION.beta.target, "beta")
    with pytest.raises(InputError):
        tor_via_resolution(LemmaResolution(RESOLUTION.alpha, zero, RESOLUTION.gamma))


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_exactness_stable_under_basis_permutation(data):
    modules = RESOLUTION.modules
    perms = [data.draw(st.permutations(range(m.rank))) for m in modules]
    permuted = [permute_basis(m, perm) for m, perm in zip(modules, perms)]
    assert all(m.is_action() for m in permuted)
    maps = [
        permute_map(f, permuted[j], permuted[j + 1], perms[j], perms[j + 1])
        for j, f in enumerate(RESOLUTION.maps)
    ]
    assert all(f.is_equivariant() for f in maps)
    assert check_exactness(maps).exact
