import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from monoidcompletion.enums import HomologyMethod
from monoidcompletion.exceptions import InputError, ParseError
from monoidcompletion.homology import (
    ZERO,
    ChainComplex,
    HomologyCalculator,
    HomologyGroup,
    Z,
    euler_characteristic,
    homology_groups,
    homology_of_complex,
    parse_chain_complex,
    read_chain_complex,
    reduced,
)
from monoidcompletion.monoid import cyclic_group
from monoidcompletion.simplicial import discrete, nerve, normalized_chains, point
from monoidcompletion.sparse import SparseIntMatrix

Z2 = HomologyGroup(0, (2,))


def test_group_formatting():
    assert str(ZERO) == "0"
    assert str(Z) == "Z"
    assert str(HomologyGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"
    assert ZERO.is_zero()
    assert Z2.to_json() == {"free_rank": 0, "torsion": [2]}


def test_invalid_groups():
    with pytest.raises(InputError):
        HomologyGroup(0, (2, 3))
    with pytest.raises(InputError):
        HomologyGroup(0, (1,))
    with pytest.raises(InputError):
        HomologyGroup(-1)


def test_reduced():
    assert reduced(Z, 0) == ZERO
    assert reduced(Z, 2) == Z
    with pytest.raises(InputError):
        reduced(ZERO, 0)


def test_nerve_of_p(bp_chains):
    assert bp_chains.ranks == (1, 4, 16, 64, 256, 1024)
    assert homology_groups(bp_chains) == [Z, ZERO, Z, ZERO, ZERO]


def test_nerve_of_z2_has_torsion():
    c = normalized_chains(nerve(cyclic_group(2), 5))
    assert homology_groups(c) == [Z, Z2, ZERO, Z2, ZERO]


def dense_homology(c: ChainComplex, n: int) -> HomologyGroup:
    """H_n from sympy's dense Smith forms of the two adjacent boundaries"""

    def nonzero_factors(matrix: SparseIntMatrix):
        if 0 in matrix.shape:
            return []
        factors = sympy_invariant_factors(Matrix(matrix.to_dense()), domain=ZZ)
        return sorted(abs(int(f)) for f in factors if f != 0)

    outgoing = nonzero_factors(c.boundary(n))
    incoming = nonzero_factors(c.boundary(n + 1))
    free = c.ranks[n] - len(outgoing) - len(incoming)
    return HomologyGroup(free, tuple(d for d in incoming if d > 1))


@pytest.mark.parametrize("order, n_max", [(2, 5), (3, 4), (4, 3)])
def test_cyclic_nerves_agree_with_dense_oracle(order, n_max):
    c = normalized_chains(nerve(cyclic_group(order), n_max))
    assert homology_groups(c) == [dense_homology(c, n) for n in range(n_max)]


def test_nerve_of_p_agrees_with_dense_oracle(p):
    c = normalized_chains(nerve(p, 3))
    assert homology_groups(c) == [dense_homology(c, n) for n in range(3)]


def test_methods_agree():
    c = normalized_chains(nerve(cyclic_group(3), 4))
    kernel = homology_groups(c, method=HomologyMethod.KernelBasis)
    cokernel = homology_groups(c, method=HomologyMethod.Cokernel)
    z3 = HomologyGroup(0, (3,))
    assert kernel == cokernel == [Z, z3, ZERO, z3]
    # a tiny cell budget pushes Auto onto the cokernel path
    assert homology_groups(c, two_step_max_cells=1) == kernel


def test_point_and_discrete():
    assert homology_groups(normalized_chains(point(4))) == [Z, ZERO, ZERO, ZERO]
    assert homology_groups(normalized_chains(discrete(3, 2))) == [HomologyGroup(3), ZERO]


def test_truncation_degree_is_refused(bp_chains):
    with pytest.raises(InputError, match="truncated"):
        homology_of_complex(bp_chains, 5)


def test_boundary_of_a_two_simplex(p):
    x = nerve(p, 2)
    c = normalized_chains(x)
    column = list(x.nondegenerate_indices(2)).index(x.index(2, ("x11", "x12")))
    row = list(x.nondegenerate_indices(1)).index(x.index(1, ("x11",)))
    # d0 and d1 both give (x12) and cancel, d2 leaves (x11)
    assert c.boundary(2)[row, column] == 1
    assert sum(abs(c.boundary(2)[r, column]) for r in range(c.ranks[1])) == 1
    assert c.boundary(1).is_zero()


def test_rank_inequality(bp_chains):
    calculator = HomologyCalculator(bp_chains)
    for n in range(bp_chains.n_max):
        assert calculator.boundary_rank(n) + calculator.boundary_rank(n + 1) <= bp_chains.ranks[n]


def test_euler_characteristic(bp_chains):
    check = euler_characteristic(bp_chains)
    assert check.consistent
    assert check.value == 1 - 4 + 16 - 64 + 256
    assert euler_characteristic(normalized_chains(point(4))).value == 1
    assert euler_characteristic(normalized_chains(discrete(2, 3))).value == 2
    assert euler_characteristic(ChainComplex([7], [])).value == 7


def test_malformed_complexes():
    with pytest.raises(InputError):
        ChainComplex([], [])
    with pytest.raises(InputError):
        ChainComplex([1, 1], [SparseIntMatrix(2, 1)])
    bad = ChainComplex(
        [1, 1, 1],
        [SparseIntMatrix.from_dense([[1]]), SparseIntMatrix.from_dense([[1]])],
    )
    assert bad.find_nonzero_composite() == 2
    with pytest.raises(InputError, match="Not a chain complex"):
        homology_of_complex(bad, 1)


def test_text_form(tmp_path, bp_chains):
    c = normalized_chains(nerve(cyclic_group(2), 4))
    again = parse_chain_complex(c.format())
    assert again.ranks == c.ranks
    assert all(again.boundary(n) == c.boundary(n) for n in range(c.n_max + 1))
    path = tmp_path / "bp.chains"
    bp_chains.write(str(path))
    assert homology_groups(read_chain_complex(str(path)))[:3] == [Z, ZERO, Z]


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_chain_complex("dim 0: 1\ndim 1: x\n")
    with pytest.raises(ParseError):
        parse_chain_complex("dim 0: 1\ndim 1: 1\n1 5 0 1\n")


Z3_CHAINS = normalized_chains(nerve(cyclic_group(3), 3))


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_homology_invariant_under_basis_permutation(data):
    perms = [data.draw(st.permutations(range(r))) for r in Z3_CHAINS.ranks]
    permuted = Z3_CHAINS.permuted(perms)
    assert permuted.is_complex()
    assert homology_groups(permuted) == homology_groups(Z3_CHAINS)
