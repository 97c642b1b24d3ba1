import pytest

from monoidcompletion.monoid import cyclic_group, make_paper_monoid_P, trivial_monoid
from monoidcompletion.simplicial import nerve, normalized_chains


@pytest.fixture
def p():
    return make_paper_monoid_P()


@pytest.fixture
def z2():
    return cyclic_group(2)


@pytest.fixture
def trivial():
    return trivial_monoid()


@pytest.fixture(scope="session")
def bp_chains():
    """Normalized chains of the nerve of P up to degree 5"""
    return normalized_chains(nerve(make_paper_monoid_P(), 5))
