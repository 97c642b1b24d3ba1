import pytest

from monoidcompletion.exceptions import InputError, ResourceLimitError
from monoidcompletion.fp_nerve import truncated_fp_nerve
from monoidcompletion.homology import Z, homology_groups
from monoidcompletion.simplicial import nerve, normalized_chains


def test_one_copy_is_the_nerve_of_p(p):
    x = truncated_fp_nerve(1, 3, 3)
    assert x.counts() == nerve(p, 3).counts()
    assert homology_groups(normalized_chains(x)) == homology_groups(
        normalized_chains(nerve(p, 3))
    )


def test_two_copies_of_length_one():
    x = truncated_fp_nerve(2, 1, 3)
    x.verify()
    assert x.nondegenerate_counts()[:2] == [1, 8]
    assert homology_groups(normalized_chains(x))[0] == Z
    assert x.name == "N(M_2)<=1"


def test_labels_are_formatted_words():
    x = truncated_fp_nerve(2, 2, 2)
    assert ("x11^(1) x22^(2)",) in x.simplices(1)
    assert ("1",) in x.simplices(1)


def test_invalid_parameters():
    with pytest.raises(InputError):
        truncated_fp_nerve(0, 2, 2)
    with pytest.raises(InputError):
        truncated_fp_nerve(2, 0, 2)


def test_budget():
    with pytest.raises(ResourceLimitError) as info:
        truncated_fp_nerve(2, 4, 4, max_simplices=50)
    assert info.value.degree == 1
    assert info.value.counts == (1, 681)
