import pytest

from periodic_rpoly.affine import parse_element
from periodic_rpoly.rootsys import reflection_order_from_reduced_word, root_system


@pytest.fixture(scope="session")
def a2():
    return root_system("A2")


@pytest.fixture(scope="session")
def b2():
    return root_system("B2")


@pytest.fixture(scope="session")
def a2_order(a2):
    # alpha1 < alpha1+alpha2 < alpha2
    return reflection_order_from_reduced_word(a2, [1, 2, 1])


@pytest.fixture(scope="session")
def golden_pair(a2):
    return parse_element(a2, ""), parse_element(a2, "cl=1,2,1;wt=1,1")
