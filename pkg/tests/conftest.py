import pytest

from treetrop.dissim import DissimilarityMap
from treetrop.newick import parse_newick

# Q4: leaves 1,2 on hub a, leaves 3,4 on hub b, every edge weight 1.
Q4_NEWICK = "((1:1,2:1)a:1,3:1,4:1)b;"

# S3: star with three unit pendant edges.
S3_NEWICK = "(1:1,2:1,3:1)hub;"

# CAT5: caterpillar, leaves 1,2 on hub a, leaf 3 on hub b, leaves 4,5 on hub c.
CAT5_NEWICK = "((1:1,2:1)a:1,3:1,(4:1,5:1)c:1)b;"

# The 4-cycle metric: additive-metric counterexample with witness (1,2,3,4).
M4_VALUES = (1, 2, 1, 1, 2, 1)


@pytest.fixture()
def q4():
    return parse_newick(Q4_NEWICK)


@pytest.fixture()
def s3():
    return parse_newick(S3_NEWICK)


@pytest.fixture()
def cat5():
    return parse_newick(CAT5_NEWICK)


@pytest.fixture()
def m4():
    return DissimilarityMap(4, M4_VALUES)


def vertex_by_name(tree, name):
    for v in tree.vertices:
        if str(v) == name:
            return v
    raise AssertionError(f"no vertex named {name!r}")


@pytest.fixture()
def named():
    return vertex_by_name
