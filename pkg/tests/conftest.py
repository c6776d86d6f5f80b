"""Shared fixtures: small hand-built networks with known structure.

N3 is the running example: leaves a, b, c where b sits below a reticulation
whose parents also carry a and c, so (a, b) and (c, b) are both reticulated
cherries and (a, b, c) is a double reticulated cherry.
"""

import pytest

from normalnet.network import PhyloNetwork

N3_ENEWICK = "((a,(b)#H1)s,(#H1,c)t)r;"
N3_CANONICAL = "((a,(b)#H1),(#H1,c));"


def build_n3():
    arcs = [("root", "s"), ("root", "t"), ("s", "a"), ("s", "h"),
            ("t", "h"), ("t", "c"), ("h", "b")]
    return PhyloNetwork(arcs, {"a": "a", "b": "b", "c": "c"})


def build_tree4():
    # caterpillar (((a,b),c),d)
    arcs = [("r", "u2"), ("r", "d"), ("u2", "u1"), ("u2", "c"),
            ("u1", "a"), ("u1", "b")]
    return PhyloNetwork(arcs, {"a": "a", "b": "b", "c": "c", "d": "d"})


@pytest.fixture
def n3():
    return build_n3()


@pytest.fixture
def tree4():
    return build_tree4()


@pytest.fixture
def shortcut_net():
    # (u, v) is a reticulation arc and u -> w -> v an alternate path, so the
    # network is tree-child but not normal.
    arcs = [("u", "w"), ("u", "v"), ("w", "v"), ("w", "l1"), ("v", "l2")]
    return PhyloNetwork(arcs, {"l1": "x", "l2": "y"})


NET5_ENEWICK = "(((a,(e)#H2),(b)#H1),(#H1,(c,(d,#H2))));"
QUAD4_ENEWICK = "((((a)#H1,c),(b)#H2),(#H1,(d,#H2)));"


@pytest.fixture
def net5():
    # normal and temporal; two reticulations (leaves b and e), five leaves
    from normalnet.enewick import parse_enewick
    return parse_enewick(NET5_ENEWICK)


@pytest.fixture
def quad4():
    # normal but not temporal; re-attaching leaf a needs a quad to choose
    # between two arcs whose subdivision points see the same leaves
    from normalnet.enewick import parse_enewick
    return parse_enewick(QUAD4_ENEWICK)


@pytest.fixture
def leaf1():
    return PhyloNetwork([], {"v": "a"})


@pytest.fixture
def cherry2():
    return PhyloNetwork([("r", "a"), ("r", "c")], {"a": "a", "c": "c"})
