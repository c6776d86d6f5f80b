"""Generator tests: determinism, class membership of outputs, enumeration
counts against hand-derived small cases, and the ambiguity searches."""

import pytest

from normalnet.caterpillars import extract_sets
from normalnet.enewick import parse_enewick, write_enewick
from normalnet.generate import (
    GenSpec,
    UnsatisfiableSpecError,
    enumerate_networks,
    find_treechild_rq_ambiguous_tuple,
    find_triple_ambiguous_pair,
    random_normal,
    random_temporal_normal,
)
from normalnet.network import (
    is_normal,
    is_temporal,
    is_tree_child,
    isomorphic,
    validate,
)

# The only 3-leaf 1-reticulation normal shape: one leaf caught between the
# other two.  Three relabelings on t00..t02.
N3_SHAPES_T = (
    "((t01,(t00)#H1),(#H1,t02));",
    "((t00,(t01)#H1),(#H1,t02));",
    "((t00,(t02)#H1),(#H1,t01));",
)


class TestGenSpec:
    def test_rejects_zero_leaves(self):
        with pytest.raises(ValueError):
            GenSpec(0)

    def test_rejects_negative_reticulations(self):
        with pytest.raises(ValueError):
            GenSpec(3, -1)


class TestRandomNormal:
    def test_single_leaf(self):
        net = random_normal(GenSpec(1))
        assert net.n_leaves == 1
        assert net.n_reticulations == 0
        assert write_enewick(net) == "t00;"

    @pytest.mark.parametrize("seed", range(4))
    def test_trees_are_normal(self, seed):
        net = random_normal(GenSpec(6, 0, seed=seed))
        assert net.n_leaves == 6
        assert net.n_reticulations == 0
        assert validate(net).is_normal

    def test_deterministic(self):
        first = random_normal(GenSpec(7, 3, seed=11))
        second = random_normal(GenSpec(7, 3, seed=11))
        assert write_enewick(first) == write_enewick(second)

    @pytest.mark.parametrize(
        "n,r,seed",
        [(3, 1, 0), (5, 2, 1), (6, 4, 2), (8, 5, 3), (10, 5, 4)],
    )
    def test_exact_counts_and_normality(self, n, r, seed):
        net = random_normal(GenSpec(n, r, seed=seed))
        assert net.n_leaves == n
        assert net.n_reticulations == r
        assert is_normal(net)

    @pytest.mark.parametrize("seed", range(6))
    def test_three_leaf_single_reticulation_shape(self, seed):
        expected = [parse_enewick(s) for s in N3_SHAPES_T]
        net = random_normal(GenSpec(3, 1, seed=seed))
        assert any(isomorphic(net, e) for e in expected)

    @pytest.mark.parametrize("n,r", [(1, 1), (2, 1), (3, 2), (4, 3)])
    def test_unsatisfiable_spec(self, n, r):
        with pytest.raises(UnsatisfiableSpecError):
            random_normal(GenSpec(n, r))

    def test_unsatisfiable_is_value_error(self):
        assert issubclass(UnsatisfiableSpecError, ValueError)

    def test_temporal_only_flag(self):
        net = random_normal(GenSpec(5, 2, temporal_only=True, seed=9))
        assert is_normal(net)
        assert is_temporal(net) is not None


class TestRandomTemporalNormal:
    @pytest.mark.parametrize(
        "n,r,seed",
        [(3, 1, 0), (5, 2, 3), (6, 3, 2), (8, 4, 5)],
    )
    def test_counts_normal_and_temporal(self, n, r, seed):
        net = random_temporal_normal(GenSpec(n, r, seed=seed))
        assert net.n_leaves == n
        assert net.n_reticulations == r
        assert is_normal(net)
        assert is_temporal(net) is not None

    def test_deterministic(self):
        first = random_temporal_normal(GenSpec(6, 3, seed=4))
        second = random_temporal_normal(GenSpec(6, 3, seed=4))
        assert write_enewick(first) == write_enewick(second)

    @pytest.mark.parametrize("seed", range(4))
    def test_three_leaf_shape(self, seed):
        expected = [parse_enewick(s) for s in N3_SHAPES_T]
        net = random_temporal_normal(GenSpec(3, 1, seed=seed))
        assert any(isomorphic(net, e) for e in expected)

    def test_unsatisfiable_spec(self):
        with pytest.raises(UnsatisfiableSpecError):
            random_temporal_normal(GenSpec(4, 3))


class TestEnumerate:
    @pytest.mark.parametrize(
        "n,r,cls,count",
        [
            (1, 0, "tree", 1),
            (2, 0, "tree", 1),
            (3, 0, "tree", 3),
            (2, 1, "tree", 1),
            (2, 1, "tree-child", 3),
            (2, 1, "normal", 1),
        ],
    )
    def test_small_counts(self, n, r, cls, count):
        assert len(enumerate_networks(n, r, cls)) == count

    def test_three_leaves_one_reticulation_normal(self):
        nets = enumerate_networks(3, 1, "normal")
        # 3 trees plus 3 relabelings of the unique reticulated shape
        assert len(nets) == 6
        retics = [m for m in nets if m.n_reticulations == 1]
        assert len(retics) == 3
        expected = [
            parse_enewick(s)
            for s in (
                "((b,(a)#H1),(#H1,c));",
                "((a,(b)#H1),(#H1,c));",
                "((a,(c)#H1),(#H1,b));",
            )
        ]
        for net in retics:
            assert any(isomorphic(net, e) for e in expected)

    def test_pairwise_non_isomorphic(self):
        nets = enumerate_networks(3, 2, "tree-child")
        for i, first in enumerate(nets):
            for second in nets[i + 1:]:
                assert not isomorphic(first, second)

    def test_class_containment(self):
        tree = {write_enewick(m) for m in enumerate_networks(3, 1, "tree")}
        norm = {write_enewick(m) for m in enumerate_networks(3, 1, "normal")}
        child = {write_enewick(m) for m in enumerate_networks(3, 1, "tree-child")}
        assert tree <= norm <= child

    def test_filters_hold(self):
        assert all(is_normal(m) for m in enumerate_networks(4, 1, "normal"))
        assert all(is_tree_child(m) for m in enumerate_networks(3, 2, "tree-child"))
        assert all(m.n_reticulations == 0 for m in enumerate_networks(4, 2, "tree"))

    def test_deterministic_order(self):
        first = [write_enewick(m) for m in enumerate_networks(3, 1, "normal")]
        second = [write_enewick(m) for m in enumerate_networks(3, 1, "normal")]
        assert first == second

    @pytest.mark.parametrize("args", [(6, 0), (3, 4), (0, 0)])
    def test_rejects_out_of_scale(self, args):
        with pytest.raises(ValueError):
            enumerate_networks(*args, "tree")

    def test_rejects_unknown_class(self):
        with pytest.raises(ValueError):
            enumerate_networks(3, 1, "galled")


class TestAmbiguitySearches:
    def test_no_triple_pair_at_three_leaves(self):
        assert find_triple_ambiguous_pair(3) is None

    def test_triple_pair_at_four_leaves(self):
        # Smallest witness: the exhaustive 4-leaf catalogue contains one
        pair = find_triple_ambiguous_pair(4)
        assert pair is not None
        first, second = pair
        assert is_normal(first)
        assert is_normal(second)
        assert not isomorphic(first, second)
        s1, s2 = extract_sets(first), extract_sets(second)
        assert s1.triples == s2.triples
        assert s1.quads != s2.quads

    def test_triple_pair_at_five_leaves(self):
        pair = find_triple_ambiguous_pair(5)
        assert pair is not None
        first, second = pair
        assert is_normal(first)
        assert is_normal(second)
        assert not isomorphic(first, second)
        s1, s2 = extract_sets(first), extract_sets(second)
        assert s1.triples == s2.triples
        assert s1.quads != s2.quads

    def test_triple_pair_rejects_tiny_leaf_sets(self):
        with pytest.raises(ValueError):
            find_triple_ambiguous_pair(2)

    def test_treechild_tuple(self):
        tup = find_treechild_rq_ambiguous_tuple()
        assert tup is not None
        assert len(tup) >= 2
        sets = [extract_sets(m) for m in tup]
        assert all(s.triples == sets[0].triples for s in sets)
        assert all(s.quads == sets[0].quads for s in sets)
        assert all(is_tree_child(m) for m in tup)
        for i, first in enumerate(tup):
            for second in tup[i + 1:]:
                assert not isomorphic(first, second)
