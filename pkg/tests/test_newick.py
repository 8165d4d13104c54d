"""Newick grammar: exact lengths, labels 1..n, round trips, error positions."""

import pytest
from fractions import Fraction

from treetrop.newick import NewickError, parse_newick, serialize_newick
from treetrop.tree import TreeError, WeightedTree, random_tree, trees_isomorphic


class TestParse:
    def test_q4_unnamed_hubs(self):
        t = parse_newick("((1:1,2:1):1,3:1,4:1);")
        assert t.n == 4
        assert t.path_weight(1, 2) == 2
        assert t.path_weight(1, 3) == 3

    def test_star(self):
        t = parse_newick("(1:1,2:1,3:1);")
        assert t.n == 3
        assert len(t.internal_vertices) == 1

    def test_decimal_lengths_are_exact(self):
        t = parse_newick("(1:0.1,2:0.2);")
        assert t.path_weight(1, 2) == Fraction(3, 10)

    def test_rational_lengths(self):
        t = parse_newick("(1:1/3,2:2/3);")
        assert t.path_weight(1, 2) == 1

    def test_named_internal_vertices(self):
        t = parse_newick("((1:1,2:1)left:2,3:1,4:1)root;")
        names = {str(v) for v in t.internal_vertices}
        assert names == {"left", "root"}

    def test_whitespace_ignored(self):
        t = parse_newick(" ( (1:1, 2:1) a : 1 ,\n 3:1, 4:1 ) b ;\n")
        assert t.path_weight(1, 3) == 3

    @pytest.mark.parametrize(
        "text",
        [
            "((1:1,2:1):0,3:1);",  # zero weight
            "((1:1,2:1):-1,3:1);",  # negative weight
        ],
    )
    def test_nonpositive_weight(self, text):
        with pytest.raises(NewickError):
            parse_newick(text)

    def test_duplicate_label(self):
        with pytest.raises(NewickError):
            parse_newick("(1:1,1:1,3:1);")

    def test_missing_label(self):
        with pytest.raises(TreeError):
            parse_newick("(1:1,2:1,4:1);")

    def test_noninteger_label(self):
        with pytest.raises(NewickError):
            parse_newick("(alpha:1,2:1);")

    def test_syntax_error_reports_position(self):
        with pytest.raises(NewickError) as err:
            parse_newick("((1:1,2:1:1,3:1);")
        assert err.value.position >= 0
        assert "position" in str(err.value)

    def test_missing_length(self):
        with pytest.raises(NewickError):
            parse_newick("(1,2:1);")

    def test_root_length_rejected(self):
        with pytest.raises(NewickError):
            parse_newick("(1:1,2:1):5;")

    def test_missing_semicolon(self):
        with pytest.raises(NewickError):
            parse_newick("(1:1,2:1)")

    def test_trailing_garbage(self):
        with pytest.raises(NewickError):
            parse_newick("(1:1,2:1); extra")

    def test_bare_leaf_rejected(self):
        with pytest.raises(NewickError):
            parse_newick("1;")

    def test_single_child_group_rejected(self):
        with pytest.raises(NewickError):
            parse_newick("((1:1):1,2:1);")

    def test_duplicate_internal_name(self):
        with pytest.raises(NewickError):
            parse_newick("((1:1,2:1)a:1,(3:1,4:1)a:1);")


class TestRoundTrip:
    @pytest.mark.parametrize(
        "text",
        [
            "((1:1,2:1)a:1,3:1,4:1)b;",
            "(1:1,2:1,3:1)hub;",
            "(1:1,2:1);",
            "(1:1/3,2:0.25,(3:7,4:1/7)x:2)y;",
        ],
    )
    def test_parse_serialize_parse(self, text):
        t = parse_newick(text)
        again = parse_newick(serialize_newick(t))
        assert trees_isomorphic(t, again)

    def test_random_trees_round_trip(self):
        for seed in range(10):
            t = random_tree(seed % 5 + 3, seed, (Fraction(1, 3), 5))
            assert trees_isomorphic(t, parse_newick(serialize_newick(t)))

    def test_two_leaf_round_trip(self):
        t = WeightedTree([(1, 2, Fraction(5, 3))], {1: 1, 2: 2})
        out = serialize_newick(t)
        again = parse_newick(out)
        assert again.path_weight(1, 2) == Fraction(5, 3)
        assert trees_isomorphic(t, again)

    def test_degree_two_suppressed_on_output(self):
        t = WeightedTree(
            [(1, "m", 1), ("m", "hub", 1), (2, "hub", 1), (3, "hub", 1)],
            {1: 1, 2: 2, 3: 3},
        )
        again = parse_newick(serialize_newick(t))
        assert trees_isomorphic(t, again)
        # the degree-2 vertex m cannot be expressed in the grammar
        assert len(again.vertices) == 4

    def test_internal_names_survive(self, q4):
        out = serialize_newick(q4)
        assert "a" in out and "b" in out
        again = parse_newick(out)
        assert {str(v) for v in again.internal_vertices} == {"a", "b"}
