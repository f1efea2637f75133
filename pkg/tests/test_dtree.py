"""Tests for the decision-tree learner, classification and path ranking."""

import random

import pytest

from src.dtree import Label, build_tree, rank_paths, split_score, test_tree
from src.errors import TreeError
from src.formula import equivalent, from_tree, parse_formula
from src.runner import eval_builtin
from src.space import Setting, enumerate_all, make_space, random_configs


def c50_hit(config):
    return "HIT" in eval_builtin("c50limit", config)


class TestSplitScore:
    def test_fig3_scores(self, fig2_space, fig3_configs):
        hits = [fig3_configs["c2"]]
        misses = [fig3_configs["c1"], fig3_configs["c3"]]
        assert split_score(hits, misses, "s", fig2_space) == pytest.approx(1.0)
        for name in ("t", "u", "v"):
            assert split_score(hits, misses, name, fig2_space) == pytest.approx(0.274, abs=1e-3)
        for name in ("a", "b", "c", "d", "e"):
            assert split_score(hits, misses, name, fig2_space) == pytest.approx(0.579, abs=1e-3)

    def test_constant_option_scores_zero(self, c50_space):
        hits = [c50_space.parse_config("1,1,1")]
        misses = [c50_space.parse_config("1,0,1")]
        assert split_score(hits, misses, "s", c50_space) == 0.0
        assert split_score(hits, misses, "t", c50_space) == pytest.approx(1.0)

    def test_empty_sample(self, c50_space):
        with pytest.raises(TreeError):
            split_score([], [], "s", c50_space)


class TestBuildTree:
    def test_fig3_tree(self, fig3_tree, fig2_space):
        assert fig3_tree.dump() == "s=0 -> HIT(1)\ns=1 -> MISS(2)"
        assert equivalent(from_tree(fig3_tree), parse_formula("s=0"), fig2_space)

    def test_all_hits_gives_single_leaf(self, c50_space):
        tree = build_tree(list(enumerate_all(c50_space))[:3], [], c50_space)
        assert tree.dump() == "HIT(3)"
        assert [p.length for p in tree.paths()] == [0]

    def test_all_misses(self, c50_space):
        tree = build_tree([], [c50_space.parse_config("0,0,0")], c50_space)
        assert tree.dump() == "MISS(1)"
        assert from_tree(tree) == parse_formula("false")

    def test_empty_sets(self, c50_space):
        with pytest.raises(TreeError):
            build_tree([], [], c50_space)

    def test_c50limit_full_data(self, c50_space):
        configs = list(enumerate_all(c50_space))
        hits = [c for c in configs if c50_hit(c)]
        misses = [c for c in configs if not c50_hit(c)]
        tree = build_tree(hits, misses, c50_space)
        assert test_tree(tree, hits, misses)
        assert equivalent(from_tree(tree), parse_formula("s=1 & t=1 & z in {1,2,3}"), c50_space)

    def test_c50limit_fourteen_configs(self, c50_space):
        configs = [c for c in enumerate_all(c50_space) if c.values[0] == "1"]
        configs += [c50_space.parse_config(t) for t in ("0,0,0", "0,1,1", "0,0,2", "0,1,3")]
        assert len(configs) == 14
        hits = [c for c in configs if c50_hit(c)]
        misses = [c for c in configs if not c50_hit(c)]
        tree = build_tree(hits, misses, c50_space)
        assert equivalent(from_tree(tree), parse_formula("s=1 & t=1 & z in {1,2,3}"), c50_space)

    def test_contradictory_configs_are_misses(self, c50_space):
        config = c50_space.parse_config("1,1,1")
        tree = build_tree([config], [config], c50_space)
        assert tree.classify(config) is Label.MISS

    def test_xor_sample_still_splits(self):
        space = make_space({"x": (0, 1), "y": (0, 1)})
        hits = [space.parse_config("0,1"), space.parse_config("1,0")]
        misses = [space.parse_config("0,0"), space.parse_config("1,1")]
        tree = build_tree(hits, misses, space)
        assert test_tree(tree, hits, misses)

    def test_unseen_branch_takes_parent_majority(self, c50_space):
        hits = [c50_space.parse_config(t) for t in ("1,1,1", "1,0,1")]
        misses = [c50_space.parse_config("0,1,1")]
        tree = build_tree(hits, misses, c50_space)
        # z=4 never observed; the tree is still total over the space
        assert tree.classify(c50_space.parse_config("1,1,4")) is Label.HIT
        assert tree.total_support == 3

    def test_training_accuracy_property(self):
        rng = random.Random(7)
        for _ in range(150):
            space = make_space(
                {f"o{i}": range(rng.randint(2, 3)) for i in range(rng.randint(1, 6))}
            )
            sample = random_configs(space, rng.randint(1, min(space.size, 40)), rng)
            hits = [c for c in sample if rng.random() < 0.4]
            misses = [c for c in sample if c not in hits]
            tree = build_tree(hits, misses, space)
            assert test_tree(tree, hits, misses)


class TestTreeStructure:
    def test_classify_is_total(self, fig3_tree, fig2_space):
        for config in random_configs(fig2_space, 100, seed=1):
            expected = Label.HIT if config.values[0] == "0" else Label.MISS
            assert fig3_tree.classify(config) is expected

    def test_paths_and_ids(self, five_path_tree):
        paths = five_path_tree.paths()
        assert [p.path_id for p in paths] == [0, 1, 2, 3, 4]
        assert [p.support for p in paths] == [2, 2, 1, 1, 2]
        assert [p.length for p in paths] == [1, 1, 3, 3, 2]
        assert paths[2].settings == (Setting("e", "2"), Setting("u", "0"), Setting("v", "0"))
        assert str(paths[2]) == "e=2 & u=0 & v=0 -> HIT(1)"
        assert len(five_path_tree.hit_paths()) == 2

    def test_dump_nesting(self, five_path_tree):
        assert five_path_tree.dump().splitlines() == [
            "e=0 -> MISS(2)",
            "e=1 -> MISS(2)",
            "e=2 ->",
            "  u=0 ->",
            "    v=0 -> HIT(1)",
            "    v=1 -> HIT(1)",
            "  u=1 -> MISS(2)",
        ]

    def test_equality(self, fig2_space, fig3_configs):
        hits = [fig3_configs["c2"]]
        misses = [fig3_configs["c1"], fig3_configs["c3"]]
        assert build_tree(hits, misses, fig2_space) == build_tree(hits, misses, fig2_space)


class TestRanking:
    def test_fig3_ranking(self, fig3_tree):
        ranked = rank_paths(fig3_tree)
        assert [str(p) for p in ranked] == ["s=0 -> HIT(1)", "s=1 -> MISS(2)"]

    def test_five_path_order(self, five_path_tree):
        ids = [p.path_id for p in rank_paths(five_path_tree)]
        assert ids == [2, 3, 4, 0, 1]

    @pytest.mark.parametrize("seed", range(10))
    def test_seeded_ties(self, five_path_tree, seed):
        ids = [p.path_id for p in rank_paths(five_path_tree, seed)]
        assert set(ids[:2]) == {2, 3}
        assert ids[2] == 4
        assert set(ids[3:]) == {0, 1}
        assert ids == [p.path_id for p in rank_paths(five_path_tree, seed)]
