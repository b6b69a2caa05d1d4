import math
import random

import pytest

from signedbpo.partition import build_partition_tree


class TestBuild:
    def test_power_of_two(self):
        t = build_partition_tree((1, 2, 3, 4))
        assert t.level(1) == ((1,), (2,), (3,), (4,))
        assert t.level(2) == ((1, 2), (3, 4))
        assert t.level(3) == ((1, 2, 3, 4),)
        assert t.num_levels == 3

    def test_odd_width(self):
        t = build_partition_tree((1, 2, 3))
        assert t.level(1) == ((1,), (2,), (3,))
        assert t.level(2) == ((1, 2), (3,))
        assert t.level(3) == ((1, 2, 3),)

    def test_singleton(self):
        t = build_partition_tree(("a",))
        assert t.num_levels == 1 and t.level(1) == (("a",),)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            build_partition_tree(())

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            build_partition_tree((1, 1))

    def test_level_range(self):
        t = build_partition_tree((1, 2))
        with pytest.raises(ValueError):
            t.level(0)
        with pytest.raises(ValueError):
            t.level(3)


class TestInvariants:
    def test_partition_laminarity_sizes(self):
        rng = random.Random(0)
        for _ in range(50):
            size = rng.randint(1, 33)
            base = tuple(range(size))
            t = build_partition_tree(base)
            expected_levels = 1 if size == 1 else math.ceil(math.log2(size)) + 1
            assert t.num_levels == expected_levels
            for i in range(1, t.num_levels + 1):
                nodes = t.level(i)
                flat = [c for node in nodes for c in node]
                assert sorted(flat) == sorted(base)  # partition of the base
                assert len(set(flat)) == len(flat)
                assert all(len(node) <= 2 ** (i - 1) for node in nodes)
                if i < t.num_levels:
                    parents = t.level(i + 1)
                    for node in nodes:
                        containing = [p for p in parents if set(node) <= set(p)]
                        assert len(containing) == 1  # laminar
            assert t.level(t.num_levels) == (base,)
