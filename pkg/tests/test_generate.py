import pytest

from gerechte.errors import GenerationError
from gerechte.framework import begin_counts, classify, generate
from gerechte.framework.generate import uniform_framework


@pytest.mark.parametrize(
    "family, params",
    [
        ("uniform", {"s": 2, "t": 3}),
        ("mixed", {"s": 2, "t": 3}),
        ("mixed", {"s": 2, "t": 4}),
        ("mixed", {"s": 3, "t": 4}),
        ("columns", {"n": 12}),
        ("tree", {"n": 12}),
        ("tree", {"n": 8}),
    ],
)
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_generated_frameworks_belong_to_family(family, params, seed):
    partition = generate(family, seed=seed, **params)
    label = classify(partition)
    assert getattr(label, family)
    assert partition.is_gerechte()
    assert partition.is_rectangular()


def test_generation_is_deterministic():
    for family, params in (("mixed", {"s": 2, "t": 3}), ("tree", {"n": 12})):
        assert generate(family, seed=5, **params) == generate(family, seed=5, **params)


def test_uniform_framework_layout():
    partition = uniform_framework(2, 3)
    assert partition.order == 6
    assert {(r.height, r.width) for r in partition.rects().values()} == {(2, 3)}
    assert classify(partition).uniform


def test_mixed_framework_regions_have_one_shape_pair():
    partition = generate("mixed", seed=3, s=2, t=4)
    shapes = {(r.height, r.width) for r in partition.rects().values()}
    assert shapes <= {(2, 4), (4, 2)}
    assert classify(partition).shape == (2, 4)


@pytest.mark.parametrize(
    "family, params, message",
    [
        ("hexagon", {"n": 4}, "unknown"),
        ("columns", {}, "needs parameter n"),
        ("mixed", {"s": 2}, "needs parameter t"),
        ("uniform", {"s": "x", "t": 2}, "invalid parameters"),
    ],
)
def test_generation_errors(family, params, message):
    with pytest.raises(GenerationError, match=message):
        generate(family, **params)


def assert_begin_counts_divisible(partition, s, t):
    counts = begin_counts(partition, s, t)
    assert all(count % counts.s_prime == 0 for count in counts.n)
    assert all(count % counts.t_prime == 0 for count in counts.m)
    assert all(count % counts.t_prime == 0 for count in counts.col_n)
    assert all(count % counts.s_prime == 0 for count in counts.col_m)


@pytest.mark.parametrize("s, t", [(2, 3), (3, 4), (2, 4), (4, 6)])
@pytest.mark.parametrize("seed", range(5))
def test_begin_counts_hold_on_generated_mixed(s, t, seed):
    assert_begin_counts_divisible(generate("mixed", seed=seed, s=s, t=t), s, t)


@pytest.mark.slow
@pytest.mark.parametrize("s, t", [(2, 3), (3, 4), (2, 4), (4, 6)])
def test_begin_counts_on_1000_mixed_frameworks(s, t):
    for seed in range(5, 255):
        assert_begin_counts_divisible(generate("mixed", seed=seed, s=s, t=t), s, t)
