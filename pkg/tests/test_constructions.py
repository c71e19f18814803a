import random

import pytest

from crossfree.constructions import (
    CyclicInterval,
    gen_cyclic_intervals,
    gen_laminar_max,
    gen_random_cross_free,
)
from crossfree.crossing import find_pairwise_crossing_witness
from crossfree.families import (
    complement_closure,
    elements_of,
    family_predicates,
    mask_of,
)
from crossfree.search import brute_force_max


def test_cyclic_interval_masks():
    assert CyclicInterval(1, 2).mask(4) == mask_of([1, 2])
    assert CyclicInterval(4, 2).mask(5) == mask_of([4, 0])
    assert CyclicInterval(0, 0).mask(4) == 0
    assert CyclicInterval(0, 4).mask(4) == 0b1111


def test_cyclic_interval_canonical():
    assert CyclicInterval.canonical(3, 0, 4) == CyclicInterval(0, 0)
    assert CyclicInterval.canonical(3, 4, 4) == CyclicInterval(0, 4)
    assert CyclicInterval.canonical(5, 2, 4) == CyclicInterval(1, 2)


def test_laminar_examples():
    assert gen_laminar_max(1).sets == (0, 0b1)
    fam = gen_laminar_max(3)
    assert set(fam.sets) == {0, 0b1, 0b10, 0b100, 0b11, 0b111}


@pytest.mark.parametrize("n", range(1, 17))
def test_laminar_size_and_laminarity(n):
    fam = gen_laminar_max(n)
    assert len(fam) == 2 * n
    assert family_predicates(fam).is_laminar


def test_laminar_closure_is_2_cross_free():
    for n in range(3, 8):
        closure = complement_closure(gen_laminar_max(n))
        assert find_pairwise_crossing_witness(closure, 2, "strict") is None
        assert len(closure) >= 4 * n - 6


def test_interval_counts():
    assert len(gen_cyclic_intervals(4, False)) == 12
    assert len(gen_cyclic_intervals(4, True)) == 14
    fam = gen_cyclic_intervals(5, False)
    assert len(fam) == 20
    assert mask_of([4, 0]) in fam


def test_intervals_rotation_invariant():
    for n in (4, 5, 7):
        fam = gen_cyclic_intervals(n, False)
        for r in range(1, n):
            rotated = {mask_of((e + r) % n for e in elements_of(m)) for m in fam.sets}
            assert rotated == set(fam.sets)


def test_random_cross_free_n3_all_subsets():
    for seed in (0, 1, 2):
        assert len(gen_random_cross_free(3, 2, "strict", seed)) == 8


def test_random_cross_free_verified_and_deterministic():
    rng = random.Random(9)
    for _ in range(25):
        n = rng.randrange(3, 7)
        k = rng.randrange(2, 5)
        mode = rng.choice(["strict", "weak"])
        seed = rng.randrange(10**6)
        fam = gen_random_cross_free(n, k, mode, seed)
        assert find_pairwise_crossing_witness(fam, k, mode) is None
        assert fam.sets == gen_random_cross_free(n, k, mode, seed).sets


def test_random_cross_free_is_maximal():
    # Greedy keeps every subset that stays witness-free, so adding any
    # missing subset must create a k-witness.
    fam = gen_random_cross_free(4, 2, "strict", 42)
    from crossfree.families import Family

    for extra in range(16):
        if extra in fam:
            continue
        bigger = Family(fam.ground, fam.sets + (extra,))
        assert find_pairwise_crossing_witness(bigger, 2, "strict") is not None


def test_random_cross_free_not_above_exact_maximum():
    from crossfree.families import Family, GroundSet

    universe = Family(GroundSet(4), tuple(range(16)))
    cap = brute_force_max(universe, 2, "strict")
    for seed in range(5):
        assert len(gen_random_cross_free(4, 2, "strict", seed)) <= cap
