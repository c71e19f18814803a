"""Generators for extremal and structured fixture families.

The random generator uses Python's ``random.Random`` (Mersenne Twister)
seeded with the caller's 64-bit seed; identical seeds give identical
families on every platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import kernel
from .crossing import find_pairwise_crossing_witness
from .families import Family, GroundSet, crosses, mask_of


@dataclass(frozen=True)
class CyclicInterval:
    """The set {start, start+1 mod n, ..., start+length-1 mod n}.

    Length 0 encodes the empty set and length n the full ground set; both
    are canonicalized to start 0.
    """

    start: int
    length: int

    def mask(self, n: int) -> int:
        m = 0
        for off in range(self.length):
            m |= 1 << (self.start + off) % n
        return m

    @staticmethod
    def canonical(start: int, length: int, n: int) -> "CyclicInterval":
        if length in (0, n):
            return CyclicInterval(0, length)
        return CyclicInterval(start % n, length)


def gen_laminar_max(n: int) -> Family:
    """A laminar family of size exactly 2n.

    The empty set, all singletons, and the internal nodes of a balanced
    binary partition tree of 0..n-1 (left part gets the ceiling half); the
    root is the full ground set.
    """
    ground = GroundSet(n)
    masks = {0}
    for e in range(n):
        masks.add(1 << e)

    def split(lo: int, hi: int):
        if hi - lo < 2:
            return
        masks.add(mask_of(range(lo, hi)))
        mid = lo + (hi - lo + 1) // 2
        split(lo, mid)
        split(mid, hi)

    split(0, n)
    if n == 1:
        masks.add(1)  # root equals the lone singleton
    fam = Family(ground, tuple(masks))
    assert len(fam) == 2 * n
    return fam


def gen_cyclic_intervals(n: int, include_trivial: bool) -> Family:
    """All n(n-1) nonempty proper cyclic intervals; trivial sets optional."""
    ground = GroundSet(n)
    masks = []
    for start in range(n):
        for length in range(1, n):
            masks.append(CyclicInterval(start, length).mask(n))
    if include_trivial:
        masks.extend([0, ground.full_mask])
    return Family(ground, tuple(masks))


def gen_random_cross_free(n: int, k: int, mode: str, seed: int) -> Family:
    """Randomized greedy maximal k-cross-free family, deterministic per seed.

    Iterates the 2^n subsets in a seed-shuffled order and keeps a subset
    whenever it does not complete k pairwise-crossing members. The output is
    re-verified witness-free before returning.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    ground = GroundSet(n)
    order = list(range(1 << n))
    random.Random(seed).shuffle(order)
    kept: list[int] = []
    adj: list[int] = []  # crossing adjacency among kept, by insertion index
    for cand in order:
        nb = 0
        for i, m in enumerate(kept):
            if crosses(cand, m, ground, mode):
                nb |= 1 << i
        # A new k-witness must include cand, i.e. a (k-1)-clique among its
        # crossing neighbors.
        if kernel.find_k_clique_in(adj, nb, k - 1) is None:
            idx = len(kept)
            rest = nb
            while rest:
                low = rest & -rest
                adj[low.bit_length() - 1] |= 1 << idx
                rest ^= low
            adj.append(nb)
            kept.append(cand)
    fam = Family(ground, tuple(kept))
    assert find_pairwise_crossing_witness(fam, k, mode) is None
    return fam
