"""Crossing graphs, exact witness search, Dilworth partition, degree bounds.

The crossing graph of a family has one vertex per member (canonical order)
and an edge where the pair crosses under the chosen mode. A family fails to
be k-cross-free exactly when this graph contains a k-clique; the witness
search is therefore an exact clique search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from . import kernel
from .families import Family, GroundSet, PairRelation, classify_pair, crosses

MODES = ("strict", "weak")


@dataclass(frozen=True)
class CrossingGraph:
    """Symmetric adjacency over family indices; adj[i] is a vertex bitmask."""

    family: Family
    mode: str
    adj: tuple[int, ...]

    def __len__(self):
        return len(self.adj)

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2


@dataclass(frozen=True)
class Witness:
    """k sets that pairwise cross under the declared mode; re-verified."""

    ground: GroundSet
    sets: tuple[int, ...]
    mode: str

    def __post_init__(self):
        for i, a in enumerate(self.sets):
            for b in self.sets[i + 1 :]:
                if not crosses(a, b, self.ground, self.mode):
                    raise ValueError(
                        f"witness pair {a:#x},{b:#x} does not cross in {self.mode} mode"
                    )


@dataclass(frozen=True)
class ChainDecomposition:
    """A partition of a family into inclusion chains, with a max antichain."""

    chains: tuple[tuple[int, ...], ...]
    max_antichain: tuple[int, ...]

    def __post_init__(self):
        for chain in self.chains:
            for a, b in zip(chain, chain[1:]):
                if not (a & ~b == 0 and a != b):
                    raise ValueError("chain not strictly increasing by inclusion")

    def __len__(self):
        return len(self.chains)


def crossing_graph(fam: Family, mode: str) -> CrossingGraph:
    """Adjacency per classify_pair; vertex order is the canonical family order."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    sets = fam.sets
    n = len(sets)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if crosses(sets[i], sets[j], fam.ground, mode):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return CrossingGraph(fam, mode, tuple(adj))


def find_pairwise_crossing_witness(fam: Family, k: int, mode: str):
    """Lexicographically least k-subfamily that pairwise crosses, or None.

    Complete search: returns None only when no k pairwise-crossing members
    exist in the family.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    graph = crossing_graph(fam, mode)
    clique = kernel.find_k_clique(graph.adj, k)
    if clique is None:
        return None
    return Witness(fam.ground, tuple(fam.sets[i] for i in clique), mode)


def _max_bipartite_matching(n: int, succ: list[int]) -> list[int]:
    """Kuhn's algorithm on left/right copies of 0..n-1; succ[i] is a bitmask.

    Returns match_right: for each right vertex, its matched left vertex or -1.
    Deterministic: left vertices processed ascending, neighbors ascending.
    """
    match_right = [-1] * n

    def try_augment(u: int, visited: list[bool]) -> bool:
        m = succ[u]
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            if visited[v]:
                continue
            visited[v] = True
            if match_right[v] == -1 or try_augment(match_right[v], visited):
                match_right[v] = u
                return True
        return False

    for u in range(n):
        try_augment(u, [False] * n)
    return match_right


def dilworth_partition(fam: Family) -> ChainDecomposition:
    """Exact minimum chain partition with a maximum antichain certificate.

    The subset relation is its own transitive closure, so a minimum chain
    cover is n minus a maximum matching in the bipartite comparability
    graph; the antichain comes from the Koenig vertex cover of the same
    matching, and the two cardinalities agree (Dilworth duality).
    """
    sets = fam.sets
    n = len(sets)
    succ = [0] * n  # succ[i]: strict supersets of sets[i]
    for i in range(n):
        for j in range(n):
            if i != j and sets[i] & ~sets[j] == 0:
                succ[i] |= 1 << j
    match_right = _max_bipartite_matching(n, succ)
    match_left = [-1] * n
    for v, u in enumerate(match_right):
        if u != -1:
            match_left[u] = v

    # Chains: follow matched successor edges from chain heads.
    starts = [i for i in range(n) if match_right[i] == -1]
    chains = []
    for s in starts:
        chain = [s]
        while match_left[chain[-1]] != -1:
            chain.append(match_left[chain[-1]])
        chains.append(tuple(sets[i] for i in chain))
    chains.sort(key=lambda c: (c[0].bit_count(), c[0]))

    # Koenig cover: alternating reachability from unmatched left vertices.
    unmatched_left = [u for u in range(n) if match_left[u] == -1]
    seen_left = [False] * n
    seen_right = [False] * n
    stack = list(unmatched_left)
    for u in stack:
        seen_left[u] = True
    while stack:
        u = stack.pop()
        m = succ[u]
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            if v == match_left[u]:
                continue  # alternating paths leave the left side on non-matching edges
            if not seen_right[v]:
                seen_right[v] = True
                w = match_right[v]
                if w != -1 and not seen_left[w]:
                    seen_left[w] = True
                    stack.append(w)
    # Cover = (left not reached) + (right reached); antichain = uncovered elems.
    antichain = tuple(
        sets[i] for i in range(n) if seen_left[i] and not seen_right[i]
    )
    dec = ChainDecomposition(tuple(chains), antichain)
    assert len(dec.chains) == len(antichain), "Dilworth duality violated"
    return dec


def greedy_independent_set(graph: CrossingGraph) -> tuple[int, ...]:
    """Independent vertex set of size >= |V|/(avg degree + 1).

    Minimum-degree greedy removal; ties broken by smallest index. The
    independence of the result is re-verified before returning.
    """
    return greedy_independent_set_adj(graph.adj)


def greedy_independent_set_adj(adj) -> tuple[int, ...]:
    n = len(adj)
    alive = (1 << n) - 1
    chosen = []
    while alive:
        best_v = -1
        best_d = n + 1
        m = alive
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            d = (adj[v] & alive).bit_count()
            if d < best_d:
                best_d = d
                best_v = v
        chosen.append(best_v)
        alive &= ~(adj[best_v] | (1 << best_v))
    chosen.sort()
    for i, u in enumerate(chosen):
        for v in chosen[i + 1 :]:
            assert not adj[u] >> v & 1, "greedy independent set is not independent"
    return tuple(chosen)


def turan_floor(n_vertices: int, adj) -> int:
    """ceil(|V| / (average degree + 1)); the guaranteed greedy output size."""
    if n_vertices == 0:
        return 0
    avg = Fraction(sum(m.bit_count() for m in adj), n_vertices)
    return ceil(Fraction(n_vertices) / (avg + 1))


@dataclass(frozen=True)
class UniformBoundReport:
    is_uniform: bool
    level: int | None
    bound: Fraction | None
    size: int
    violates: bool

    def as_dict(self):
        return {
            "is_uniform": self.is_uniform,
            "level": self.level,
            "bound": None if self.bound is None else [self.bound.numerator, self.bound.denominator],
            "size": self.size,
            "violates": self.violates,
        }


def uniform_bound_report(fam: Family, k: int) -> UniformBoundReport:
    """Size-vs-(k-1)n/l report for an l-uniform family.

    A violation certifies that k pairwise weakly-crossing members exist
    (checked in tests, not here).
    """
    sizes = {m.bit_count() for m in fam.sets}
    if len(sizes) != 1:
        return UniformBoundReport(False, None, None, len(fam), False)
    level = sizes.pop()
    if level == 0:
        return UniformBoundReport(True, 0, None, len(fam), False)
    bound = Fraction((k - 1) * fam.ground.n, level)
    return UniformBoundReport(True, level, bound, len(fam), len(fam) > bound)
