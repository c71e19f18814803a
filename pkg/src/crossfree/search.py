"""Exact maximum k-cross-free subfamily search and bound tables.

The search is a two-phase branch and bound over the canonical vertex order
of the universe's crossing graph. Phase one computes the optimum size with
aggressive pruning; phase two re-runs include-first DFS pruned against that
optimum, so the first full solution it meets is the lexicographically least
optimum. Both phases are complete, so the result is always proven optimal.

Bound-comparison conventions, used everywhere: counts over the all-subsets
universe include the empty set and the full set; counts over the cyclic
interval universe exclude both.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb

from . import kernel
from .constructions import gen_cyclic_intervals
from .crossing import crossing_graph, find_pairwise_crossing_witness
from .families import Family, GroundSet

MAX_UNIVERSE = 4096


class SearchInfeasibleError(ValueError):
    pass


@dataclass(frozen=True)
class SearchResult:
    best: Family
    size: int
    proven_optimal: bool
    nodes_explored: int
    elapsed: float


def _level_caps(universe: Family, k: int, mode: str) -> dict[int, int]:
    """Admissible per-cardinality caps on any k-cross-free selection.

    Two distinct size-l sets sharing an element weakly-cross, and cross
    strictly when l < n/2, so each element lies in at most k-1 of them;
    summing over elements caps the level at (k-1)n/l.
    """
    n = universe.ground.n
    caps = {}
    for level in range(1, n):
        if mode == "weak" or 2 * level < n:
            caps[level] = (k - 1) * n // level
    return caps


def _greedy_clique_cover(adj, cand: int):
    """Disjoint cliques covering cand; greedy from the lowest vertex."""
    cliques = []
    m = cand
    while m:
        low = m & -m
        v = low.bit_length() - 1
        clique = low
        ext = m & adj[v]
        while ext:
            lo2 = ext & -ext
            u = lo2.bit_length() - 1
            clique |= lo2
            ext &= adj[u]
        m &= ~clique
        cliques.append(clique)
    return cliques


def _cover_bound(adj, cand: int, k: int) -> int:
    """Any k-clique-free selection takes at most min(|Q|, k-1) per clique."""
    return sum(min(q.bit_count(), k - 1) for q in _greedy_clique_cover(adj, cand))


def max_cross_free(universe: Family, k: int, mode: str) -> SearchResult:
    """Exact maximum-size subfamily with no k pairwise-crossing members.

    Deterministic: the optimum value is unique and the returned family is
    the lexicographically least optimum under canonical order.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if len(universe) > MAX_UNIVERSE:
        raise SearchInfeasibleError(f"universe of {len(universe)} sets exceeds {MAX_UNIVERSE}")
    start = time.perf_counter()
    graph = crossing_graph(universe, mode)
    adj = graph.adj
    sets = universe.sets
    nverts = len(sets)
    caps = _level_caps(universe, k, mode)
    levels = tuple(m.bit_count() for m in sets)
    nodes = 0

    def level_bound(chosen_per_level, cand: int) -> int:
        total = 0
        avail: dict[int, int] = {}
        m = cand
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            avail[levels[v]] = avail.get(levels[v], 0) + 1
        for lvl, cnt in avail.items():
            cap = caps.get(lvl)
            if cap is None:
                total += cnt
            else:
                total += min(cnt, max(0, cap - chosen_per_level.get(lvl, 0)))
        return total

    def admissible_extension(chosen_mask: int, v: int) -> bool:
        # v may join iff its crossing neighbors among chosen hold no
        # (k-1)-clique.
        return kernel.find_k_clique_in(adj, chosen_mask & adj[v], k - 1) is None

    def search(target: int | None):
        """target=None: maximize. target=m: find lex-least of size m."""
        nonlocal nodes
        best_size = -1
        best_sel: tuple[int, ...] = ()
        chosen: list[int] = []
        chosen_per_level: dict[int, int] = {}

        def dfs(next_v: int, chosen_mask: int, cand: int) -> bool:
            nonlocal best_size, best_sel, nodes
            nodes += 1
            count = len(chosen)
            ub = count + min(
                _cover_bound(adj, cand, k), level_bound(chosen_per_level, cand)
            )
            if target is None:
                if ub <= best_size:
                    return False
            else:
                if ub < target:
                    return False
            if not cand:
                if count > best_size:
                    best_size = count
                    best_sel = tuple(chosen)
                return target is not None and count >= target
            low = cand & -cand
            v = low.bit_length() - 1
            rest = cand ^ low
            # Include v.
            new_cand = 0
            m = rest
            nm = chosen_mask | low
            while m:
                l2 = m & -m
                u = l2.bit_length() - 1
                m ^= l2
                if kernel.find_k_clique_in(adj, nm & adj[u], k - 1) is None:
                    new_cand |= l2
            chosen.append(v)
            chosen_per_level[levels[v]] = chosen_per_level.get(levels[v], 0) + 1
            done = dfs(v + 1, nm, new_cand)
            chosen.pop()
            chosen_per_level[levels[v]] -= 1
            if done:
                return True
            # Exclude v.
            return dfs(v + 1, chosen_mask, rest)

        full = (1 << nverts) - 1
        # Initial candidate filter: singletons are always admissible.
        dfs(0, 0, full)
        return best_size, best_sel

    opt, _ = search(None)
    _, sel = search(opt)
    best = Family(universe.ground, tuple(sets[i] for i in sel))
    assert len(best) == opt
    assert find_pairwise_crossing_witness(best, k, mode) is None if opt >= k else True
    elapsed = time.perf_counter() - start
    return SearchResult(best, opt, True, nodes, elapsed)


def brute_force_max(universe: Family, k: int, mode: str) -> int:
    """Independent oracle: enumerate subfamilies by descending size."""
    from itertools import combinations

    graph = crossing_graph(universe, mode)
    adj = graph.adj
    nverts = len(universe)
    for size in range(nverts, -1, -1):
        for combo in combinations(range(nverts), size):
            m = 0
            for v in combo:
                m |= 1 << v
            if kernel.find_k_clique_in(adj, m, k) is None:
                return size
    return 0


# --- bound tables -----------------------------------------------------------


@dataclass(frozen=True)
class BoundRow:
    n: int
    k: int
    universe: str
    mode: str
    exact: int
    formula: int | None
    formula_name: str
    tight: str  # "yes" | "no" | "N/A"


def _formula_for(universe: str, mode: str, k: int, n: int) -> tuple[int | None, str]:
    if universe == "all" and mode == "weak" and k == 2:
        return 2 * n, "laminar 2n"
    if universe == "all" and mode == "strict" and k == 2:
        return 4 * n - 2, "2-cross-free 4n-2"
    if universe == "all" and mode == "strict" and k == 3:
        return 8 * n - 20, "8n-20"
    if universe == "intervals" and mode == "strict":
        return 4 * (k - 1) * n - 2 * comb(2 * k - 1, 2), "interval bound"
    return None, "-"


def _universe_family(universe: str, n: int) -> Family:
    if universe == "all":
        if n > 5:
            raise SearchInfeasibleError("all-subsets universe is limited to n <= 5")
        ground = GroundSet(n)
        return Family(ground, tuple(range(1 << n)))
    if universe == "intervals":
        if n > 8:
            raise SearchInfeasibleError("interval universe is limited to n <= 8")
        return gen_cyclic_intervals(n, include_trivial=False)
    raise ValueError(f"unknown universe {universe!r}")


def bound_table(n_values, k_values, universes, mode: str) -> list[BoundRow]:
    """Exact values next to the closed-form bounds, one row per (n, k, universe)."""
    rows = []
    for n in n_values:
        for k in k_values:
            for universe in universes:
                fam = _universe_family(universe, n)
                result = max_cross_free(fam, k, mode)
                formula, name = _formula_for(universe, mode, k, n)
                if formula is None or result.size > formula:
                    tight = "N/A"
                else:
                    tight = "yes" if result.size == formula else "no"
                rows.append(
                    BoundRow(n, k, universe, mode, result.size, formula, name, tight)
                )
    return rows


def format_table_text(rows) -> str:
    headers = ("n", "k", "universe", "mode", "exact", "formula", "formula_name", "tight")
    grid = [headers] + [
        (
            str(r.n),
            str(r.k),
            r.universe,
            r.mode,
            str(r.exact),
            "-" if r.formula is None else str(r.formula),
            r.formula_name,
            r.tight,
        )
        for r in rows
    ]
    widths = [max(len(row[i]) for row in grid) for i in range(len(headers))]
    lines = [
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        for row in grid
    ]
    return "\n".join(lines) + "\n"


def format_table_csv(rows) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "k", "universe", "mode", "exact", "formula", "formula_name", "tight"])
    for r in rows:
        writer.writerow(
            [r.n, r.k, r.universe, r.mode, r.exact, "" if r.formula is None else r.formula, r.formula_name, r.tight]
        )
    return buf.getvalue()
