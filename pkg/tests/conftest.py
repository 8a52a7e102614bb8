"""Shared graph generators and independent oracles.

The oracles here deliberately avoid the package's enumeration code paths:
reliability is recomputed over subsets of *individual* edges (bundles
expanded) with a local union-find and local polynomial arithmetic, so a
bug in the per-bundle weighting cannot hide itself.
"""

from __future__ import annotations

import random
from fractions import Fraction

from relroots import Multigraph, RatPoly, blocks


def random_connected_multigraph(rng: random.Random, max_m: int = 14,
                                max_n: int = 7) -> Multigraph:
    while True:
        n = rng.randint(2, max_n)
        max_pairs = n * (n - 1) // 2
        pair_budget = rng.randint(n - 1, min(12, max_pairs))
        pairs = {}
        for v in range(1, n):
            pairs[(rng.randrange(v), v)] = 1
        while len(pairs) < pair_budget:
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                pairs[(min(u, v), max(u, v))] = 1
        edges = [(u, v, rng.choice([1, 1, 1, 2, 3])) for (u, v) in pairs]
        if sum(e[2] for e in edges) <= max_m:
            return Multigraph.from_edges(n, edges)


def random_2connected_multigraph(rng: random.Random, max_m: int = 14,
                                 max_n: int = 8) -> Multigraph:
    while True:
        n = rng.randint(2, max_n)
        if n == 2:
            g = Multigraph.from_edges(2, [(0, 1, rng.randint(1, max_m))])
            return g
        max_pairs = n * (n - 1) // 2
        pair_budget = rng.randint(n, min(12, max_pairs))
        pairs = {}
        for v in range(1, n):
            pairs[(rng.randrange(v), v)] = 1
        while len(pairs) < pair_budget:
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                pairs[(min(u, v), max(u, v))] = 1
        edges = [(u, v, rng.choice([1, 1, 1, 2, 3])) for (u, v) in pairs]
        if sum(e[2] for e in edges) > max_m:
            continue
        g = Multigraph.from_edges(n, edges)
        if len(blocks(g)) == 1:
            return g


def complete_graph(n: int) -> Multigraph:
    return Multigraph.from_edges(n, [(i, j, 1) for i in range(n) for j in range(i + 1, n)])


def complete_minus_edge_graph(n: int) -> Multigraph:
    """K_n with the (0,1) edge removed."""
    return Multigraph.from_edges(
        n, [(i, j, 1) for i in range(n) for j in range(i + 1, n) if (i, j) != (0, 1)])


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _components(n: int, live_edges) -> dict[int, list[int]]:
    parent = list(range(n))
    for u, v in live_edges:
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            parent[rv] = ru
    comps: dict[int, list[int]] = {}
    for v in range(n):
        comps.setdefault(_find(parent, v), []).append(v)
    return comps


def _expand_edges(g: Multigraph) -> list[tuple[int, int]]:
    out = []
    for u, v, mult in g.edges:
        out.extend([(u, v)] * mult)
    return out


def oracle_rel(g: Multigraph) -> RatPoly:
    """Reliability by raw enumeration over subsets of individual edges."""
    units = _expand_edges(g)
    m = len(units)
    assert m <= 18, "oracle meant for tiny graphs"
    counts = [0] * (m + 1)
    for mask in range(1 << m):
        live = [units[i] for i in range(m) if mask >> i & 1]
        if len(_components(g.n, live)) == 1:
            counts[m - len(live)] += 1
    return _from_state_counts(counts, m)


def oracle_sprel(g: Multigraph, targets) -> RatPoly:
    """Split reliability by raw enumeration over subsets of individual edges."""
    units = _expand_edges(g)
    m = len(units)
    assert m <= 18, "oracle meant for tiny graphs"
    target_set = set(targets)
    counts = [0] * (m + 1)
    for mask in range(1 << m):
        live = [units[i] for i in range(m) if mask >> i & 1]
        comps = _components(g.n, live)
        if all(sum(1 for v in comp if v in target_set) == 1 for comp in comps.values()):
            counts[m - len(live)] += 1
    return _from_state_counts(counts, m)


def _from_state_counts(counts, m: int) -> RatPoly:
    """sum_i counts[i] q^i (1-q)^(m-i), with local polynomial arithmetic."""
    total = [Fraction(0)] * (m + 1)
    for i, c in enumerate(counts):
        if not c:
            continue
        # (1-q)^(m-i) by direct binomial expansion
        term = [Fraction(0)] * (m + 1)
        for j in range(m - i + 1):
            term[i + j] += c * _binom(m - i, j) * (-1) ** j
        for d in range(m + 1):
            total[d] += term[d]
    return RatPoly(total)


def _binom(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def oracle_spanning_trees(g: Multigraph) -> int:
    """Count spanning trees by enumerating (n-1)-subsets of individual edges."""
    from itertools import combinations

    units = _expand_edges(g)
    if g.n == 1:
        return 1
    count = 0
    for subset in combinations(range(len(units)), g.n - 1):
        live = [units[i] for i in subset]
        if len(_components(g.n, live)) == 1:
            count += 1
    return count
