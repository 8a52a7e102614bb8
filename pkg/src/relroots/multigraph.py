"""Loopless undirected multigraphs and their structural queries.

A :class:`Multigraph` stores parallel edges as a single (u, v, mult) entry
per vertex pair with u < v.  Everything here is immutable and pure, so
values can be shared freely between threads.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DisconnectedGraphError, InputError

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class Multigraph:
    """Loopless multigraph on vertices 0..n-1 with positive edge multiplicities."""

    n: int
    edges: tuple[Edge, ...]
    m: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "m", sum(mult for _, _, mult in self.edges))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Multigraph":
        """Build a normalized multigraph, merging parallel (u, v) entries.

        Raises :class:`InputError` on loops, out-of-range vertex ids or
        non-positive multiplicities.
        """
        if n < 0:
            raise InputError(f"vertex count must be nonnegative, got {n}")
        merged: dict[tuple[int, int], int] = {}
        for entry in edges:
            if len(entry) == 3:
                u, v, mult = entry
            elif len(entry) == 2:
                u, v = entry
                mult = 1
            else:
                raise InputError(f"edge entry must be [u, v, mult], got {entry!r}")
            if not all(isinstance(x, int) for x in (u, v, mult)):
                raise InputError(f"edge entry must contain integers, got {entry!r}")
            if u == v:
                raise InputError(f"loop edge at vertex {u} is not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
            if mult < 1:
                raise InputError(f"edge ({u}, {v}) has multiplicity {mult} < 1")
            key = (u, v) if u < v else (v, u)
            merged[key] = merged.get(key, 0) + mult
        norm = tuple((u, v, mult) for (u, v), mult in sorted(merged.items()))
        return cls(n=n, edges=norm)

    @property
    def pair_count(self) -> int:
        """Number of distinct adjacent vertex pairs (bundles)."""
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(mult for a, b, mult in self.edges if a == v or b == v)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v, mult in self.edges:
            deg[u] += mult
            deg[v] += mult
        return deg

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Adjacency lists of (neighbour, multiplicity)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, mult in self.edges:
            adj[u].append((v, mult))
            adj[v].append((u, mult))
        return adj

    def multiplicity(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        for a, b, mult in self.edges:
            if (a, b) == key:
                return mult
        return 0

    def is_simple(self) -> bool:
        return all(mult == 1 for _, _, mult in self.edges)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [[u, v, mult] for u, v, mult in self.edges]})

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"Multigraph(n={self.n}, m={self.m}, pairs={self.pair_count})"


def parse_graph(text: str) -> Multigraph:
    """Parse the graph wire format ``{"n": int, "edges": [[u, v, mult], ...]}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed graph JSON: {exc}") from exc
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise InputError('graph JSON must be an object with keys "n" and "edges"')
    n = doc["n"]
    if not isinstance(n, int):
        raise InputError(f'"n" must be an integer, got {n!r}')
    if not isinstance(doc["edges"], list):
        raise InputError('"edges" must be a list of [u, v, mult] triples')
    return Multigraph.from_edges(n, doc["edges"])


def is_connected(g: Multigraph) -> bool:
    """True iff every vertex is reachable from vertex 0 (n = 1 counts as connected)."""
    if g.n == 0:
        raise InputError("connectivity of the empty graph is undefined")
    if g.n == 1:
        return True
    adj = g.adjacency()
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for v, _ in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count == g.n


def _require_connected(g: Multigraph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError("operation requires a connected graph")


@dataclass(frozen=True)
class Block:
    """A biconnected component, relabelled to 0..n_B-1.

    ``vertices[i]`` is the label in the parent graph of block vertex ``i``.
    """

    graph: Multigraph
    vertices: tuple[int, ...]


def blocks(g: Multigraph) -> list[Block]:
    """Biconnected components of a connected multigraph.

    A bridge pair with multiplicity k becomes a 2-vertex block carrying the
    whole bundle; parallel edges never split across blocks.
    """
    _require_connected(g)
    if g.n == 1:
        return []

    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]  # (neighbour, pair index)
    for idx, (u, v, _) in enumerate(g.edges):
        adj[u].append((v, idx))
        adj[v].append((u, idx))

    disc = [-1] * g.n
    low = [0] * g.n
    edge_stack: list[int] = []
    out: list[Block] = []
    timer = 0

    def emit(upto: int) -> None:
        group: list[int] = []
        while True:
            idx = edge_stack.pop()
            group.append(idx)
            if idx == upto:
                break
        verts: list[int] = []
        index_of: dict[int, int] = {}
        for idx in group:
            for x in g.edges[idx][:2]:
                if x not in index_of:
                    index_of[x] = len(verts)
                    verts.append(x)
        sub = Multigraph.from_edges(
            len(verts),
            [(index_of[g.edges[i][0]], index_of[g.edges[i][1]], g.edges[i][2]) for i in group],
        )
        out.append(Block(graph=sub, vertices=tuple(verts)))

    # Iterative Tarjan so deep paths in large substituted graphs don't blow the
    # recursion limit.
    for root in range(g.n):
        if disc[root] != -1:
            continue
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]  # (vertex, parent pair idx, next child pos)
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            u, pidx, pos = stack[-1]
            if pos < len(adj[u]):
                stack[-1] = (u, pidx, pos + 1)
                v, eidx = adj[u][pos]
                if eidx == pidx:
                    continue
                if disc[v] == -1:
                    edge_stack.append(eidx)
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append((v, eidx, 0))
                elif disc[v] < disc[u]:
                    edge_stack.append(eidx)
                    low[u] = min(low[u], disc[v])
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[u])
                    if low[u] >= disc[parent]:
                        emit(pidx)
    return out


def edge_connectivity(g: Multigraph, *, upper_bound: int | None = None,
                      targets: Iterable[int] | None = None) -> int:
    """Minimum number of single edges (with multiplicity) whose removal disconnects g.

    Computed as the minimum s-t max-flow from vertex 0 to every other vertex,
    with edge capacities equal to multiplicities.  ``upper_bound`` caps each
    flow computation (useful when a vertex of that degree is known to exist);
    ``targets`` restricts the sweep, in which case the result is only an upper
    bound certified to be >= min(true connectivity, upper_bound) on the
    sampled pairs.
    """
    if g.n < 2:
        raise InputError("edge connectivity needs at least two vertices")
    _require_connected(g)

    # Static arc arrays; capacities are reset for every target.
    head: list[int] = []
    to: list[int] = []
    nxt: list[int] = [-1] * 0
    first = [-1] * g.n
    caps0: list[int] = []

    def add_arc(u: int, v: int, c: int) -> None:
        to.append(v)
        caps0.append(c)
        nxt.append(first[u])
        first[u] = len(to) - 1

    for u, v, mult in g.edges:
        add_arc(u, v, mult)
        add_arc(v, u, mult)

    best: int | None = None
    target_list = list(targets) if targets is not None else list(range(1, g.n))
    for t in target_list:
        if t == 0:
            continue
        stop = upper_bound if upper_bound is not None else None
        if best is not None:
            stop = best if stop is None else min(stop, best)
        flow = _max_flow(first, to, nxt, caps0, 0, t, stop)
        best = flow if best is None else min(best, flow)
        if best == 0:
            break
    assert best is not None
    return best


def _max_flow(first: list[int], to: list[int], nxt: list[int], caps0: list[int],
              s: int, t: int, stop_at: int | None) -> int:
    """BFS augmenting-path max flow, stopping early once ``stop_at`` is reached."""
    caps = list(caps0)
    n = len(first)
    flow = 0
    while stop_at is None or flow < stop_at:
        parent_arc = [-1] * n
        parent_arc[s] = -2
        q = deque([s])
        while q and parent_arc[t] == -1:
            u = q.popleft()
            a = first[u]
            while a != -1:
                v = to[a]
                if parent_arc[v] == -1 and caps[a] > 0:
                    parent_arc[v] = a
                    q.append(v)
                a = nxt[a]
        if parent_arc[t] == -1:
            break
        # Bottleneck along the path; arcs are paired (a ^ 1 is the reverse).
        bottleneck = None
        v = t
        while v != s:
            a = parent_arc[v]
            bottleneck = caps[a] if bottleneck is None else min(bottleneck, caps[a])
            v = to[a ^ 1]
        if stop_at is not None:
            bottleneck = min(bottleneck, stop_at - flow)
        v = t
        while v != s:
            a = parent_arc[v]
            caps[a] -= bottleneck
            caps[a ^ 1] += bottleneck
            v = to[a ^ 1]
        flow += bottleneck
    return flow


def spanning_tree_count(g: Multigraph) -> int:
    """Number of spanning trees via the determinant of a reduced Laplacian.

    Exact over Python integers, so safe as an independent oracle for H(1).
    """
    _require_connected(g)
    if g.n == 1:
        return 1
    size = g.n - 1
    lap = [[0] * size for _ in range(size)]
    for u, v, mult in g.edges:
        if u > 0:
            lap[u - 1][u - 1] += mult
        if v > 0:
            lap[v - 1][v - 1] += mult
        if u > 0 and v > 0:
            lap[u - 1][v - 1] -= mult
            lap[v - 1][u - 1] -= mult
    return int_det(lap)


def int_det(matrix: list[list[int]]) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def bundle_replace(g: Multigraph, k: int) -> Multigraph:
    """Replace every edge with a bundle of k parallel edges (multiplicities scale by k)."""
    if k < 1:
        raise InputError(f"bundle factor must be >= 1, got {k}")
    return Multigraph(n=g.n, edges=tuple((u, v, mult * k) for u, v, mult in g.edges))
