"""Critical configurations of the chip-firing game with a designated sink.

The H-vector of the cographic matroid counts critical configurations by the
degree of their associated monomials, which gives a route to H that is
independent of the F-vector transform.  Recurrence is decided by the
burning criterion: fire the sink once and require the cascade to fire every
other vertex exactly once.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import GuardExceededError, InputError
from .multigraph import Multigraph, is_connected
from .polynomials import HVector

DEFAULT_STATE_GUARD = 1 << 24


@dataclass(frozen=True)
class Configuration:
    """Chip counts per vertex; the sink holds minus the total of the others."""

    theta: tuple[int, ...]
    sink: int

    def is_stable(self, degrees: list[int]) -> bool:
        return all(self.theta[v] < degrees[v]
                   for v in range(len(self.theta)) if v != self.sink)


@dataclass(frozen=True)
class CriticalMonomial:
    """Exponent of x_v is deg(v)-1-theta(v) for v != sink (0 at the sink slot)."""

    exponents: tuple[int, ...]
    sink: int

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def support(self) -> int:
        """Number of variables dividing the monomial."""
        return sum(1 for e in self.exponents if e > 0)

    def divides(self, other: "CriticalMonomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))


def _validate(g: Multigraph, sink: int) -> None:
    if g.n < 2:
        raise InputError("chip firing needs at least two vertices")
    if not (0 <= sink < g.n):
        raise InputError(f"sink {sink} outside 0..{g.n - 1}")
    if not is_connected(g):
        raise InputError("chip firing requires a connected graph")


def _mult_matrix(g: Multigraph) -> list[list[int]]:
    lam = [[0] * g.n for _ in range(g.n)]
    for u, v, mult in g.edges:
        lam[u][v] = mult
        lam[v][u] = mult
    return lam


def _burns(theta: tuple[int, ...], sink: int, lam: list[list[int]],
           degrees: list[int], n: int) -> bool:
    """Burning criterion: after firing the sink, every vertex fires exactly once."""
    chips = list(theta)
    for v in range(n):
        chips[v] += lam[sink][v]
    fired = [False] * n
    fired[sink] = True
    ready = [v for v in range(n) if not fired[v] and chips[v] >= degrees[v]]
    count = 1
    while ready:
        u = ready.pop()
        if fired[u]:
            continue
        fired[u] = True
        count += 1
        for v in range(n):
            if lam[u][v] and not fired[v]:
                chips[v] += lam[u][v]
                if chips[v] >= degrees[v]:
                    ready.append(v)
    return count == n


def critical_configs(g: Multigraph, sink: int,
                     state_guard: int = DEFAULT_STATE_GUARD) -> list[Configuration]:
    """All critical (stable and recurrent) configurations with the given sink.

    Scans the product space prod_v {0..deg(v)-1} of stable configurations and
    filters by the burning criterion; exponential in n, intended for
    gadget-sized graphs.
    """
    _validate(g, sink)
    degrees = g.degrees()
    lam = _mult_matrix(g)
    others = [v for v in range(g.n) if v != sink]
    states = 1
    for v in others:
        states *= degrees[v]
    if states > state_guard:
        raise GuardExceededError(f"{states} stable configurations exceed the guard {state_guard}")

    out: list[Configuration] = []
    for values in product(*(range(degrees[v]) for v in others)):
        theta = [0] * g.n
        for v, val in zip(others, values):
            theta[v] = val
        theta[sink] = -sum(values)
        tup = tuple(theta)
        if _burns(tup, sink, lam, degrees, g.n):
            out.append(Configuration(theta=tup, sink=sink))
    return out


def monomials_of(configs: list[Configuration], g: Multigraph) -> list[CriticalMonomial]:
    degrees = g.degrees()
    out = []
    for cfg in configs:
        expo = tuple(0 if v == cfg.sink else degrees[v] - 1 - cfg.theta[v]
                     for v in range(g.n))
        out.append(CriticalMonomial(exponents=expo, sink=cfg.sink))
    return out


def h_vector_chip(g: Multigraph, sink: int,
                  state_guard: int = DEFAULT_STATE_GUARD) -> HVector:
    """H-vector from the chip-firing game: H_i = number of critical monomials of degree i.

    The scan is vectorized: all stable configurations burn simultaneously,
    one synchronous firing round per pass (the abelian property makes the
    firing order irrelevant).
    """
    _validate(g, sink)
    degrees = g.degrees()
    others = [v for v in range(g.n) if v != sink]
    states = 1
    for v in others:
        states *= degrees[v]
    if states > state_guard:
        raise GuardExceededError(f"{states} stable configurations exceed the guard {state_guard}")

    deg_o = np.array([degrees[v] for v in others], dtype=np.int32)
    lam_full = _mult_matrix(g)
    lam_sub = np.array([[lam_full[u][v] for v in others] for u in others], dtype=np.int32)
    sink_row = np.array([lam_full[sink][v] for v in others], dtype=np.int32)

    grids = np.meshgrid(*[np.arange(d, dtype=np.int32) for d in deg_o], indexing="ij")
    theta = np.stack([a.reshape(-1) for a in grids], axis=1)  # states x (n-1)

    chips = theta + sink_row
    fired = np.zeros_like(chips, dtype=bool)
    transfer = (lam_sub - np.diag(deg_o)).astype(np.int32)
    while True:
        ready = (chips >= deg_o) & ~fired
        if not ready.any():
            break
        chips = chips + ready.astype(np.int32) @ transfer
        fired |= ready
    critical = fired.all(axis=1)

    mono_deg = ((deg_o - 1) - theta[critical]).sum(axis=1, dtype=np.int64)
    top = g.m - g.n + 1
    counts = np.bincount(mono_deg, minlength=top + 1)
    if len(counts) > top + 1:
        raise InputError("monomial degree exceeded m-n+1; inconsistent input graph")
    return HVector(values=tuple(int(c) for c in counts), n=g.n, m=g.m)


def recurrent_by_firing_search(g: Multigraph, theta: Configuration,
                               state_guard: int = DEFAULT_STATE_GUARD) -> bool:
    """Definition-faithful recurrence test: breadth-first search over legal
    firing sequences looking for a nontrivial return to ``theta``.

    A non-sink vertex is ready when it holds at least deg(v) chips; the sink
    is ready only when nothing else is.  Reachable chip totals are bounded,
    so the search space is finite.  Exponential; for cross-checking the
    burning criterion on tiny graphs.
    """
    _validate(g, theta.sink)
    degrees = g.degrees()
    lam = _mult_matrix(g)
    sink = theta.sink
    others = [v for v in range(g.n) if v != sink]
    start = tuple(theta.theta[v] for v in others)

    def successors(state: tuple[int, ...]) -> list[tuple[int, ...]]:
        ready = [i for i, v in enumerate(others) if state[i] >= degrees[v]]
        nxt = []
        if ready:
            for i in ready:
                u = others[i]
                new = list(state)
                new[i] -= degrees[u]
                for j, v in enumerate(others):
                    if v != u:
                        new[j] += lam[u][v]
                nxt.append(tuple(new))
        else:
            new = list(state)
            for j, v in enumerate(others):
                new[j] += lam[sink][v]
            nxt.append(tuple(new))
        return nxt

    seen = {start}
    frontier = deque(successors(start))
    visited = 0
    while frontier:
        state = frontier.popleft()
        if state == start:
            return True
        if state in seen:
            continue
        seen.add(state)
        visited += 1
        if visited > state_guard:
            raise GuardExceededError("firing-sequence search exceeded the state guard")
        frontier.extend(successors(state))
    return False


@dataclass
class IdealReport:
    """Outcome of the order-ideal structure checks on a set of critical monomials."""

    closed_under_division: bool
    pure: bool
    top_degree: int
    expected_top_degree: int
    support_bound_applies: bool
    support_bound_holds: bool
    max_support: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return (self.closed_under_division and self.pure
                and self.top_degree == self.expected_top_degree
                and (self.support_bound_holds or not self.support_bound_applies))


def ideal_check(monomials: list[CriticalMonomial], g: Multigraph) -> IdealReport:
    """Check that the critical monomials form a pure order ideal.

    Verifies (a) closure under division, (b) that all maximal monomials have
    degree m-n+1, and (c) when the sink has no incident multiple edges and
    n >= 3, that every monomial is divisible by at most n-2 variables.
    """
    violations: list[str] = []
    expo_set = {mono.exponents for mono in monomials}
    n = g.n
    m = g.m
    sink = monomials[0].sink if monomials else 0

    closed = True
    for mono in monomials:
        for v, e in enumerate(mono.exponents):
            if e > 0:
                lower = list(mono.exponents)
                lower[v] -= 1
                if tuple(lower) not in expo_set:
                    closed = False
                    violations.append(f"divisor of {mono.exponents} at x_{v} missing")

    top = max((mono.degree for mono in monomials), default=0)
    pure = True
    for mono in monomials:
        is_maximal = not any(
            mono.exponents != other and all(a <= b for a, b in zip(mono.exponents, other))
            for other in expo_set)
        if is_maximal and mono.degree != m - n + 1:
            pure = False
            violations.append(f"maximal monomial {mono.exponents} has degree {mono.degree}")

    sink_simple = all(mult == 1 for u, v, mult in g.edges if sink in (u, v))
    applies = sink_simple and n >= 3
    max_support = max((mono.support() for mono in monomials), default=0)
    support_ok = max_support <= n - 2 if applies else True
    if applies and not support_ok:
        violations.append(f"monomial with support {max_support} > n-2 = {n - 2}")

    return IdealReport(
        closed_under_division=closed,
        pure=pure,
        top_degree=top,
        expected_top_degree=m - n + 1,
        support_bound_applies=applies,
        support_bound_holds=support_ok,
        max_support=max_support,
        violations=violations,
    )
