"""P-chains as reachability in a digraph of length-2 steps.

A P-chain is a sequence decreasing in the poset where each step is weakly
preferred by some member. Chains concatenate, so it is enough to record
the single steps as edges and ask reachability questions. The definition
lets a sequence repeat elements, but by antisymmetry repeats are adjacent
and form self-loop steps, which are never strict; dropping them changes
nothing, so simple paths (and BFS) suffice.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import NotComparable
from .poset import Poset, bits, dual
from .preference import Profile, _same_ground


@dataclass(frozen=True)
class ChainDigraph:
    poset: Poset
    edges: tuple[int, ...]
    strict: tuple[int, ...]

    @property
    def elements(self) -> tuple[str, ...]:
        return self.poset.elements

    def edge_list(self) -> list[tuple[str, str, bool]]:
        e = self.elements
        return [(e[a], e[b], bool(self.strict[a] >> b & 1)) for a in range(len(e)) for b in bits(self.edges[a])]


def chain_steps(geq_rows, rank_lists):
    """Weak and strict step rows for a profile given as raw rank vectors."""
    n = len(geq_rows)
    weak = [0] * n
    strict = [0] * n
    for a in range(n):
        for b in bits(geq_rows[a]):
            for r in rank_lists:
                if r[a] < r[b]:
                    weak[a] |= 1 << b
                    strict[a] |= 1 << b
                    break
                if r[a] == r[b]:
                    weak[a] |= 1 << b
    return weak, strict


def build_chain_digraph(P: Profile, p: Poset) -> ChainDigraph:
    _same_ground(p, *P.members)
    weak, strict = chain_steps(p.rows, P.rank_lists())
    return ChainDigraph(p, tuple(weak), tuple(strict))


def _check(g: ChainDigraph, a: str, b: str) -> tuple[int, int]:
    i, j = g.poset.index(a), g.poset.index(b)
    if not g.poset.has(i, j):
        raise NotComparable(a, b)
    return i, j


def _reach(edges, start: int) -> int:
    seen = 1 << start
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            new = edges[u] & ~seen
            seen |= new
            nxt.extend(bits(new))
        frontier = nxt
    return seen


def _strict_reach(edges, strict, start: int) -> int:
    """Nodes reachable from ``start`` along a walk using at least one strict edge.

    Layered search over (node, strict-seen) states.
    """
    plain = 1 << start
    marked = 0
    queue = deque([(start, 0)])
    while queue:
        u, flag = queue.popleft()
        for v in bits(edges[u]):
            f = 1 if flag or strict[u] >> v & 1 else 0
            if f:
                if not marked >> v & 1:
                    marked |= 1 << v
                    queue.append((v, 1))
            elif not plain >> v & 1:
                plain |= 1 << v
                queue.append((v, 0))
    return marked


def has_p_chain(g: ChainDigraph, a: str, b: str) -> bool:
    i, j = _check(g, a, b)
    return bool(_reach(g.edges, i) >> j & 1)


def has_strict_p_chain(g: ChainDigraph, a: str, b: str) -> bool:
    i, j = _check(g, a, b)
    return bool(_strict_reach(g.edges, g.strict, i) >> j & 1)


def reach_rows(g: ChainDigraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(weak, strict) reachability rows for every start node."""
    n = len(g.edges)
    return (
        tuple(_reach(g.edges, i) for i in range(n)),
        tuple(_strict_reach(g.edges, g.strict, i) for i in range(n)),
    )


def has_reverse_p_chain(P: Profile, p: Poset, a: str, b: str, strict: bool = False) -> bool:
    """Chain from ``a`` up to ``b`` where each step is weakly preferred downward by some member.

    Answered as the forward query on the dual order.
    """
    g = build_chain_digraph(P, dual(p))
    return has_strict_p_chain(g, a, b) if strict else has_p_chain(g, a, b)


def witness_chain(g: ChainDigraph, a: str, b: str, strict: bool = False) -> tuple[str, ...] | None:
    """Shortest witnessing sequence by BFS, neighbours visited in index order."""
    i, j = _check(g, a, b)
    start = (i, 0)
    goal = (j, 1 if strict else 0)
    if not strict and i == j:
        return (a,)
    parent = {start: None}
    queue = deque([start])
    found = None
    while queue:
        state = queue.popleft()
        u, flag = state
        if state == goal or (not strict and u == j):
            found = state
            break
        for v in bits(g.edges[u]):
            if v == u:
                continue
            nxt = (v, 1 if flag or g.strict[u] >> v & 1 else 0)
            if nxt not in parent:
                parent[nxt] = state
                queue.append(nxt)
    if found is None:
        return None
    path = []
    state = found
    while state is not None:
        path.append(g.elements[state[0]])
        state = parent[state]
    return tuple(reversed(path))


def is_p_chain(seq, P: Profile, p: Poset, strict: bool = False) -> bool:
    """Check a sequence directly against the definition (used to re-validate witnesses)."""
    if not seq:
        return False
    idx = [p.index(s) for s in seq]
    some_strict = False
    for u, v in zip(idx, idx[1:]):
        if not p.has(u, v):
            return False
        if not any(r[u] <= r[v] for r in P.rank_lists()):
            return False
        some_strict = some_strict or any(r[u] < r[v] for r in P.rank_lists())
    return some_strict or not strict
