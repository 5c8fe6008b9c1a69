"""Detectors for crowns, diamonds, chalices, weak cycles, small forbidden subposets and forks.

Every detector scans candidates in lexicographic index order and returns
the first hit, so results are deterministic for a fixed element listing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterator

from .poset import Poset, Relation, bits, transitive_reduction

UP_FORK = "up_fork"
DOWN_FORK = "down_fork"
SHATTERED_UP_FORK = "shattered_up_fork"
SHATTERED_DOWN_FORK = "shattered_down_fork"
NEITHER = "neither"


def _names(p: Relation, idx) -> tuple[str, ...]:
    return tuple(p.elements[i] for i in idx)


def _incomparable(p: Poset, i: int, j: int) -> bool:
    return not p.comparable(i, j)


def iter_crowns(p: Poset, min_length: int = 4) -> Iterator[tuple[int, ...]]:
    """All crowns as index tuples, shortest first.

    Odd positions (1-based) are tops, even positions bottoms:
    a1 > a2 < a3 > a4 ... < a1, and non-adjacent members are incomparable.
    Each crown appears once per rotation and reflection that starts on a top.
    """
    n = p.n
    strict = p.strict_rows()
    start = max(4, min_length + (min_length % 2))
    for size in range(start, n + 1, 2):
        seq: list[int] = []

        def extend() -> Iterator[tuple[int, ...]]:
            k = len(seq)
            if k == size:
                # closing edge: last bottom sits below the first top
                if strict[seq[0]] >> seq[-1] & 1:
                    yield tuple(seq)
                return
            prev = seq[-1]
            for c in range(n):
                if c in seq:
                    continue
                if k % 2 == 1:  # c is a bottom below prev
                    if not strict[prev] >> c & 1:
                        continue
                else:  # c is a top above prev
                    if not strict[c] >> prev & 1:
                        continue
                ok = True
                for t, other in enumerate(seq[:-1]):
                    adjacent_to_first = t == 0 and k == size - 1
                    if adjacent_to_first:
                        continue
                    if p.comparable(c, other):
                        ok = False
                        break
                if not ok:
                    continue
                seq.append(c)
                yield from extend()
                seq.pop()

        for a in range(n):
            seq.append(a)
            yield from extend()
            seq.pop()


def find_crown(p: Poset, min_length: int = 4) -> tuple[str, ...] | None:
    for crown in iter_crowns(p, min_length):
        return _names(p, crown)
    return None


def is_crown(p: Poset, seq) -> bool:
    idx = [p.index(s) for s in seq]
    k = len(idx)
    if k < 4 or k % 2 or len(set(idx)) != k:
        return False
    for t in range(k):
        a, b = idx[t], idx[(t + 1) % k]
        top, bottom = (a, b) if t % 2 == 0 else (b, a)
        if top == bottom or not p.has(top, bottom):
            return False
    for s in range(k):
        for t in range(s + 2, k):
            if s == 0 and t == k - 1:
                continue
            if p.comparable(idx[s], idx[t]):
                return False
    return True


def iter_diamonds(p: Poset) -> Iterator[tuple[int, int, int, int]]:
    strict = p.strict_rows()
    for a in range(p.n):
        for b in bits(strict[a]):
            for c in bits(strict[a]):
                if c <= b or not _incomparable(p, b, c):
                    continue
                for d in bits(strict[b] & strict[c]):
                    yield (a, b, c, d)


def find_diamond(p: Poset) -> tuple[str, ...] | None:
    for d in iter_diamonds(p):
        return _names(p, d)
    return None


def is_diamond(p: Poset, seq) -> bool:
    a, b, c, d = (p.index(s) for s in seq)
    if len({a, b, c, d}) != 4:
        return False
    return p.has(a, b) and p.has(b, d) and p.has(a, c) and p.has(c, d) and _incomparable(p, b, c)


def is_crown_and_diamond_free(p: Poset) -> bool:
    return find_crown(p) is None and find_diamond(p) is None


def is_improper_crown4(p: Poset, crown) -> bool:
    """A 4-crown (a,b,c,d) is improper when some e has a,c >= e >= b,d."""
    a, b, c, d = (p.index(s) for s in crown)
    for e in range(p.n):
        if p.has(a, e) and p.has(c, e) and p.has(e, b) and p.has(e, d):
            return True
    return False


def _cover_graph(rel: Relation) -> list[int]:
    adj = [0] * rel.n
    for i in range(rel.n):
        for j in bits(rel.rows[i]):
            if i != j:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _has_cycle(adj: list[int]) -> bool:
    parent = list(range(len(adj)))

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(adj)):
        for j in bits(adj[i]):
            if j > i:
                a, b = root(i), root(j)
                if a == b:
                    return True
                parent[a] = b
    return False


def find_weak_cycle(rel: Relation) -> tuple[str, ...] | None:
    """Distinct elements, at least three, each comparable in ``rel`` to the next, cyclically."""
    adj = _cover_graph(rel)
    if not _has_cycle(adj):
        return None
    n = rel.n
    for s in range(n):
        path = [s]

        def walk() -> tuple[int, ...] | None:
            u = path[-1]
            for v in bits(adj[u]):
                if v == s and len(path) >= 3:
                    return tuple(path)
                if v <= s or v in path:
                    continue
                path.append(v)
                hit = walk()
                if hit:
                    return hit
                path.pop()
            return None

        hit = walk()
        if hit:
            return _names(rel, hit)
    return None


def is_weak_cycle(rel: Relation, seq) -> bool:
    idx = [rel.index(s) for s in seq]
    k = len(idx)
    if k < 3 or len(set(idx)) != k:
        return False
    return all(rel.comparable(idx[t], idx[(t + 1) % k]) for t in range(k))


def _reduction(p: Relation) -> Relation:
    return transitive_reduction(p) if isinstance(p, Poset) else p


def find_chalice(p: Relation) -> tuple[str, ...] | None:
    """(a, b, e1..eK, c, d) in the cover relation: a, b cover e1, each e covers the next, eK covers c, d.

    A Poset argument is replaced by its transitive reduction; a Relation is used as given.
    """
    rel = _reduction(p)
    n = rel.n
    down = list(rel.rows)
    up = list(rel.transpose().rows)

    def related(i, j):
        return rel.comparable(i, j)

    for e1 in range(n):
        tops = [(a, b) for a, b in combinations(bits(up[e1] & ~(1 << e1)), 2) if not related(a, b)]
        path: list[int] = []

        def descend():
            last = path[-1]
            used = set(path) | {a, b}
            bottoms = [
                (c, d)
                for c, d in combinations(bits(down[last] & ~(1 << last)), 2)
                if c not in used and d not in used and not related(c, d)
            ]
            if bottoms:
                return tuple(path) + bottoms[0]
            for nxt in bits(down[last]):
                if nxt in used:
                    continue
                path.append(nxt)
                hit = descend()
                if hit:
                    return hit
                path.pop()
            return None

        for a, b in tops:
            path = [e1]
            hit = descend()
            if hit:
                return _names(rel, (a, b) + hit)
    return None


def is_chalice(rel: Relation, seq) -> bool:
    idx = [rel.index(s) for s in seq]
    if len(idx) < 5 or len(set(idx)) != len(idx):
        return False
    a, b, *es, c, d = idx
    steps = [(a, es[0]), (b, es[0]), (es[-1], c), (es[-1], d)] + list(zip(es, es[1:]))
    return (
        all(rel.has(u, v) for u, v in steps)
        and not rel.comparable(a, b)
        and not rel.comparable(c, d)
    )


# Four-element patterns as strict pairs over tuple positions, transitively closed.
FOUR_POSETS: dict[str, list[frozenset]] = {
    "ball_and_chain": [frozenset({(0, 1), (1, 2), (0, 2)})],
    "hook": [
        frozenset({(0, 1), (1, 2), (0, 2), (3, 2)}),
        frozenset({(1, 0), (2, 1), (2, 0), (2, 3)}),
    ],
    "dumbbells": [frozenset({(0, 1), (2, 3)})],
    "saw": [frozenset({(0, 1), (2, 1), (2, 3)})],
    "crown4": [frozenset({(0, 1), (2, 1), (2, 3), (0, 3)})],
    "diamond": [frozenset({(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)})],
}


def _restricted(p: Poset, quad) -> frozenset:
    return frozenset(
        (s, t) for s in range(4) for t in range(4) if s != t and p.has(quad[s], quad[t])
    )


def find_forbidden_four_poset(p: Poset) -> tuple[str, tuple[str, ...]] | None:
    """First 4-element subposet isomorphic to a forbidden pattern, as (kind, witness)."""
    for subset in combinations(range(p.n), 4):
        for quad in permutations(subset):
            got = _restricted(p, quad)
            for kind, patterns in FOUR_POSETS.items():
                if got in patterns:
                    return kind, _names(p, quad)
    return None


def is_four_poset(p: Poset, kind: str, seq) -> bool:
    quad = [p.index(s) for s in seq]
    return len(set(quad)) == 4 and _restricted(p, quad) in FOUR_POSETS[kind]


def elaborated_fork_criterion(p: Poset) -> bool:
    """No forbidden four-element subposet and no crown of length six or more."""
    return find_forbidden_four_poset(p) is None and find_crown(p, min_length=6) is None


def _is_antichain(p: Poset, mask: int) -> bool:
    idx = list(bits(mask))
    return all(_incomparable(p, i, j) for i, j in combinations(idx, 2))


def _is_chain(p: Poset, mask: int) -> bool:
    idx = list(bits(mask))
    return all(p.comparable(i, j) for i, j in combinations(idx, 2))


def fork_partition(p: Poset, kind: str) -> dict | None:
    """Partition witnessing ``kind``, or None if the poset is not of that shape."""
    n = p.n
    full = (1 << n) - 1
    up = p.rows  # up[i]: elements below or equal i
    down = p.columns()  # down[i]: elements above or equal i
    if kind in (UP_FORK, DOWN_FORK):
        for a in range(n):
            if (up[a] | down[a]) != full:
                continue
            above = down[a] & ~(1 << a)
            below = up[a] & ~(1 << a)
            head, tail = (above, below) if kind == UP_FORK else (below, above)
            if _is_antichain(p, head) and _is_chain(p, tail):
                return {"apex": p.elements[a], "head": _names(p, bits(head)), "chain": _names(p, bits(tail))}
        return None
    isolated = [i for i in range(n) if up[i] == down[i] == 1 << i]
    rest = full & ~sum(1 << i for i in isolated)
    if not rest:
        a = isolated[0]
        return {"apex": p.elements[a], "head": (), "isolated": _names(p, isolated[1:])}
    for a in bits(rest):
        reach = down[a] if kind == SHATTERED_UP_FORK else up[a]
        if reach & rest == rest and _is_antichain(p, rest & ~(1 << a)):
            return {"apex": p.elements[a], "head": _names(p, bits(rest & ~(1 << a))), "isolated": _names(p, isolated)}
    return None


def classify_fork(p: Poset) -> str:
    for kind in (UP_FORK, DOWN_FORK, SHATTERED_UP_FORK, SHATTERED_DOWN_FORK):
        if fork_partition(p, kind) is not None:
            return kind
    return NEITHER


@dataclass
class StructureReport:
    crowns: list = field(default_factory=list)
    diamonds: list = field(default_factory=list)
    chalices: list = field(default_factory=list)
    weak_cycles: list = field(default_factory=list)
    four_posets: list = field(default_factory=list)
    fork_class: str = NEITHER

    def to_json(self) -> dict:
        return {
            "crowns": [list(c) for c in self.crowns],
            "diamonds": [list(d) for d in self.diamonds],
            "chalices": [list(c) for c in self.chalices],
            "weak_cycles": [list(c) for c in self.weak_cycles],
            "four_posets": [[k, list(w)] for k, w in self.four_posets],
            "fork_class": self.fork_class,
        }


def structure_report(p: Poset) -> StructureReport:
    red = transitive_reduction(p)
    report = StructureReport(fork_class=classify_fork(p))
    for found, bucket in (
        (find_crown(p), report.crowns),
        (find_diamond(p), report.diamonds),
        (find_chalice(red), report.chalices),
        (find_weak_cycle(red), report.weak_cycles),
        (find_forbidden_four_poset(p), report.four_posets),
    ):
        if found is not None:
            bucket.append(found)
    return report
