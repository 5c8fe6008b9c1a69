"""Upper bounds, the core relation, Suzumura extension, joins and meets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .chains import build_chain_digraph, reach_rows
from .errors import NoJoin, NoMeet, NotComparable, NotConsistent, PreconditionFailed
from .poset import Poset, Relation, bits, close_rows, dual, is_complete
from .preference import Profile, WeakOrder, _same_ground, sc_dominates


@dataclass(frozen=True)
class CoreRelation:
    """The relation every minimum upper bound must agree with on comparable pairs.

    ``chains[(x, y)]`` holds the (chain, strict chain) answers for x above y
    that decided the entry.
    """

    relation: Relation
    chains: Mapping[tuple[str, str], tuple[bool, bool]] = field(compare=False)

    @property
    def elements(self) -> tuple[str, ...]:
        return self.relation.elements

    def table(self) -> list[dict]:
        rows = []
        for (x, y), (weak, strict) in self.chains.items():
            rows.append(
                {
                    "pair": [x, y],
                    "chain": weak,
                    "strict_chain": strict,
                    "upper_weakly_above": self.relation.holds(x, y),
                    "lower_weakly_above": self.relation.holds(y, x),
                }
            )
        return rows


def core_rows(geq_rows, weak_reach, strict_reach) -> tuple[int, ...]:
    """Rows of the core relation from reachability rows.

    For x above y: x over y iff a chain reaches y; y over x iff no strict chain does.
    """
    n = len(geq_rows)
    rows = [1 << i for i in range(n)]
    for x in range(n):
        below = geq_rows[x] & ~(1 << x)
        rows[x] |= below & weak_reach[x]
        for y in bits(below & ~strict_reach[x]):
            rows[y] |= 1 << x
    return tuple(rows)


def core_relation(P: Profile, p: Poset) -> CoreRelation:
    g = build_chain_digraph(P, p)
    weak, strict = reach_rows(g)
    rel = Relation(p.elements, core_rows(p.rows, weak, strict))
    e = p.elements
    chains = {
        (e[x], e[y]): (bool(weak[x] >> y & 1), bool(strict[x] >> y & 1))
        for x, y in p.strict_pairs()
    }
    return CoreRelation(rel, chains)


def is_upper_bound(cand: WeakOrder, P: Profile, p: Poset) -> bool:
    """Upper bound test by two routes that must agree.

    Direct: ``cand`` single-crossing dominates every member. Chain route:
    ``cand`` ranks x weakly over y along every chain and strictly along
    every strict chain.
    """
    _same_ground(p, cand, *P.members)
    direct = all(sc_dominates(cand, m, p) for m in P.members)
    weak, strict = reach_rows(build_chain_digraph(P, p))
    r = cand.ranks
    via_chains = all(
        (not weak[x] >> y & 1 or r[x] <= r[y]) and (not strict[x] >> y & 1 or r[x] < r[y])
        for x, y in p.strict_pairs()
    )
    if direct != via_chains:
        raise RuntimeError(f"upper-bound routes disagree for {cand} over {P}")
    return direct


def is_minimum_upper_bound(cand: WeakOrder, P: Profile, p: Poset) -> bool:
    """Does ``cand`` agree with the core relation on every comparable pair, in both directions?"""
    _same_ground(p, cand, *P.members)
    core = core_relation(P, p).relation
    r = cand.ranks
    return all(
        (r[x] <= r[y]) == core.has(x, y) and (r[y] <= r[x]) == core.has(y, x)
        for x, y in p.strict_pairs()
    )


def _strictly_over(rel: Relation, a: int, b: int) -> bool:
    return rel.has(a, b) and not rel.has(b, a)


def _path(rows, a: int, b: int) -> list[int]:
    """Shortest path a -> b (length >= 1) along rows, index tie-break."""
    parent = {}
    queue = deque([a])
    seen = 0
    while queue:
        u = queue.popleft()
        for v in bits(rows[u]):
            if v == u or seen >> v & 1:
                continue
            seen |= 1 << v
            parent[v] = u
            if v == b:
                path = [b]
                while path[-1] != a:
                    path.append(parent[path[-1]])
                return path[::-1]
            queue.append(v)
    raise ValueError("no path")


def suzumura_witness(rel: Relation) -> tuple[str, ...] | None:
    """A sequence a1 >= a2 >= ... >= aK with aK strictly over a1, or None."""
    reach = close_rows(rel.rows)
    for a in range(rel.n):
        for b in bits(reach[a]):
            if b != a and _strictly_over(rel, b, a):
                return tuple(rel.elements[i] for i in _path(rel.rows, a, b))
    return None


def is_suzumura_consistent(rel: Relation) -> bool:
    return suzumura_witness(rel) is None


def suzumura_extend(rel: Relation) -> WeakOrder:
    """Canonical complete transitive extension.

    Mutually reachable elements are tied; the resulting classes are placed
    in topological order, picking the ready class with the smallest member
    index first, each class on its own rank.
    """
    witness = suzumura_witness(rel)
    if witness is not None:
        raise NotConsistent(witness)
    n = rel.n
    reach = [r | (1 << i) for i, r in enumerate(close_rows(rel.rows))]
    cls = [-1] * n
    classes: list[int] = []
    for i in range(n):
        if cls[i] < 0:
            members = 0
            for j in bits(reach[i]):
                if reach[j] >> i & 1:
                    members |= 1 << j
            for j in bits(members):
                cls[j] = len(classes)
            classes.append(members)
    k = len(classes)
    succ = [set() for _ in range(k)]
    indeg = [0] * k
    for a in range(n):
        for b in bits(reach[a]):
            ca, cb = cls[a], cls[b]
            if ca != cb and cb not in succ[ca]:
                succ[ca].add(cb)
                indeg[cb] += 1
    ready = sorted(c for c in range(k) if indeg[c] == 0)
    rank_of = [0] * k
    level = 0
    while ready:
        c = ready.pop(0)
        rank_of[c] = level
        level += 1
        for d in succ[c]:
            indeg[d] -= 1
            if indeg[d] == 0:
                ready.append(d)
        ready.sort()
    # Class ids were assigned in order of smallest member, so sorting ids is the index tie-break.
    return WeakOrder(rel.elements, tuple(rank_of[cls[i]] for i in range(n)))


def extends(order: WeakOrder, rel: Relation) -> bool:
    r = order.ranks
    for a in range(rel.n):
        for b in bits(rel.rows[a]):
            if r[a] > r[b]:
                return False
            if _strictly_over(rel, a, b) and r[a] == r[b]:
                return False
    return True


def join(P: Profile, p: Poset) -> WeakOrder:
    core = core_relation(P, p)
    witness = suzumura_witness(core.relation)
    if witness is not None:
        raise NoJoin(witness)
    return suzumura_extend(core.relation)


def meet(P: Profile, p: Poset) -> WeakOrder:
    try:
        return join(P, dual(p))
    except NoJoin as exc:
        raise NoMeet(exc.witness) from None


def upper_bound_avoiding(P: Profile, p: Poset, x: str, y: str, strict: bool = False) -> WeakOrder:
    """An upper bound that does not rank ``x`` weakly (or, with ``strict``, strictly) over ``y``.

    Requires x above y with no chain (no strict chain) from x to y.
    """
    _same_ground(p, *P.members)
    i, j = p.index(x), p.index(y)
    if not p.has(i, j):
        raise NotComparable(x, y)
    weak, strict_reach = reach_rows(build_chain_digraph(P, p))
    if not strict and weak[i] >> j & 1:
        raise PreconditionFailed(f"there is a chain from {x!r} to {y!r}")
    if strict and strict_reach[i] >> j & 1:
        raise PreconditionFailed(f"there is a strict chain from {x!r} to {y!r}")
    n = p.n
    # Strictly-above pairs joined by a chain; transitive because chains concatenate.
    rows = [p.strict_rows()[z] & weak[z] for z in range(n)]
    if strict and weak[i] >> j & 1:
        # Tie the two ends of every step lying on some chain from x to y.
        for hi in bits(weak[i]):
            for lo in bits(weak[hi] & p.strict_rows()[hi]):
                if weak[lo] >> j & 1:
                    rows[lo] |= 1 << hi
    else:
        rows[j] |= 1 << i
    out = suzumura_extend(Relation(p.elements, tuple(rows)))
    r = out.ranks
    if (r[i] <= r[j]) if not strict else (r[i] < r[j]):
        raise RuntimeError("constructed upper bound does not avoid the pair")
    return out


@dataclass(frozen=True)
class LatticeStatus:
    kind: str
    witness: tuple[str, ...] | None = None
    witness_kind: str | None = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "witness": list(self.witness) if self.witness else None, "witness_kind": self.witness_kind}


def lattice_status(p: Poset) -> LatticeStatus:
    from .structure import find_crown, find_diamond

    if is_complete(p):
        return LatticeStatus("complete_lattice")
    crown = find_crown(p)
    if crown is not None:
        return LatticeStatus("none", crown, "crown")
    diamond = find_diamond(p)
    if diamond is not None:
        return LatticeStatus("none", diamond, "diamond")
    a, b = p.incomparable_pairs()[0]
    return LatticeStatus("pre_lattice", (p.elements[a], p.elements[b]), "incomparable_pair")
