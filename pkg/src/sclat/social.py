"""Acceptable aggregation of preferences under a normative constraint.

A social preference is acceptable for a profile when it respects justified
objections (it is an upper bound) and conditionally respects unanimity
(unanimous rankings stand unless a chain runs against them). Only minimum
upper bounds can be acceptable, and acceptable ones exist for every
profile exactly when the constraint is a fork or a shattered fork.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .chains import build_chain_digraph, reach_rows
from .errors import InternalSearchExhausted, NotAForkPoset, TooLarge
from .lattice import core_relation, is_minimum_upper_bound, is_upper_bound, join, suzumura_extend
from .poset import Poset, Relation, close_rows, dual
from .preference import Profile, WeakOrder, _same_ground, enumerate_weak_orders
from .structure import (
    DOWN_FORK,
    NEITHER,
    UP_FORK,
    classify_fork,
    elaborated_fork_criterion,
    find_forbidden_four_poset,
    fork_partition,
)

MAX_SEARCH = 6
JUSTIFIED_OBJECTIONS = "justified_objections"
CONDITIONAL_UNANIMITY = "conditional_unanimity"


def _objection_violation(social: WeakOrder, pi: Profile, p: Poset):
    """First comparable pair (x, y, strict) where some member's ranking is overruled."""
    r = social.ranks
    for x, y in p.strict_pairs():
        weak = any(m.ranks[x] <= m.ranks[y] for m in pi)
        strict = any(m.ranks[x] < m.ranks[y] for m in pi)
        if weak and r[x] > r[y]:
            return x, y, False
        if strict and r[x] >= r[y]:
            return x, y, True
    return None


def respects_justified_objections(social: WeakOrder, pi: Profile, p: Poset) -> bool:
    """Checked by scanning the definition and by the upper-bound test; both must agree."""
    _same_ground(p, social, *pi.members)
    direct = _objection_violation(social, pi, p) is None
    if direct != is_upper_bound(social, pi, p):
        raise RuntimeError(f"objection routes disagree for {social} over {pi}")
    return direct


def _unanimity_violation(social: WeakOrder, pi: Profile, p: Poset):
    """First ordered pair (x, y, strict) with an unmet unanimous ranking of x over y."""
    weak_reach, strict_reach = reach_rows(build_chain_digraph(pi, p))
    r = social.ranks
    n = p.n
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            if all(m.ranks[x] < m.ranks[y] for m in pi) and not weak_reach[y] >> x & 1 and r[x] >= r[y]:
                return x, y, True
            if all(m.ranks[x] <= m.ranks[y] for m in pi) and not strict_reach[y] >> x & 1 and r[x] > r[y]:
                return x, y, False
    return None


def conditionally_respects_unanimity(social: WeakOrder, pi: Profile, p: Poset) -> bool:
    _same_ground(p, social, *pi.members)
    return _unanimity_violation(social, pi, p) is None


def is_acceptable(social: WeakOrder, pi: Profile, p: Poset) -> bool:
    return respects_justified_objections(social, pi, p) and conditionally_respects_unanimity(social, pi, p)


def first_violation(social: WeakOrder, pi: Profile, p: Poset) -> dict | None:
    """The first failed axiom with its witness pair, or None if acceptable."""
    _same_ground(p, social, *pi.members)
    for axiom, found in (
        (JUSTIFIED_OBJECTIONS, _objection_violation(social, pi, p)),
        (CONDITIONAL_UNANIMITY, _unanimity_violation(social, pi, p)),
    ):
        if found is not None:
            x, y, strict = found
            return {"axiom": axiom, "pair": [p.elements[x], p.elements[y]], "strict": strict}
    return None


def acceptable_preferences(pi: Profile, p: Poset) -> list[WeakOrder]:
    """Every acceptable social preference, searching only minimum upper bounds."""
    if p.n > MAX_SEARCH:
        raise TooLarge(f"acceptability search is limited to {MAX_SEARCH} elements")
    _same_ground(p, *pi.members)
    core = core_relation(pi, p).relation
    pairs = p.strict_pairs()
    out = []
    for w in enumerate_weak_orders(p.elements):
        r = w.ranks
        if all((r[x] <= r[y]) == core.has(x, y) and (r[y] <= r[x]) == core.has(y, x) for x, y in pairs):
            if is_acceptable(w, pi, p):
                out.append(w)
    return out


def acceptable_exists_for_profile(pi: Profile, p: Poset) -> WeakOrder | None:
    found = acceptable_preferences(pi, p)
    return found[0] if found else None


@dataclass(frozen=True)
class SWFVerdict:
    exists: bool
    fork_class: str
    elaborated: bool
    forbidden: tuple[str, tuple[str, ...]] | None

    def to_json(self) -> dict:
        return {
            "acceptable_swf_exists": self.exists,
            "fork_class": self.fork_class,
            "elaborated_criterion": self.elaborated,
            "forbidden_four_poset": None if self.forbidden is None else {"kind": self.forbidden[0], "witness": list(self.forbidden[1])},
        }


def exists_acceptable_swf(p: Poset) -> SWFVerdict:
    """Structural verdict; the fork test and the forbidden-subposet test must agree."""
    kind = classify_fork(p)
    elaborated = elaborated_fork_criterion(p)
    if (kind != NEITHER) != elaborated:
        raise RuntimeError(f"fork classification {kind} disagrees with the forbidden-subposet test")
    return SWFVerdict(kind != NEITHER, kind, elaborated, find_forbidden_four_poset(p))


def _pareto_rank(members: Sequence[int], pi: Profile) -> dict[int, int]:
    """Rank block members by total rank across the profile, ties indifferent.

    Unanimous weak (strict) rankings give weakly (strictly) smaller totals.
    """
    total = {e: sum(m.ranks[e] for m in pi) for e in members}
    levels = sorted(set(total.values()))
    return {e: levels.index(total[e]) for e in members}


def _reorder_blocks(star: WeakOrder, blocks: Sequence[Sequence[int]], choices: Sequence[dict[int, int]]) -> WeakOrder:
    key = [(r, 0) for r in star.ranks]
    for block, sub in zip(blocks, choices):
        base = min(star.ranks[e] for e in block)
        for e in block:
            key[e] = (base, sub[e])
    levels = sorted(set(key))
    return WeakOrder(star.elements, tuple(levels.index(k) for k in key))


def _up_fork_construct(pi: Profile, p: Poset, part: dict) -> WeakOrder:
    star = join(pi, p)
    r = star.ranks
    spine = [p.index(part["apex"])] + [p.index(e) for e in part["chain"]]
    head = [p.index(e) for e in part["head"]]
    signature = {}
    for e in head:
        sig = tuple((r[e] <= r[z], r[e] < r[z]) for z in spine)
        signature.setdefault(sig, []).append(e)
    blocks = []
    for members in signature.values():
        # a block tied to the spine is forced to stay indifferent
        if len(members) > 1 and not any(r[members[0]] == r[z] for z in spine):
            blocks.append(members)
    out = _reorder_blocks(star, blocks, [_pareto_rank(b, pi) for b in blocks])
    if is_acceptable(out, pi, p):
        return out
    options = [
        [{e: w.ranks[i] for i, e in enumerate(b)} for w in enumerate_weak_orders(len(b))]
        for b in blocks
    ]
    for choice in product(*options):
        out = _reorder_blocks(star, blocks, choice)
        if is_acceptable(out, pi, p):
            return out
    raise InternalSearchExhausted(f"no acceptable block ordering for {pi}")


def _reverse_profile(pi: Profile) -> Profile:
    return Profile(tuple(m.reversed() for m in pi))


def _shattered_construct(pi: Profile, p: Poset) -> WeakOrder:
    core = core_relation(pi, p).relation
    n = p.n
    rows = list(core.rows)
    for x in range(n):
        for y in range(n):
            if x != y and not p.comparable(x, y) and all(m.ranks[x] <= m.ranks[y] for m in pi):
                rows[x] |= 1 << y
    closed = Relation(p.elements, close_rows(rows))
    return suzumura_extend(closed)


def construct_acceptable(pi: Profile, p: Poset) -> WeakOrder:
    """An acceptable social preference, built from the shape of the constraint."""
    _same_ground(p, *pi.members)
    kind = classify_fork(p)
    if kind == NEITHER:
        raise NotAForkPoset(f"constraint is neither a fork nor a shattered fork; forbidden subposet {find_forbidden_four_poset(p)}")
    if kind == UP_FORK:
        out = _up_fork_construct(pi, p, fork_partition(p, UP_FORK))
    elif kind == DOWN_FORK:
        d = dual(p)
        out = _up_fork_construct(_reverse_profile(pi), d, fork_partition(d, UP_FORK)).reversed()
    else:
        out = _shattered_construct(pi, p)
    if not is_acceptable(out, pi, p):
        raise InternalSearchExhausted(f"construction for a {kind} constraint failed on {pi}")
    return out


@dataclass
class ProfileResult:
    profile_id: int
    profile: list[str]
    acceptable: list[str]
    first_violation: dict | None

    def to_json(self) -> dict:
        return {
            "profile_id": self.profile_id,
            "profile": self.profile,
            "acceptable": self.acceptable,
            "first_violation": self.first_violation,
        }


@dataclass
class AcceptabilityReport:
    constraint_class: str
    results: list[ProfileResult] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"constraint_class": self.constraint_class, "profiles": [r.to_json() for r in self.results]}


def acceptability_report(profiles: Sequence[Profile], p: Poset) -> AcceptabilityReport:
    """Acceptable preferences per profile; when there are none, the first violation of the canonical join.

    If the profile has no join at all, the violation is reported for the first upper bound found,
    or omitted when there is none to test.
    """
    report = AcceptabilityReport(classify_fork(p))
    for k, pi in enumerate(profiles):
        found = acceptable_preferences(pi, p)
        for w in found:
            if not (is_acceptable(w, pi, p) and is_minimum_upper_bound(w, pi, p)):
                raise RuntimeError(f"reported preference {w} fails re-validation")
        violation = None
        if not found:
            candidate = _canonical_candidate(pi, p)
            if candidate is not None:
                violation = first_violation(candidate, pi, p)
                violation["social"] = str(candidate)
        report.results.append(ProfileResult(k, [str(m) for m in pi], [str(w) for w in found], violation))
    return report


def _canonical_candidate(pi: Profile, p: Poset) -> WeakOrder | None:
    from .errors import NoJoin

    try:
        return join(pi, p)
    except NoJoin:
        for w in enumerate_weak_orders(p.elements):
            if is_upper_bound(w, pi, p):
                return w
    return None


# Two-member profiles with no acceptable aggregation, one per forbidden pattern.
# Elements are the pattern's tuple positions named x, y, z, w.
COUNTEREXAMPLES: dict[str, tuple[tuple[tuple[str, str], ...], tuple[str, str]]] = {
    "ball_and_chain": ((("x", "y"), ("y", "z")), ("z > w > x > y", "y > z > w > x")),
    "hook": ((("x", "y"), ("y", "z"), ("x", "w")), ("z > w > x > y", "y > z > w > x")),
    "dumbbells": ((("x", "y"), ("z", "w")), ("w > x > y > z", "y > z > w > x")),
    "saw": ((("x", "y"), ("z", "y"), ("z", "w")), ("w > x > y > z", "y > z > w > x")),
}


def counterexample(kind: str) -> tuple[Profile, Poset]:
    from .poset import poset_from_covers

    covers, rankings = COUNTEREXAMPLES[kind]
    p = poset_from_covers(("x", "y", "z", "w"), covers)
    return Profile.parse(rankings, p.elements), p
