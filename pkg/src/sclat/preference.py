"""Weak orders stored as rank vectors, profiles, and single-crossing dominance."""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import EmptyInput, InputError, MissingElement, RankingSyntaxError, TooLarge, UnknownElement
from .poset import Poset

MAX_ENUMERATION = 7


class NonConsecutiveRanks(UserWarning):
    """Ranks had gaps and were compacted."""


def compact(ranks: Sequence[int]) -> tuple[int, ...]:
    levels = {r: k for k, r in enumerate(sorted(set(ranks)))}
    return tuple(levels[r] for r in ranks)


@dataclass(frozen=True)
class WeakOrder:
    """Complete transitive preference; ``ranks[i] == 0`` marks the most preferred class."""

    elements: tuple[str, ...]
    ranks: tuple[int, ...]

    def __post_init__(self):
        if len(self.ranks) != len(self.elements):
            raise InputError("one rank per element is required")
        if set(self.ranks) != set(range(max(self.ranks, default=-1) + 1)):
            raise InputError("ranks must be consecutive from 0; use validate_weak_order")

    @property
    def n(self) -> int:
        return len(self.elements)

    def rank(self, element: str) -> int:
        try:
            return self.ranks[self.elements.index(element)]
        except ValueError:
            raise UnknownElement(element) from None

    def weakly_prefers(self, a: str, b: str) -> bool:
        return self.rank(a) <= self.rank(b)

    def strictly_prefers(self, a: str, b: str) -> bool:
        return self.rank(a) < self.rank(b)

    def classes(self) -> list[list[str]]:
        out: list[list[str]] = [[] for _ in range(max(self.ranks) + 1)]
        for e, r in zip(self.elements, self.ranks):
            out[r].append(e)
        return out

    def reversed(self) -> "WeakOrder":
        top = max(self.ranks)
        return WeakOrder(self.elements, tuple(top - r for r in self.ranks))

    def __str__(self) -> str:
        return " > ".join(" ~ ".join(c) for c in self.classes())


def validate_weak_order(ranks: Mapping[str, int], elements: Sequence[str] | None = None) -> WeakOrder:
    """Build a WeakOrder from an element -> rank mapping, compacting gaps with a warning."""
    if elements is None:
        elements = list(ranks)
    elements = tuple(elements)
    for e in ranks:
        if e not in elements:
            raise UnknownElement(e)
    for e in elements:
        if e not in ranks:
            raise MissingElement(e)
    raw = [int(ranks[e]) for e in elements]
    if any(r < 0 for r in raw):
        raise InputError("ranks must be non-negative")
    fixed = compact(raw)
    if tuple(raw) != fixed:
        warnings.warn("ranks were not consecutive from 0 and have been compacted", NonConsecutiveRanks, stacklevel=2)
    return WeakOrder(elements, fixed)


_TOKEN = re.compile(r"\s*([^\s>~]+|>|~)")


def parse_ranking(text: str, elements: Sequence[str] | None = None) -> WeakOrder:
    """Parse ``"w > x > y ~ z"``.

    Without ``elements`` the element list is taken in order of appearance.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise RankingSyntaxError(f"cannot parse ranking at position {pos}: {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise RankingSyntaxError("empty ranking")
    order: dict[str, int] = {}
    level = 0
    expect_name = True
    for tok in tokens:
        if expect_name:
            if tok in (">", "~"):
                raise RankingSyntaxError(f"expected an element name, got {tok!r} in {text!r}")
            if tok in order:
                raise RankingSyntaxError(f"element {tok!r} appears twice in {text!r}")
            if elements is not None and tok not in elements:
                raise UnknownElement(tok)
            order[tok] = level
        else:
            if tok == ">":
                level += 1
            elif tok != "~":
                raise RankingSyntaxError(f"expected '>' or '~', got {tok!r} in {text!r}")
        expect_name = not expect_name
    if expect_name:
        raise RankingSyntaxError(f"ranking ends with an operator: {text!r}")
    if elements is None:
        elements = tuple(order)
    for e in elements:
        if e not in order:
            raise MissingElement(e)
    return WeakOrder(tuple(elements), tuple(order[e] for e in elements))


@lru_cache(maxsize=None)
def weak_order_ranks(n: int) -> tuple[tuple[int, ...], ...]:
    """All rank vectors of weak orders on n indexed elements, lexicographic."""
    if n < 1:
        raise InputError("need at least one element")
    if n > MAX_ENUMERATION:
        raise TooLarge(f"weak-order enumeration is capped at {MAX_ENUMERATION} elements")
    out = []
    for ranks in product(range(n), repeat=n):
        top = max(ranks)
        if len(set(ranks)) == top + 1:
            out.append(ranks)
    return tuple(out)


def enumerate_weak_orders(elements: int | Sequence[str]) -> Iterator[WeakOrder]:
    """Every weak order exactly once, in a fixed order.

    An integer argument names the elements ``"0" .. "n-1"``.
    """
    if isinstance(elements, int):
        elements = tuple(str(i) for i in range(elements))
    elements = tuple(elements)
    for ranks in weak_order_ranks(len(elements)):
        yield WeakOrder(elements, ranks)


def sc_dominates_ranks(hi: Sequence[int], lo: Sequence[int], strict_pairs: Iterable[tuple[int, int]]) -> bool:
    for x, y in strict_pairs:
        lx, ly = lo[x], lo[y]
        if lx < ly:
            if not hi[x] < hi[y]:
                return False
        elif lx == ly and hi[x] > hi[y]:
            return False
    return True


def sc_dominates(hi: WeakOrder, lo: WeakOrder, p: Poset) -> bool:
    """Does ``hi`` keep every upward ranking that ``lo`` makes on comparable pairs?"""
    _same_ground(p, hi, lo)
    return sc_dominates_ranks(hi.ranks, lo.ranks, p.strict_pairs())


@dataclass(frozen=True)
class Profile:
    """Nonempty ordered list of weak orders over one element list."""

    members: tuple[WeakOrder, ...]

    def __post_init__(self):
        if not self.members:
            raise EmptyInput("a profile needs at least one member")
        first = self.members[0].elements
        if any(m.elements != first for m in self.members):
            raise InputError("profile members must share one element list")

    @classmethod
    def parse(cls, rankings: Iterable[str], elements: Sequence[str] | None = None) -> "Profile":
        rankings = list(rankings)
        if not rankings:
            raise EmptyInput("a profile needs at least one member")
        if elements is None:
            elements = parse_ranking(rankings[0]).elements
        return cls(tuple(parse_ranking(r, elements) for r in rankings))

    @property
    def elements(self) -> tuple[str, ...]:
        return self.members[0].elements

    def rank_lists(self) -> list[tuple[int, ...]]:
        return [m.ranks for m in self.members]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __str__(self) -> str:
        return "{" + ", ".join(f'"{m}"' for m in self.members) + "}"


def _same_ground(p: Poset, *orders: WeakOrder) -> None:
    for o in orders:
        if o.elements != p.elements:
            raise InputError("preference and poset are indexed by different element lists")


def align(order: WeakOrder, elements: Sequence[str]) -> WeakOrder:
    """Re-index a weak order to another listing of the same elements."""
    elements = tuple(elements)
    if set(elements) != set(order.elements):
        raise InputError("cannot align orders over different element sets")
    return WeakOrder(elements, tuple(order.rank(e) for e in elements))
