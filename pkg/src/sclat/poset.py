"""Finite relations and posets over opaque string elements.

A relation is stored as one integer bitmask per row: bit ``j`` of
``rows[i]`` is set iff ``elements[i]`` is related to ``elements[j]``.
Every algorithm works on the dense indices; names only matter at the
edges (construction, witnesses, printing).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InputError, NotAntisymmetric, NotReflexive, NotTransitive, UnknownElement


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Relation:
    """A binary relation on an ordered element list, with no axioms assumed."""

    elements: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != len(self.elements):
            raise InputError("relation must be square over its element list")
        if len(set(self.elements)) != len(self.elements):
            raise InputError("duplicate element identifiers")
        full = (1 << len(self.elements)) - 1
        if any(r & ~full for r in self.rows):
            raise InputError("relation row refers to an index outside the element list")

    @classmethod
    def from_pairs(cls, elements: Sequence[str], pairs: Iterable[tuple[str, str]]):
        elements = tuple(str(e) for e in elements)
        pos = {e: i for i, e in enumerate(elements)}
        rows = [0] * len(elements)
        for a, b in pairs:
            for e in (a, b):
                if e not in pos:
                    raise UnknownElement(e)
            rows[pos[a]] |= 1 << pos[b]
        return cls(elements, tuple(rows))

    @classmethod
    def from_matrix(cls, elements: Sequence[str], matrix):
        rows = tuple(sum(1 << j for j, v in enumerate(row) if v) for row in matrix)
        return cls(tuple(str(e) for e in elements), rows)

    @property
    def n(self) -> int:
        return len(self.elements)

    def index(self, element: str) -> int:
        try:
            return self.elements.index(element)
        except ValueError:
            raise UnknownElement(element) from None

    def has(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def holds(self, a: str, b: str) -> bool:
        return self.has(self.index(a), self.index(b))

    def pairs(self) -> list[tuple[str, str]]:
        e = self.elements
        return [(e[i], e[j]) for i in range(self.n) for j in bits(self.rows[i])]

    def matrix(self) -> list[list[bool]]:
        return [[self.has(i, j) for j in range(self.n)] for i in range(self.n)]

    def columns(self) -> tuple[int, ...]:
        cols = [0] * self.n
        for i, row in enumerate(self.rows):
            for j in bits(row):
                cols[j] |= 1 << i
        return tuple(cols)

    def transpose(self) -> "Relation":
        return Relation(self.elements, self.columns())

    def comparable(self, i: int, j: int) -> bool:
        return self.has(i, j) or self.has(j, i)


class Poset(Relation):
    """A reflexive, antisymmetric, transitive relation: ``has(i, j)`` means i >= j.

    Construct through :func:`validate_poset` (or the ``from_*`` helpers,
    which validate) so the axioms are guaranteed.
    """

    def __post_init__(self):
        super().__post_init__()
        _check_axioms(self)

    def geq(self, a: str, b: str) -> bool:
        return self.holds(a, b)

    def gt(self, a: str, b: str) -> bool:
        return a != b and self.holds(a, b)

    def strict_rows(self) -> tuple[int, ...]:
        return tuple(r & ~(1 << i) for i, r in enumerate(self.rows))

    def strict_pairs(self) -> list[tuple[int, int]]:
        """Index pairs (i, j) with i > j, row-major."""
        return [(i, j) for i, r in enumerate(self.strict_rows()) for j in bits(r)]

    def incomparable_pairs(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if not self.comparable(i, j)
        ]


def _check_axioms(rel: Relation) -> None:
    n = rel.n
    if n == 0:
        raise InputError("a poset needs at least one element")
    e = rel.elements
    for i in range(n):
        if not rel.has(i, i):
            raise NotReflexive(e[i])
    for i in range(n):
        for j in range(i + 1, n):
            if rel.has(i, j) and rel.has(j, i):
                raise NotAntisymmetric(e[i], e[j])
    for i in range(n):
        for j in bits(rel.rows[i]):
            missing = rel.rows[j] & ~rel.rows[i]
            if missing:
                k = next(bits(missing))
                raise NotTransitive(e[i], e[j], e[k])


def validate_poset(rel: Relation) -> Poset:
    if isinstance(rel, Poset):
        return rel
    return Poset(rel.elements, rel.rows)


def close_rows(rows: Sequence[int]) -> tuple[int, ...]:
    """Transitive closure of bit rows by repeated squaring."""
    rows = list(rows)
    while True:
        new = []
        for r in rows:
            acc = r
            for j in bits(r):
                acc |= rows[j]
            new.append(acc)
        if new == rows:
            return tuple(rows)
        rows = new


def transitive_closure(rel: Relation) -> Relation:
    """Smallest transitive relation containing ``rel`` (reflexivity is not added)."""
    return Relation(rel.elements, close_rows(rel.rows))


def transitive_reduction(p: Poset) -> Relation:
    """Cover relation of the strict part: i covers j iff i > j with nothing strictly between."""
    strict = p.strict_rows()
    covers = []
    for r in strict:
        below_below = 0
        for j in bits(r):
            below_below |= strict[j]
        covers.append(r & ~below_below)
    return Relation(p.elements, tuple(covers))


def poset_from_covers(elements: Sequence[str], covers: Iterable[tuple[str, str]]) -> Poset:
    """Reflexive-transitive closure of a cover list, validated."""
    rel = Relation.from_pairs(elements, covers)
    rows = close_rows(r | (1 << i) for i, r in enumerate(rel.rows))
    return validate_poset(Relation(rel.elements, rows))


def poset_from_pairs(elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> Poset:
    """Validate a full relation given as pairs (no closure is applied)."""
    return validate_poset(Relation.from_pairs(elements, pairs))


def dual(p: Poset) -> Poset:
    return Poset(p.elements, p.columns())


def is_complete(p: Poset) -> bool:
    full = (1 << p.n) - 1
    cols = p.columns()
    return all((p.rows[i] | cols[i]) == full for i in range(p.n))


def antichain(elements: Sequence[str]) -> Poset:
    return Poset(tuple(elements), tuple(1 << i for i in range(len(elements))))


def chain(elements: Sequence[str]) -> Poset:
    """Total order with ``elements[0]`` on top."""
    n = len(elements)
    return Poset(tuple(elements), tuple(((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)))
