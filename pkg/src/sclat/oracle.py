"""Brute-force ground truth.

Bound sets here come straight from the dominance definition and the
definition of a minimum, by scanning every weak order. Nothing in this
module touches chains or the core relation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .errors import TooLarge
from .poset import Poset, bits, close_rows
from .preference import Profile, WeakOrder, sc_dominates_ranks, weak_order_ranks

NAMES = "abcdefghijklmnop"
MAX_EXHAUSTIVE_POSETS = 5
MAX_BRUTE = 6


def default_elements(n: int) -> tuple[str, ...]:
    return tuple(NAMES[:n])


def poset_rows(n: int) -> list[tuple[int, ...]]:
    """Row tuples of every labeled poset on n elements.

    Built by adding one element at a time with a down-closed set below it
    and an up-closed set above it, every member of the latter above every
    member of the former.
    """
    if not 1 <= n <= MAX_EXHAUSTIVE_POSETS:
        raise TooLarge(f"exhaustive poset enumeration covers 1..{MAX_EXHAUSTIVE_POSETS} elements")
    layer = [(1,)]
    for k in range(1, n):
        nxt = []
        for rows in layer:
            cols = [0] * k
            for i, r in enumerate(rows):
                for j in bits(r):
                    cols[j] |= 1 << i
            for down in range(1 << k):
                if any(rows[d] & ~down for d in bits(down)):
                    continue
                for up in range(1 << k):
                    if up & down or any(cols[u] & ~up for u in bits(up)):
                        continue
                    if any(rows[u] & down != down for u in bits(up)):
                        continue
                    new = [r | (1 << k) if (up >> i) & 1 else r for i, r in enumerate(rows)]
                    new.append(down | (1 << k))
                    nxt.append(tuple(new))
        layer = nxt
    return layer


def enumerate_posets(n: int, elements: Sequence[str] | None = None) -> Iterator[Poset]:
    elements = tuple(elements) if elements is not None else default_elements(n)
    for rows in poset_rows(n):
        yield Poset(elements, rows)


def random_poset(n: int, rng: random.Random, elements: Sequence[str] | None = None) -> Poset:
    """Random labeled poset: a random DAG on a shuffled order, closed transitively."""
    elements = tuple(elements) if elements is not None else default_elements(n)
    perm = list(range(n))
    rng.shuffle(perm)
    density = rng.uniform(0.15, 0.6)
    rows = [1 << i for i in range(n)]
    for s in range(n):
        for t in range(s + 1, n):
            if rng.random() < density:
                rows[perm[s]] |= 1 << perm[t]
    return Poset(elements, close_rows(rows))


def dominance_matrix(p: Poset, ranks: np.ndarray) -> np.ndarray:
    """``out[c, m]`` iff order c single-crossing dominates order m."""
    ranks = np.asarray(ranks)
    m = len(ranks)
    ok = np.ones((m, m), dtype=bool)
    for x, y in p.strict_pairs():
        lo_weak = ranks[:, x] <= ranks[:, y]
        lo_strict = ranks[:, x] < ranks[:, y]
        ok &= ~(lo_weak[None, :] & ~lo_weak[:, None])
        ok &= ~(lo_strict[None, :] & ~lo_strict[:, None])
    return ok


def masks_from_matrix(mat: np.ndarray) -> list[int]:
    """Row i of a boolean matrix as a Python int bitmask over columns."""
    packed = np.packbits(mat, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def minimum_mask(candidates: int, dominated_by: Sequence[int]) -> int:
    """Members of ``candidates`` dominated by every candidate."""
    out = 0
    for u in bits(candidates):
        if candidates & ~dominated_by[u] == 0:
            out |= 1 << u
    return out


@dataclass(frozen=True)
class DominanceTable:
    """All pairwise dominance facts among the weak orders on one poset."""

    poset: Poset
    ranks: tuple[tuple[int, ...], ...]
    dominators: tuple[int, ...]  # dominators[m]: orders that dominate m
    dominated: tuple[int, ...]  # dominated[m]: orders that m dominates

    @classmethod
    def build(cls, p: Poset) -> "DominanceTable":
        ranks = weak_order_ranks(p.n)
        mat = dominance_matrix(p, np.array(ranks))
        return cls(p, ranks, tuple(masks_from_matrix(mat.T)), tuple(masks_from_matrix(mat)))

    def bounds(self, members: Sequence[int]) -> tuple[int, int, int, int]:
        ub = lb = (1 << len(self.ranks)) - 1
        for m in members:
            ub &= self.dominators[m]
            lb &= self.dominated[m]
        return ub, minimum_mask(ub, self.dominators), lb, minimum_mask(lb, self.dominated)


def brute_bounds(P: Profile, p: Poset):
    """(upper bounds, minimum upper bounds, lower bounds, maximum lower bounds) as lists."""
    if p.n > MAX_BRUTE:
        raise TooLarge(f"brute-force bounds are limited to {MAX_BRUTE} elements")
    pairs = p.strict_pairs()
    cands = weak_order_ranks(p.n)
    members = [m.ranks for m in P.members]
    ub = [c for c in cands if all(sc_dominates_ranks(c, m, pairs) for m in members)]
    lb = [c for c in cands if all(sc_dominates_ranks(m, c, pairs) for m in members)]
    mub = [u for u in ub if all(sc_dominates_ranks(v, u, pairs) for v in ub)]
    mlb = [u for u in lb if all(sc_dominates_ranks(u, v, pairs) for v in lb)]
    wrap = lambda rs: [WeakOrder(p.elements, r) for r in rs]
    return wrap(ub), wrap(mub), wrap(lb), wrap(mlb)


def all_posets_brute(n: int) -> list[tuple[int, ...]]:
    """Labeled posets by filtering every 0/1 matrix; a slow independent count."""
    out = []
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for choice in product((0, 1), repeat=len(off)):
        rows = [1 << i for i in range(n)]
        for (i, j), v in zip(off, choice):
            if v:
                rows[i] |= 1 << j
        if any(rows[i] >> j & 1 and rows[j] >> i & 1 for i, j in off):
            continue
        if all(rows[j] & ~rows[i] == 0 for i in range(n) for j in bits(rows[i])):
            out.append(tuple(rows))
    return out


@dataclass
class InstanceSweep:
    """Outcome of checking one or more theorems over a family of instances."""

    theorem: str
    n: int
    k: int | None = None
    seed: int | None = None
    checks: list[str] = field(default_factory=list)
    instances: int = 0
    passed: int = 0
    failed: int = 0
    first_counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    def record(self, ok: bool, counterexample=None) -> None:
        self.instances += 1
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_counterexample is None:
                self.first_counterexample = counterexample

    def merge(self, other: "InstanceSweep") -> None:
        self.instances += other.instances
        self.passed += other.passed
        self.failed += other.failed
        if self.first_counterexample is None:
            self.first_counterexample = other.first_counterexample
        for key, val in other.details.items():
            if isinstance(val, int) and not isinstance(val, bool):
                self.details[key] = self.details.get(key, 0) + val
            else:
                self.details.setdefault(key, val)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.instances > 0

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "n": self.n,
            "k": self.k,
            "seed": self.seed,
            "checks": self.checks,
            "instances": self.instances,
            "passed": self.passed,
            "failed": self.failed,
            "first_counterexample": self.first_counterexample,
            "details": dict(sorted(self.details.items())),
            "status": "pass" if self.ok else "fail",
        }


def verify_characterisation(n: int, k: int = 2, seed: int = 0, jobs: int = 1, sample: int | None = None) -> InstanceSweep:
    from .sweeps import characterisation_sweep

    return characterisation_sweep(n, k, seed=seed, jobs=jobs, sample=sample)


def verify_existence_uniqueness(n: int, seed: int = 0, jobs: int = 1, sample: int | None = None) -> InstanceSweep:
    from .sweeps import existence_uniqueness_sweep

    return existence_uniqueness_sweep(n, seed=seed, jobs=jobs, sample=sample)
