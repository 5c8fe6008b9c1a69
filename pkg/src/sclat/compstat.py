"""Monotone comparative statics on finite chains of reals."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Collection, Iterable, Sequence

import numpy as np

from .errors import EmptyInput, InputError, UniverseTooLarge
from .lattice import join, meet
from .oracle import InstanceSweep
from .poset import Poset
from .preference import Profile, WeakOrder, parse_ranking, sc_dominates, sc_dominates_ranks, weak_order_ranks

MAX_UNIVERSE_CHAIN = 3


def _label(v: float) -> str:
    return format(v, "g")


@dataclass(frozen=True)
class RealChain:
    """Distinct reals in increasing order; the induced order is the usual one."""

    values: tuple[float, ...]

    def __post_init__(self):
        if not self.values:
            raise EmptyInput("a chain needs at least one alternative")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise InputError("chain values must be strictly increasing")
        if len(set(self.elements)) != len(self.values):
            raise InputError("chain values must have distinct labels")

    @classmethod
    def of(cls, values: Iterable[float]) -> "RealChain":
        return cls(tuple(sorted(values)))

    @property
    def elements(self) -> tuple[str, ...]:
        return tuple(_label(v) for v in self.values)

    @property
    def poset(self) -> Poset:
        return _chain_poset(self.elements)

    def value(self, element: str) -> float:
        return self.values[self.elements.index(element)]

    def order(self, text: str) -> WeakOrder:
        return parse_ranking(text, self.elements)


@lru_cache(maxsize=None)
def _chain_poset(elements: tuple[str, ...]) -> Poset:
    # elements listed low to high
    rows = tuple((1 << (i + 1)) - 1 for i in range(len(elements)))
    return Poset(elements, rows)


AltSet = tuple  # sorted tuple of chain values


def argmax_set(pref: WeakOrder, c: RealChain) -> AltSet:
    return tuple(v for v, r in zip(c.values, pref.ranks) if r == 0)


def consensus(P: Profile | Sequence[WeakOrder], c: RealChain) -> AltSet:
    sets = [set(argmax_set(m, c)) for m in P]
    return tuple(sorted(set.intersection(*sets)))


def possibly_optimal(P: Profile | Sequence[WeakOrder], c: RealChain) -> AltSet:
    return tuple(sorted(set().union(*(argmax_set(m, c) for m in P))))


def sso_dominates(A: Collection[float], B: Collection[float]) -> bool:
    """Strong set order; vacuous when either set is empty."""
    A, B = set(A), set(B)
    return all(max(a, b) in A and min(a, b) in B for a in A for b in B)


def aso_dominates(A: Collection[float], B: Collection[float]) -> bool:
    """For each a, b: something in A at least max(a, b), something in B at most min(a, b)."""
    if not A or not B:
        raise EmptyInput("the alternative set order needs nonempty sets")
    top_a, bottom_b = max(A), min(B)
    return all(top_a >= max(a, b) and bottom_b <= min(a, b) for a in A for b in B)


def sso_on_preferences(Ph: Iterable[WeakOrder], Pl: Iterable[WeakOrder], c: RealChain) -> bool:
    """Strong set order on preference sets, with joins and meets from the lattice module."""
    Ph, Pl = list(Ph), list(Pl)
    p = c.poset
    for h in Ph:
        for l in Pl:
            pair = Profile((h, l))
            if join(pair, p) not in Ph or meet(pair, p) not in Pl:
                return False
    return True


def aso_on_preferences(Ph: Iterable[WeakOrder], Pl: Iterable[WeakOrder], c: RealChain) -> bool:
    """Alternative set order on preference sets: some member of Ph dominates each join,
    and each meet dominates some member of Pl."""
    Ph, Pl = list(Ph), list(Pl)
    p = c.poset
    for h in Ph:
        for l in Pl:
            pair = Profile((h, l))
            j, m = join(pair, p), meet(pair, p)
            if not any(sc_dominates(h2, j, p) for h2 in Ph):
                return False
            if not any(sc_dominates(m, l2, p) for l2 in Pl):
                return False
    return True


class PreferenceUniverse:
    """All weak orders on a chain, with join/meet/dominance tables and set masks.

    A preference set is a bitmask over the orders' indices.
    """

    def __init__(self, c: RealChain, limit: int = MAX_UNIVERSE_CHAIN):
        if len(c.values) > limit:
            raise UniverseTooLarge(f"the full set universe is limited to chains of {limit} alternatives")
        self.chain = c
        p = c.poset
        self.ranks = weak_order_ranks(len(c.values))
        self.orders = [WeakOrder(c.elements, r) for r in self.ranks]
        index = {o: i for i, o in enumerate(self.orders)}
        m = self.m = len(self.orders)
        self.join = np.zeros((m, m), dtype=np.int64)
        self.meet = np.zeros((m, m), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                pair = Profile((self.orders[i], self.orders[j]))
                self.join[i, j] = index[join(pair, p)]
                self.meet[i, j] = index[meet(pair, p)]
        pairs = p.strict_pairs()
        self.dom = np.array([[sc_dominates_ranks(a, b, pairs) for b in self.ranks] for a in self.ranks])
        self.argmax = np.array([sum(1 << k for k, r in enumerate(rk) if r == 0) for rk in self.ranks], dtype=np.int64)
        self.sets = np.arange(1, 1 << m, dtype=np.int64)
        member = (self.sets[:, None] >> np.arange(m)[None, :]) & 1 == 1
        self.member = member
        full = (1 << len(c.values)) - 1
        self.consensus = np.array([_fold_and(self.argmax[row], full) for row in member], dtype=np.int64)
        self.possible = np.array([_fold_or(self.argmax[row]) for row in member], dtype=np.int64)

    def mask(self, orders: Iterable[WeakOrder]) -> int:
        idx = {o: i for i, o in enumerate(self.orders)}
        return sum(1 << idx[o] for o in set(orders))

    def _closure_masks(self, table: np.ndarray, targets: np.ndarray) -> np.ndarray:
        """out[s]: orders l such that table[h, l] lies in targets[s] for every h in set s."""
        m = self.m
        hit = (targets[:, None, None] >> table[None, :, :]) & 1 == 1  # [set, h, l]
        good = np.where(self.member[:, :, None], hit, True).all(axis=1)  # [set, l]
        return (good.astype(np.int64) << np.arange(m)[None, :]).sum(axis=1)

    def sso_pairs_masks(self) -> tuple[np.ndarray, np.ndarray]:
        """(A, B) with Ph over Pl iff Pl within A[Ph] and Ph within B[Pl]."""
        return self._closure_masks(self.join, self.sets), self._closure_masks(self.meet.T, self.sets)

    def aso_pairs_masks(self) -> tuple[np.ndarray, np.ndarray]:
        m = self.m
        bit = 1 << np.arange(m)
        # up[s]: orders dominated by some member; down[s]: orders dominating some member
        up = np.array([(bit * self.dom[row].any(axis=0)).sum() for row in self.member], dtype=np.int64)
        down = np.array([(bit * self.dom[:, row].any(axis=1)).sum() for row in self.member], dtype=np.int64)
        return self._closure_masks(self.join, up), self._closure_masks(self.meet.T, down)

    def dominated_sets(self, hi: int, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Boolean vector over sets: which sets the set with index ``hi`` dominates."""
        s = self.sets
        return ((s & ~A[hi]) == 0) & ((s[hi] & ~B) == 0)


def _fold_and(values, start):
    out = start
    for v in values:
        out &= int(v)
    return out


def _fold_or(values):
    out = 0
    for v in values:
        out |= int(v)
    return out


def _alt_mask_table(k: int, rel) -> np.ndarray:
    """rel(A, B) for all alternative-index bitmasks."""
    size = 1 << k
    out = np.zeros((size, size), dtype=bool)
    for a in range(size):
        for b in range(size):
            A = [i for i in range(k) if a >> i & 1]
            B = [i for i in range(k) if b >> i & 1]
            try:
                out[a, b] = rel(A, B)
            except EmptyInput:
                out[a, b] = False
    return out


class MonotoneSCF:
    """Monotone selection from consensus extended to every preference set.

    On sets with a nonempty consensus the base selection is its largest
    element, which is increasing because consensus is monotone. Every set
    then takes the smallest base value over the sets with a consensus that
    dominate it or equal it, or the top alternative if there are none.
    Equality is added explicitly: a set that is not closed under joins and
    meets does not dominate itself.
    """

    def __init__(self, c: RealChain):
        u = self.universe = PreferenceUniverse(c)
        k = len(c.values)
        self.A, self.B = u.sso_pairs_masks()
        has = u.consensus != 0
        base = np.array([int(v).bit_length() - 1 for v in u.consensus])
        psi = np.full(len(u.sets), k - 1)
        for hi in np.flatnonzero(has):
            lo = u.dominated_sets(hi, self.A, self.B).copy()
            lo[hi] = True
            psi[lo] = np.minimum(psi[lo], base[hi])
        self.psi_index = psi

    def value(self, P: Iterable[WeakOrder]) -> float:
        mask = self.universe.mask(P)
        if mask == 0:
            raise EmptyInput("preference set is empty")
        return self.universe.chain.values[int(self.psi_index[mask - 1])]


@lru_cache(maxsize=8)
def _scf(c: RealChain) -> MonotoneSCF:
    return MonotoneSCF(c)


def monotone_scf_psi(P: Iterable[WeakOrder], c: RealChain) -> float:
    return _scf(c).value(P)


def mcs_theorem_sweep(size: int = 5) -> InstanceSweep:
    """Dominance between two preferences moves their argmax sets up in the strong set order."""
    c = RealChain.of(range(1, size + 1))
    p = c.poset
    ranks = weak_order_ranks(size)
    pairs = p.strict_pairs()
    argmax = [tuple(k for k, r in enumerate(rk) if r == 0) for rk in ranks]
    sweep = InstanceSweep("mcs_theorem", size, checks=["argmax_sso_under_dominance"])
    dominating = 0
    for hi, rh in enumerate(ranks):
        for lo, rl in enumerate(ranks):
            ok = True
            if sc_dominates_ranks(rh, rl, pairs):
                dominating += 1
                ok = sso_dominates(argmax[hi], argmax[lo])
            sweep.record(ok, None if ok else {"hi": str(WeakOrder(c.elements, rh)), "lo": str(WeakOrder(c.elements, rl))})
    sweep.details = {"dominating_pairs": dominating}
    return sweep


def _set_pair_sweep(name: str, A, B, u: PreferenceUniverse, values, alt_table, nonempty: bool) -> InstanceSweep:
    sweep = InstanceSweep(name, len(u.chain.values), checks=[name])
    related = 0
    for hi in range(len(u.sets)):
        lo = u.dominated_sets(hi, A, B)
        count = int(lo.sum())
        related += count
        bad = ~alt_table[values[hi], values[lo]]
        nbad = int(bad.sum())
        sweep.passed += count - nbad
        sweep.failed += nbad
        if nbad and sweep.first_counterexample is None:
            lo_idx = int(np.flatnonzero(lo)[np.flatnonzero(bad)[0]])
            sweep.first_counterexample = {
                "higher_set": [str(u.orders[i]) for i in range(u.m) if u.sets[hi] >> i & 1],
                "lower_set": [str(u.orders[i]) for i in range(u.m) if u.sets[lo_idx] >> i & 1],
            }
    sweep.instances = sweep.passed + sweep.failed
    sweep.details = {"ordered_set_pairs": len(u.sets) ** 2, "related_pairs": related}
    return sweep


def consensus_sweep(size: int = 3) -> InstanceSweep:
    """Strong-set-order increases of a preference set move its consensus up (vacuous when empty)."""
    u = PreferenceUniverse(RealChain.of(range(1, size + 1)))
    A, B = u.sso_pairs_masks()
    table = _alt_mask_table(size, sso_dominates)
    return _set_pair_sweep("consensus_sso", A, B, u, u.consensus, table, nonempty=False)


def robust_sweep(size: int = 3) -> InstanceSweep:
    """Alternative-set-order increases move the possibly-optimal set up in that order."""
    u = PreferenceUniverse(RealChain.of(range(1, size + 1)))
    A, B = u.aso_pairs_masks()
    table = _alt_mask_table(size, aso_dominates)
    return _set_pair_sweep("possibly_optimal_aso", A, B, u, u.possible, table, nonempty=True)


def psi_sweep(size: int = 3) -> InstanceSweep:
    """The extended selection is monotone on all preference sets and picks from the consensus."""
    c = RealChain.of(range(1, size + 1))
    scf = _scf(c)
    u = scf.universe
    psi = scf.psi_index
    sweep = InstanceSweep("psi_monotone_unanimous", size, checks=["monotone", "respects_unanimity"])
    for s in range(len(u.sets)):
        lo = u.dominated_sets(s, scf.A, scf.B)
        mono = bool((psi[s] >= psi[lo]).all())
        cons = int(u.consensus[s])
        unan = cons == 0 or bool(cons >> int(psi[s]) & 1)
        ok = mono and unan
        sweep.record(ok, None if ok else {"set": [str(u.orders[i]) for i in range(u.m) if u.sets[s] >> i & 1], "monotone": mono, "unanimous": unan})
    sweep.details = {"sets": len(u.sets), "sets_with_consensus": int((u.consensus != 0).sum()), "sets_without_dominating_consensus_set": int((psi == size - 1).sum())}
    return sweep
