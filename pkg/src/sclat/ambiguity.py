"""Maxmin preferences over finite acts, via certainty equivalents.

Acts are ordered by: every act over itself, constants over non-constants,
and constants among themselves by prize. Under that order, single-crossing
dominance is exactly "more ambiguity-averse than", and the maxmin
preference of a set is its unique minimum upper bound.

The same code covers lotteries: read states as lottery outcomes, acts as
lotteries, constants as degenerate lotteries, and ambiguity aversion as
risk aversion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import EmptyInput, InputError
from .lattice import is_minimum_upper_bound
from .oracle import InstanceSweep, brute_bounds
from .poset import Poset
from .preference import Profile, WeakOrder, compact, enumerate_weak_orders, sc_dominates, weak_order_ranks


def _label(v: float) -> str:
    return format(v, "g")


@dataclass(frozen=True)
class ActSpace:
    """States, a prize grid and acts; every constant act is present.

    ``names`` lists constants first (increasing prize), then the other acts
    in input order. ``payoffs[i]`` is act i's prize in each state.
    """

    states: tuple[str, ...]
    prizes: tuple[float, ...]
    names: tuple[str, ...]
    payoffs: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if not self.states:
            raise EmptyInput("an act space needs at least one state")
        if not self.prizes or any(b <= a for a, b in zip(self.prizes, self.prizes[1:])):
            raise InputError("prizes must be nonempty and strictly increasing")
        if len(set(self.names)) != len(self.names):
            raise InputError("act names must be distinct")
        if len(set(self.payoffs)) != len(self.payoffs):
            raise InputError("acts must be distinct as functions")
        grid = set(self.prizes)
        for name, pay in zip(self.names, self.payoffs):
            if len(pay) != len(self.states):
                raise InputError(f"act {name} must pay in every state")
            if not set(pay) <= grid:
                raise InputError(f"act {name} pays off the prize grid")
        present = {pay[0] for pay in self.payoffs if len(set(pay)) == 1}
        if present != grid:
            raise InputError("every prize needs a constant act")

    @classmethod
    def build(cls, states: Sequence[str], prizes: Iterable[float], acts: Mapping[str, Mapping[str, float] | Sequence[float]]):
        states = tuple(states)
        prizes = tuple(sorted(set(prizes)))
        named = []
        for name, pay in acts.items():
            if isinstance(pay, Mapping):
                missing = [w for w in states if w not in pay]
                extra = [w for w in pay if w not in states]
                if missing or extra:
                    raise InputError(f"act {name} must map exactly the states {list(states)}")
                pay = tuple(pay[w] for w in states)
            named.append((str(name), tuple(pay)))
        constants = {p[0]: n for n, p in named if len(set(p)) == 1}
        used = {n for n, _ in named}
        const_entries = []
        for z in prizes:
            name = constants.get(z)
            if name is None:
                name = _label(z)
                if name in used:
                    raise InputError(f"act name {name} clashes with the constant act for prize {name}")
            const_entries.append((name, (z,) * len(states)))
        others = [(n, p) for n, p in named if len(set(p)) != 1]
        entries = const_entries + others
        return cls(states, prizes, tuple(n for n, _ in entries), tuple(p for _, p in entries))

    @classmethod
    def from_json(cls, data: Mapping) -> "ActSpace":
        try:
            return cls.build(data["states"], data["prizes"], data.get("acts", {}))
        except KeyError as exc:
            raise InputError(f"act space is missing field {exc.args[0]}") from None

    def to_json(self) -> dict:
        return {
            "states": list(self.states),
            "prizes": list(self.prizes),
            "acts": {n: dict(zip(self.states, p)) for n, p in zip(self.names, self.payoffs)},
        }

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def n_constants(self) -> int:
        return len(self.prizes)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            from .errors import UnknownElement

            raise UnknownElement(name) from None

    def is_constant(self, i: int) -> bool:
        return i < self.n_constants

    def prize(self, i: int) -> float:
        return self.payoffs[i][0]


@dataclass(frozen=True)
class CEPreference:
    """A monotone, solvable preference given by one certainty equivalent per act."""

    space: ActSpace
    ce: tuple[float, ...]

    def __post_init__(self):
        if len(self.ce) != self.space.n:
            raise InputError("need one certainty equivalent per act")
        grid = set(self.space.prizes)
        for i, v in enumerate(self.ce):
            if v not in grid:
                raise InputError(f"certainty equivalent of {self.space.names[i]} is off the prize grid")
            if self.space.is_constant(i) and v != self.space.prize(i):
                raise InputError(f"constant act {self.space.names[i]} must be its own certainty equivalent")

    @classmethod
    def from_map(cls, space: ActSpace, ce: Mapping[str, float]) -> "CEPreference":
        for name in ce:
            space.index(name)
        values = []
        for i, name in enumerate(space.names):
            if space.is_constant(i):
                values.append(ce.get(name, space.prize(i)))
            elif name in ce:
                values.append(ce[name])
            else:
                raise InputError(f"missing certainty equivalent for act {name}")
        return cls(space, tuple(values))

    @classmethod
    def from_json(cls, space: ActSpace, data: Mapping) -> "CEPreference":
        if "ce" not in data:
            raise InputError("CE preference needs a 'ce' field")
        return cls.from_map(space, data["ce"])

    def to_json(self) -> dict:
        return {"ce": dict(zip(self.space.names, self.ce))}

    def value(self, name: str) -> float:
        return self.ce[self.space.index(name)]

    def weak_order(self) -> WeakOrder:
        return WeakOrder(self.space.names, compact([-v for v in self.ce]))


def induced_act_order(s: ActSpace) -> Poset:
    rows = []
    for x in range(s.n):
        row = 1 << x
        if s.is_constant(x):
            for y in range(s.n):
                if not s.is_constant(y) or s.prize(x) > s.prize(y):
                    row |= 1 << y
        rows.append(row)
    return Poset(s.names, tuple(rows))


def more_ambiguity_averse(hi: CEPreference, lo: CEPreference, s: ActSpace | None = None) -> bool:
    """Whenever lo (strictly) prefers a constant to an act, so does hi."""
    s = s or hi.space
    for x in range(s.n):
        for c in range(s.n_constants):
            if lo.ce[c] >= lo.ce[x] and not hi.ce[c] >= hi.ce[x]:
                return False
            if lo.ce[c] > lo.ce[x] and not hi.ce[c] > hi.ce[x]:
                return False
    return True


def maxmin_preference(P: Sequence[CEPreference], s: ActSpace | None = None) -> CEPreference:
    P = list(P)
    if not P:
        raise EmptyInput("maxmin of an empty set")
    s = s or P[0].space
    return CEPreference(s, tuple(min(m.ce[i] for m in P) for i in range(s.n)))


def is_maxmin_representation(P: Sequence[CEPreference], target: CEPreference | WeakOrder, s: ActSpace | None = None) -> bool:
    """True iff the minimum certainty equivalent ranks acts exactly as ``target``."""
    star = maxmin_preference(P, s)
    t = target.weak_order() if isinstance(target, CEPreference) else target
    if t.elements != star.space.names:
        raise InputError("target must rank the acts of the space")
    n = star.space.n
    return all(
        t.weakly_prefers(star.space.names[x], star.space.names[y]) == (star.ce[x] >= star.ce[y])
        for x in range(n)
        for y in range(n)
    )


def all_ce_preferences(s: ActSpace) -> list[CEPreference]:
    """Every CE preference on the space, in lexicographic order of non-constant CE values."""
    k = s.n - s.n_constants
    fixed = tuple(s.prize(i) for i in range(s.n_constants))
    return [CEPreference(s, fixed + vals) for vals in product(s.prizes, repeat=k)]


def two_state_space(prizes: Sequence[float], acts: int | None = None) -> ActSpace:
    """Two states; non-constant acts in lexicographic order of payoffs, optionally truncated."""
    prizes = tuple(sorted(prizes))
    pays = [(a, b) for a in prizes for b in prizes if a != b]
    if acts is not None:
        pays = pays[:acts]
    return ActSpace.build(("w1", "w2"), prizes, {f"X{_label(a)}{_label(b)}": (a, b) for a, b in pays})


def _profile(P: Sequence[CEPreference]) -> Profile:
    return Profile(tuple(m.weak_order() for m in P))


def _small_profiles(count: int) -> list[tuple[int, int]]:
    return [(i, i) for i in range(count)] + list(combinations(range(count), 2))


def _brute_space_sweep(s: ActSpace, sweep: InstanceSweep) -> None:
    p = induced_act_order(s)
    prefs = all_ce_preferences(s)
    targets = list(enumerate_weak_orders(s.names))
    for i, j in _small_profiles(len(prefs)):
        P = [prefs[i]] if i == j else [prefs[i], prefs[j]]
        prof = _profile(P)
        _, mub, _, _ = brute_bounds(prof, p)
        star = maxmin_preference(P).weak_order()
        rep = [t for t in targets if is_maxmin_representation(P, t)]
        lib = [t for t in targets if is_minimum_upper_bound(t, prof, p)]
        ok = rep == [star] and mub == rep and lib == rep
        sweep.record(ok, None if ok else {"space": s.to_json(), "profile": [m.to_json() for m in P]})


class _KernelSpace:
    """Kernel-side minimum upper bounds and maximum lower bounds for CE pairs."""

    def __init__(self, s: ActSpace):
        from .kernels import profile_pair_codes
        from .poset import dual
        from .sweeps import order_codes

        self.space = s
        self.poset = p = induced_act_order(s)
        self.prefs = all_ce_preferences(s)
        self.ranks = np.array([m.weak_order().ranks for m in self.prefs], dtype=np.int64)
        self.targets = np.array(weak_order_ranks(s.n), dtype=np.int64)
        self.pairs = np.array(_small_profiles(len(self.prefs)), dtype=np.int64)
        core, _, _ = profile_pair_codes(p.rows, self.ranks, self.pairs)
        d = dual(p)
        core_d, _, _ = profile_pair_codes(d.rows, self.ranks, self.pairs)
        self.codes = order_codes(p, self.targets)
        self.codes_d = order_codes(d, self.targets)
        self.core, self.core_d = core, core_d
        index = {tuple(int(v) for v in r): t for t, r in enumerate(self.targets)}
        self.pref_target = np.array([index[tuple(int(v) for v in r)] for r in self.ranks])

    def bounds(self, q: int) -> tuple[np.ndarray, np.ndarray]:
        return np.flatnonzero(self.codes == self.core[q]), np.flatnonzero(self.codes_d == self.core_d[q])


def maxmin_sweep(seed: int = 0, lattice_samples: int = 200) -> InstanceSweep:
    """Maxmin representation coincides with being the minimum upper bound.

    The two-act space is checked against brute-force bounds and the library
    test over every target. The four-act space uses kernel codes over every
    target and samples the library test. The comparative statics for
    inclusion and the strong set order are checked on all sets of at most
    two CE preferences.
    """
    sweep = InstanceSweep("maxmin_characterisation", 7, seed=seed,
                          checks=["maxmin_iff_mub", "unique_mub", "averse_iff_dominance", "inclusion_statics", "sso_statics"])
    small = two_state_space((0, 1))
    _brute_space_sweep(small, sweep)
    sweep.details["brute_profiles"] = sweep.instances

    big = two_state_space((0, 1, 2), acts=4)
    ks = _KernelSpace(big)
    prefs = ks.prefs
    rng = random.Random(seed)
    m = len(prefs)
    join = np.full((m, m), -1)
    meet = np.full((m, m), -1)
    for q, (i, j) in enumerate(ks.pairs):
        mub, mlb = ks.bounds(q)
        P = [prefs[i]] if i == j else [prefs[i], prefs[j]]
        star = _index_of(prefs, maxmin_preference(P))
        top = _index_of(prefs, CEPreference(big, tuple(max(a, b) for a, b in zip(prefs[i].ce, prefs[j].ce))))
        ok = list(mub) == [ks.pref_target[star]] and list(mlb) == [ks.pref_target[top]]
        join[i, j] = join[j, i] = star
        meet[i, j] = meet[j, i] = top
        sweep.record(ok, None if ok else {"profile": [m_.to_json() for m_ in P], "mub_count": len(mub), "mlb_count": len(mlb)})
    sweep.details["kernel_profiles"] = len(ks.pairs)
    sweep.details["targets_per_profile"] = len(ks.targets)

    # library route on a sample of (profile, target) pairs, always including the maxmin target
    p = ks.poset
    for _ in range(lattice_samples):
        q = rng.randrange(len(ks.pairs))
        i, j = ks.pairs[q]
        P = [prefs[i], prefs[j]]
        for t in (ks.targets[ks.pref_target[join[i, j]]], ks.targets[rng.randrange(len(ks.targets))]):
            t = WeakOrder(big.names, tuple(int(v) for v in t))
            ok = is_maxmin_representation(P, t) == is_minimum_upper_bound(t, _profile(P), p)
            sweep.record(ok, None if ok else {"profile": [m_.to_json() for m_ in P], "target": str(t)})

    # more averse is dominance on the act order
    for a in prefs:
        for b in prefs:
            ok = more_ambiguity_averse(a, b) == sc_dominates(a.weak_order(), b.weak_order(), p)
            sweep.record(ok, None if ok else {"hi": a.to_json(), "lo": b.to_json()})

    ce = np.array([m_.ce for m_ in prefs])
    sets = ks.pairs
    star_ce = np.minimum(ce[sets[:, 0]], ce[sets[:, 1]])
    # inclusion: a singleton inside a pair
    inclusion = 0
    for q, (i, j) in enumerate(sets):
        if i == j:
            continue
        for k in (i, j):
            inclusion += 1
            ok = bool((star_ce[q] <= ce[k]).all())
            sweep.record(ok, None if ok else {"larger": [prefs[i].to_json(), prefs[j].to_json()], "smaller": prefs[k].to_json()})
    # strong set order between sets of size at most two, from the kernel join and meet tables
    member = np.zeros((len(sets), m), dtype=bool)
    member[np.arange(len(sets)), sets[:, 0]] = True
    member[np.arange(len(sets)), sets[:, 1]] = True
    related = 0
    for h in range(len(sets)):
        hs = sorted(set(sets[h].tolist()))
        # join of every (x in hi set, y in lo set) must stay in the hi set
        joins_ok = np.ones(len(sets), dtype=bool)
        meets_ok = np.ones(len(sets), dtype=bool)
        for x in hs:
            for col in (0, 1):
                y = sets[:, col]
                joins_ok &= np.isin(join[x, y], hs)
                meets_ok &= member[np.arange(len(sets)), meet[x, y]]
        lo = np.flatnonzero(joins_ok & meets_ok)
        related += len(lo)
        good = (star_ce[h][None, :] <= star_ce[lo]).all(axis=1)
        for l_idx in lo[~good]:
            sweep.record(False, {"higher": [prefs[k].to_json() for k in hs], "lower": [prefs[k].to_json() for k in set(sets[l_idx].tolist())]})
        sweep.instances += int(good.sum())
        sweep.passed += int(good.sum())
    sweep.details["inclusion_pairs"] = inclusion
    sweep.details["sso_related_set_pairs"] = related
    return sweep


def _index_of(prefs: list[CEPreference], pref: CEPreference) -> int:
    return prefs.index(pref)
