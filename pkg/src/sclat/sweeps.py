"""Exhaustive and seeded sweeps over (poset, profile) instances.

Each poset is handled by one worker call. The oracle side uses the full
dominance matrix among all weak orders; the chain side uses the sweep
kernel. Results are merged in input order, so reports are reproducible.
"""

from __future__ import annotations

import multiprocessing as mp
import os
import random
from typing import Callable, Iterable, Sequence

import numpy as np

from .kernels import profile_pair_codes
from .oracle import (
    InstanceSweep,
    default_elements,
    dominance_matrix,
    poset_rows,
    random_poset,
)
from .poset import Poset, bits, dual, is_complete, transitive_reduction
from .preference import weak_order_ranks
from .structure import (
    NEITHER,
    classify_fork,
    elaborated_fork_criterion,
    find_chalice,
    find_crown,
    find_diamond,
    find_weak_cycle,
    is_chalice,
    is_crown,
    is_crown_and_diamond_free,
    is_diamond,
    is_improper_crown4,
    is_weak_cycle,
    iter_crowns,
)


def resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        jobs = int(os.environ.get("SCLAT_JOBS", "1") or 1)
    if jobs <= 0:
        jobs = os.cpu_count() or 1
    return jobs


def run_ordered(fn: Callable, items: Sequence, jobs: int | None = 1) -> list:
    jobs = resolve_jobs(jobs)
    if jobs == 1 or len(items) < 2:
        return [fn(it) for it in items]
    ctx = mp.get_context("fork")
    with ctx.Pool(jobs) as pool:
        return pool.map(fn, items, chunksize=max(1, len(items) // (jobs * 8)))


def order_codes(p: Poset, ranks: np.ndarray) -> np.ndarray:
    """Each weak order's two-bit pattern on the strict pairs, matching the kernel layout."""
    codes = np.zeros(len(ranks), dtype=np.int64)
    for k, (x, y) in enumerate(p.strict_pairs()):
        codes |= (ranks[:, x] <= ranks[:, y]).astype(np.int64) << (2 * k)
        codes |= (ranks[:, y] <= ranks[:, x]).astype(np.int64) << (2 * k + 1)
    return codes


def preference_bits(n: int, ranks: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Bit ``x*n + y`` set when the order ranks x weakly (strictly) over y."""
    weak = np.zeros(len(ranks), dtype=np.int64)
    strict = np.zeros(len(ranks), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            if x != y:
                weak |= (ranks[:, x] <= ranks[:, y]).astype(np.int64) << (x * n + y)
                strict |= (ranks[:, x] < ranks[:, y]).astype(np.int64) << (x * n + y)
    return weak, strict


def _minimum(bound: np.ndarray, violates: np.ndarray) -> np.ndarray:
    """Rows of ``bound`` restricted to members u with no bound c where violates[c, u]."""
    counts = bound.astype(np.float32) @ violates.astype(np.float32)
    return bound & (counts == 0)


class PosetInstances:
    """Everything needed to check a batch of two-member profiles on one poset."""

    def __init__(self, p: Poset, pairs: np.ndarray | None = None):
        self.poset = p
        self.ranks = np.array(weak_order_ranks(p.n), dtype=np.int64)
        m = len(self.ranks)
        if pairs is None:
            pairs = np.array([(i, j) for i in range(m) for j in range(i, m)], dtype=np.int64)
        self.pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        self.dom = dominance_matrix(p, self.ranks)

    def brute(self):
        i, j = self.pairs[:, 0], self.pairs[:, 1]
        dom = self.dom
        ub = dom[:, i].T & dom[:, j].T
        lb = dom[i, :] & dom[j, :]
        mub = _minimum(ub, ~dom)
        mlb = _minimum(lb, ~dom.T)
        return ub, mub, lb, mlb

    def chain_side(self):
        p = self.poset
        core, need_w, need_s = profile_pair_codes(p.rows, self.ranks, self.pairs)
        mub = order_codes(p, self.ranks)[None, :] == core[:, None]
        d = dual(p)
        core_d, _, _ = profile_pair_codes(d.rows, self.ranks, self.pairs)
        mlb = order_codes(d, self.ranks)[None, :] == core_d[:, None]
        return mub, mlb, need_w, need_s

    def describe(self, row: int, found=None) -> dict:
        p = self.poset
        red = transitive_reduction(p)
        out = {
            "poset": {"elements": list(p.elements), "covers": [list(c) for c in red.pairs()]},
            "profile": [self.order_text(self.pairs[row, 0]), self.order_text(self.pairs[row, 1])],
        }
        if found:
            for key, mat in found.items():
                out[key] = [self.order_text(c) for c in np.flatnonzero(mat[row])]
        return out

    def order_text(self, c: int) -> str:
        from .preference import WeakOrder

        return str(WeakOrder(self.poset.elements, tuple(int(v) for v in self.ranks[c])))


def _sample_pairs(m: int, count: int, rng: random.Random) -> np.ndarray:
    return np.array([sorted((rng.randrange(m), rng.randrange(m))) for _ in range(count)], dtype=np.int64)


def _poset_list(n: int, seed: int, sample_posets: int | None) -> list[tuple[int, ...]]:
    rows = poset_rows(n)
    if sample_posets is not None and sample_posets < len(rows):
        rng = random.Random(f"posets:{n}:{seed}")
        rows = [rows[i] for i in sorted(rng.sample(range(len(rows)), sample_posets))]
    return rows


def _pairs_for(n: int, k: int, index: int, seed: int, sample: int | None):
    m = len(weak_order_ranks(n))
    if k == 1:
        return np.array([(i, i) for i in range(m)], dtype=np.int64)
    if sample is None:
        return None
    return _sample_pairs(m, sample, random.Random(f"profiles:{n}:{seed}:{index}"))


def _characterisation_task(args) -> InstanceSweep:
    n, k, rows, index, seed, sample = args
    p = Poset(default_elements(n), rows)
    inst = PosetInstances(p, _pairs_for(n, k, index, seed, sample))
    _, mub_b, _, mlb_b = inst.brute()
    mub_c, mlb_c, _, _ = inst.chain_side()
    sweep = InstanceSweep("characterisation", n, k, seed)
    bad = np.flatnonzero((mub_b != mub_c).any(axis=1) | (mlb_b != mlb_c).any(axis=1))
    sweep.instances = len(inst.pairs)
    sweep.failed = len(bad)
    sweep.passed = sweep.instances - sweep.failed
    if len(bad):
        sweep.first_counterexample = inst.describe(
            bad[0], {"brute_mub": mub_b, "chain_mub": mub_c, "brute_mlb": mlb_b, "chain_mlb": mlb_c}
        )
    sweep.details = {
        "profiles_with_join": int(mub_b.any(axis=1).sum()),
        "profiles_with_meet": int(mlb_b.any(axis=1).sum()),
    }
    return sweep


def characterisation_sweep(
    n: int, k: int = 2, seed: int = 0, jobs: int | None = 1, sample: int | None = None, sample_posets: int | None = None
) -> InstanceSweep:
    """Brute-force minimum upper (and maximum lower) bound sets equal the chain-based ones.

    ``sample`` draws that many seeded two-member profiles per poset instead
    of all of them; ``sample_posets`` draws a seeded subset of posets.
    """
    if k not in (1, 2):
        raise ValueError("profiles of one or two members are supported")
    rows = _poset_list(n, seed, sample_posets)
    tasks = [(n, k, r, idx, seed, sample) for idx, r in enumerate(rows)]
    total = InstanceSweep("characterisation", n, k, seed, checks=["mub_equal", "mlb_equal"])
    for part in run_ordered(_characterisation_task, tasks, jobs):
        total.merge(part)
    total.details["posets"] = len(rows)
    total.details["sampled_profiles_per_poset"] = sample
    return total


def _existence_task(args) -> InstanceSweep:
    n, rows, index, seed, sample = args
    p = Poset(default_elements(n), rows)
    inst = PosetInstances(p, _pairs_for(n, 2, index, seed, sample))
    _, mub_b, _, mlb_b = inst.brute()
    mub_c, mlb_c, _, _ = inst.chain_side()
    free = is_crown_and_diamond_free(p)
    complete = is_complete(p)
    all_join = bool(mub_b.any(axis=1).all())
    all_meet = bool(mlb_b.any(axis=1).all())
    unique = bool((mub_b.sum(axis=1) == 1).all())
    unique_meet = bool((mlb_b.sum(axis=1) == 1).all())
    agree = bool((mub_b == mub_c).all() and (mlb_b == mlb_c).all())
    if sample is None:
        ok = all_join == free and all_meet == free and unique == complete and unique_meet == complete
    else:
        # a sample can only confirm the guaranteed direction
        ok = (not free or (all_join and all_meet)) and (not complete or (unique and unique_meet))
    ok = ok and agree
    sweep = InstanceSweep("existence_uniqueness", n, 2, seed)
    counter = None
    if not ok:
        counter = {
            "poset": {"elements": list(p.elements), "covers": [list(c) for c in transitive_reduction(p).pairs()]},
            "crown_and_diamond_free": free,
            "complete": complete,
            "every_pair_has_join": all_join,
            "every_pair_has_meet": all_meet,
            "join_unique": unique,
            "meet_unique": unique_meet,
            "chain_route_agrees": agree,
        }
    sweep.record(ok, counter)
    sweep.details = {
        "profiles": len(inst.pairs),
        "crown_and_diamond_free_posets": int(free),
        "complete_posets": int(complete),
    }
    return sweep


def existence_uniqueness_sweep(
    n: int, seed: int = 0, jobs: int | None = 1, sample: int | None = None, sample_posets: int | None = None
) -> InstanceSweep:
    """Per poset: every pair has a join (and a meet) iff crown- and diamond-free; joins unique iff complete."""
    rows = _poset_list(n, seed, sample_posets)
    tasks = [(n, r, idx, seed, sample) for idx, r in enumerate(rows)]
    total = InstanceSweep(
        "existence_uniqueness",
        n,
        2,
        seed,
        checks=["pair_join_iff_crown_diamond_free", "pair_meet_iff_crown_diamond_free", "unique_iff_complete", "chain_route_agrees"],
    )
    for part in run_ordered(_existence_task, tasks, jobs):
        total.merge(part)
    total.details["posets"] = len(rows)
    total.details["sampled_profiles_per_poset"] = sample
    return total


def _swf_task(args) -> InstanceSweep:
    n, rows = args
    p = Poset(default_elements(n), rows)
    inst = PosetInstances(p)
    ub, mub_b, _, _ = inst.brute()
    mub_c, _, need_w, need_s = inst.chain_side()
    wbits, sbits = preference_bits(n, inst.ranks)
    meets = ((need_w[:, None] & ~wbits[None, :]) == 0) & ((need_s[:, None] & ~sbits[None, :]) == 0)
    acceptable = ub & meets
    exists = acceptable.any(axis=1)
    only_joins = not (acceptable & ~mub_c).any()
    everywhere = bool(exists.all())
    fork = classify_fork(p)
    elaborated = elaborated_fork_criterion(p)
    ok = everywhere == (fork != NEITHER) == elaborated and only_joins and bool((mub_b == mub_c).all())
    sweep = InstanceSweep("swf", n, 2)
    counter = None
    if not ok:
        counter = {
            "poset": {"elements": list(p.elements), "covers": [list(c) for c in transitive_reduction(p).pairs()]},
            "fork_class": fork,
            "elaborated_criterion": elaborated,
            "acceptable_for_every_profile": everywhere,
            "only_minimum_upper_bounds_acceptable": only_joins,
        }
        if not everywhere:
            counter["profile_without_acceptable"] = inst.describe(int(np.flatnonzero(~exists)[0]))["profile"]
    sweep.record(ok, counter)
    sweep.details = {"fork_posets": int(fork != NEITHER), "profiles": len(inst.pairs)}
    return sweep


def swf_sweep(n_max: int = 4, jobs: int | None = 1) -> InstanceSweep:
    """Acceptable aggregation exists for every two-member profile iff fork-shaped iff no forbidden subposet."""
    total = InstanceSweep("swf", n_max, 2, checks=["per_profile_existence_iff_fork", "fork_iff_elaborated", "only_joins_acceptable"])
    tasks = [(n, r) for n in range(1, n_max + 1) for r in poset_rows(n)]
    for part in run_ordered(_swf_task, tasks, jobs):
        total.merge(part)
    total.details["posets"] = len(tasks)
    return total


def _structure_checks(p: Poset) -> tuple[bool, dict]:
    red = transitive_reduction(p)
    crown, diamond = find_crown(p), find_diamond(p)
    cycle, chalice = find_weak_cycle(red), find_chalice(red)
    witnesses_ok = (
        (crown is None or is_crown(p, crown))
        and (diamond is None or is_diamond(p, diamond))
        and (cycle is None or is_weak_cycle(red, cycle))
        and (chalice is None or is_chalice(red, chalice))
    )
    free = crown is None and diamond is None
    reduction_clean = cycle is None and chalice is None
    proper4 = False
    long_crown = False
    for c in iter_crowns(p):
        if len(c) > 4:
            long_crown = True
            break
        if not is_improper_crown4(p, tuple(p.elements[i] for i in c)):
            proper4 = True
            break
    if not proper4 and not long_crown:
        long_crown = find_crown(p, min_length=6) is not None
    bps_left = diamond is None and not long_crown and not proper4
    fork_ok = (classify_fork(p) != NEITHER) == elaborated_fork_criterion(p) if p.n <= 5 else True
    ok = witnesses_ok and (free == reduction_clean) and (bps_left == (cycle is None)) and fork_ok
    info = {
        "crown_and_diamond_free": free,
        "reduction_weak_cycle_and_chalice_free": reduction_clean,
        "no_diamond_long_crown_or_proper_4_crown": bps_left,
        "reduction_weak_cycle_free": cycle is None,
        "witnesses_revalidate": witnesses_ok,
        "fork_matches_elaborated": fork_ok,
    }
    return ok, info


def _structure_task(args) -> InstanceSweep:
    label, n, rows = args
    p = Poset(default_elements(n), rows)
    ok, info = _structure_checks(p)
    sweep = InstanceSweep("cycles_chalices", n)
    counter = None
    if not ok:
        counter = {"source": label, "poset": {"elements": list(p.elements), "covers": [list(c) for c in transitive_reduction(p).pairs()]}, **info}
    sweep.record(ok, counter)
    sweep.details = {"crown_and_diamond_free": int(info["crown_and_diamond_free"])}
    return sweep


def cycles_chalices_sweep(
    n_max: int = 5, random_sizes: Iterable[int] = (6, 7), random_count: int = 500, seed: int = 0, jobs: int | None = 1
) -> InstanceSweep:
    """Crown/diamond-freeness against weak cycles and chalices of the transitive reduction.

    Also checks the weak-cycle characterisation that excludes improper
    4-crowns and, up to five elements, the fork criterion.
    """
    tasks = [("exhaustive", n, r) for n in range(1, n_max + 1) for r in poset_rows(n)]
    for size in random_sizes:
        rng = random.Random(f"random-posets:{size}:{seed}")
        for _ in range(random_count):
            tasks.append((f"random:{size}", size, random_poset(size, rng).rows))
    total = InstanceSweep(
        "cycles_chalices",
        n_max,
        seed=seed,
        checks=["crown_diamond_free_iff_reduction_clean", "weak_cycle_free_characterisation", "witnesses_revalidate", "fork_iff_elaborated"],
    )
    for part in run_ordered(_structure_task, tasks, jobs):
        total.merge(part)
    total.details["exhaustive_posets"] = sum(1 for t in tasks if t[0] == "exhaustive")
    total.details["random_posets"] = sum(1 for t in tasks if t[0] != "exhaustive")
    return total
