from itertools import permutations

import pytest

from sclat.oracle import enumerate_posets
from sclat.poset import chain, poset_from_covers, transitive_reduction
from sclat.structure import (
    DOWN_FORK,
    NEITHER,
    SHATTERED_DOWN_FORK,
    SHATTERED_UP_FORK,
    UP_FORK,
    classify_fork,
    elaborated_fork_criterion,
    find_chalice,
    find_crown,
    find_diamond,
    find_forbidden_four_poset,
    find_weak_cycle,
    fork_partition,
    is_chalice,
    is_crown,
    is_crown_and_diamond_free,
    is_diamond,
    is_four_poset,
    is_weak_cycle,
    structure_report,
)

from fixtures import ANTI2, CHAIN3, CHALICE5, CROWN4, DIAMOND4, HOOK, PERM3, STATUSQUO


def _inc(p, a, b):
    return a != b and not p.has(a, b) and not p.has(b, a)


def _gt(p, a, b):
    return a != b and p.has(a, b)


def _brute_diamond(p):
    return any(
        _gt(p, a, b) and _gt(p, a, c) and _gt(p, b, d) and _gt(p, c, d) and _inc(p, b, c)
        for a, b, c, d in permutations(range(p.n), 4)
    )


def _brute_crown4(p):
    # a, c above b, d; every other pair incomparable
    return any(
        _gt(p, a, b) and _gt(p, c, b) and _gt(p, c, d) and _gt(p, a, d) and _inc(p, a, c) and _inc(p, b, d)
        for a, b, c, d in permutations(range(p.n), 4)
    )


def _undirected_cycle(rel):
    parent = list(range(rel.n))

    def root(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for a, b in rel.pairs():
        i, j = rel.index(a), rel.index(b)
        ri, rj = root(i), root(j)
        if ri == rj:
            return True
        parent[ri] = rj
    return False


def test_crown_examples():
    assert find_crown(CROWN4) == ("x", "y", "z", "w")
    assert find_crown(CHAIN3) is None
    assert find_crown(DIAMOND4) is None


def test_diamond_examples():
    assert find_diamond(DIAMOND4) == ("x", "y", "z", "w")
    assert find_diamond(CROWN4) is None
    assert find_diamond(PERM3) == ("321", "231", "312", "123")


def test_crown_and_diamond_freeness():
    assert is_crown_and_diamond_free(HOOK)
    assert not is_crown_and_diamond_free(CROWN4)
    # a lattice that is not a chain contains a diamond
    assert not is_crown_and_diamond_free(DIAMOND4)


def test_chalice_examples():
    assert find_chalice(transitive_reduction(CHALICE5)) == ("a", "b", "e", "c", "d")
    assert find_chalice(transitive_reduction(CHAIN3)) is None
    assert find_chalice(transitive_reduction(PERM3)) is None


def test_weak_cycle_examples():
    cyc = find_weak_cycle(transitive_reduction(PERM3))
    assert cyc is not None and sorted(cyc) == sorted(PERM3.elements)
    assert is_weak_cycle(transitive_reduction(PERM3), cyc)
    assert find_weak_cycle(transitive_reduction(CHAIN3)) is None
    assert find_weak_cycle(transitive_reduction(DIAMOND4)) == ("x", "y", "w", "z")


def test_fork_examples():
    assert classify_fork(STATUSQUO) == SHATTERED_DOWN_FORK
    assert classify_fork(HOOK) == NEITHER
    assert classify_fork(CHAIN3) == UP_FORK
    assert classify_fork(ANTI2) == SHATTERED_UP_FORK
    assert classify_fork(poset_from_covers("abc", [("a", "c"), ("b", "c")])) == UP_FORK
    assert classify_fork(poset_from_covers("abcd", [("a", "b"), ("b", "c"), ("b", "d")])) == DOWN_FORK
    part = fork_partition(STATUSQUO, SHATTERED_DOWN_FORK)
    assert part["apex"] == "x0" and set(part["head"]) == {"y1", "y2", "y3"} and set(part["isolated"]) == {"z1", "z2"}


def test_forbidden_four_examples():
    kind, witness = find_forbidden_four_poset(HOOK)
    assert kind == "hook" and is_four_poset(HOOK, "hook", witness)
    dumbbells = poset_from_covers("abcd", [("a", "b"), ("c", "d")])
    assert find_forbidden_four_poset(dumbbells)[0] == "dumbbells"
    assert find_forbidden_four_poset(STATUSQUO) is None
    assert elaborated_fork_criterion(STATUSQUO)
    assert not elaborated_fork_criterion(HOOK)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_detectors_against_brute(n):
    for p in enumerate_posets(n):
        d, c = find_diamond(p), find_crown(p)
        assert (d is not None) == _brute_diamond(p)
        # below six elements every crown has length four
        assert (c is not None) == _brute_crown4(p)
        if d is not None:
            assert is_diamond(p, d)
        if c is not None:
            assert is_crown(p, c)
        red = transitive_reduction(p)
        w = find_weak_cycle(red)
        assert (w is not None) == _undirected_cycle(red)
        if w is not None:
            assert is_weak_cycle(red, w)
        ch = find_chalice(red)
        if ch is not None:
            assert is_chalice(red, ch)
        assert (classify_fork(p) != NEITHER) == elaborated_fork_criterion(p)


def test_six_crown_found():
    # a1 > b1 < a2 > b2 < a3 > b3 < a1
    p = poset_from_covers(
        ["a1", "b1", "a2", "b2", "a3", "b3"],
        [("a1", "b1"), ("a2", "b1"), ("a2", "b2"), ("a3", "b2"), ("a3", "b3"), ("a1", "b3")],
    )
    assert find_crown(p, min_length=6) is not None
    assert find_crown(p) is not None and is_crown(p, find_crown(p))
    assert find_diamond(p) is None
    assert not elaborated_fork_criterion(p)


def test_long_chain_is_fork():
    p = chain("abcdef")
    assert classify_fork(p) == UP_FORK
    assert find_forbidden_four_poset(p) is None


def test_report_json():
    rep = structure_report(CROWN4).to_json()
    assert rep["crowns"] == [["x", "y", "z", "w"]]
    assert rep["diamonds"] == []
    assert rep["fork_class"] == NEITHER
    assert rep["four_posets"][0][0] == "crown4"


def test_witness_revalidation_on_sampled_six():
    import random

    from sclat.oracle import random_poset

    rng = random.Random(6)
    for _ in range(200):
        p = random_poset(6, rng)
        for finder, check in ((find_crown, is_crown), (find_diamond, is_diamond)):
            w = finder(p)
            if w is not None:
                assert check(p, w)
        hit = find_forbidden_four_poset(p)
        if hit is not None:
            assert is_four_poset(p, *hit)
