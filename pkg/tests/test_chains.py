import random
from itertools import permutations

import pytest

from sclat.chains import (
    build_chain_digraph,
    has_p_chain,
    has_reverse_p_chain,
    has_strict_p_chain,
    is_p_chain,
    witness_chain,
)
from sclat.errors import NotComparable
from sclat.oracle import enumerate_posets
from sclat.poset import dual
from sclat.preference import Profile, enumerate_weak_orders

from fixtures import ANTI2, CHAIN3, CROWN4, HOOK, anti_profile, crown_profile, hook_profile


def _brute_chains(P, p):
    """(weak, strict) reachability from every ordered pair by listing decreasing sequences."""
    n = p.n
    ranks = [m.ranks for m in P]
    weak, strict = set(), set()
    for a in range(n):
        weak.add((a, a))
    for length in range(2, n + 1):
        for seq in permutations(range(n), length):
            if not all(p.has(u, v) for u, v in zip(seq, seq[1:])):
                continue
            if not all(any(r[u] <= r[v] for r in ranks) for u, v in zip(seq, seq[1:])):
                continue
            weak.add((seq[0], seq[-1]))
            if any(any(r[u] < r[v] for r in ranks) for u, v in zip(seq, seq[1:])):
                strict.add((seq[0], seq[-1]))
    return weak, strict


def _check_against_brute(P, p):
    g = build_chain_digraph(P, p)
    weak, strict = _brute_chains(P, p)
    for a in range(p.n):
        for b in range(p.n):
            if not p.has(a, b):
                continue
            ea, eb = p.elements[a], p.elements[b]
            assert has_p_chain(g, ea, eb) == ((a, b) in weak)
            assert has_strict_p_chain(g, ea, eb) == ((a, b) in strict)
            for flag in (False, True):
                w = witness_chain(g, ea, eb, flag)
                assert (w is not None) == ((a, b) in (strict if flag else weak))
                if w is not None:
                    assert w[0] == ea and w[-1] == eb
                    assert is_p_chain(w, P, p, strict=flag)


def test_hook_edges():
    g = build_chain_digraph(hook_profile(), HOOK)
    assert {(a, b) for a, b, s in g.edge_list() if a != b} == {("x", "y"), ("y", "z")}
    assert all(s for a, b, s in g.edge_list() if a != b)


def test_antichain_has_only_loops():
    g = build_chain_digraph(anti_profile(), ANTI2)
    assert all(a == b for a, b, _ in g.edge_list())


def test_crown_edges():
    g = build_chain_digraph(crown_profile(), CROWN4)
    assert {(a, b) for a, b, s in g.edge_list() if a != b and s} == {("x", "y"), ("z", "w")}


def test_hook_queries():
    g = build_chain_digraph(hook_profile(), HOOK)
    assert has_p_chain(g, "x", "z")
    assert has_strict_p_chain(g, "x", "z")
    assert not has_p_chain(g, "x", "w")
    assert has_p_chain(g, "x", "x")
    assert not has_strict_p_chain(g, "x", "x")


def test_crown_query():
    g = build_chain_digraph(crown_profile(), CROWN4)
    assert not has_strict_p_chain(g, "z", "y")
    assert not has_p_chain(g, "x", "w")


def test_query_needs_comparable_pair():
    g = build_chain_digraph(hook_profile(), HOOK)
    with pytest.raises(NotComparable):
        has_p_chain(g, "y", "w")


def test_hook_witnesses():
    g = build_chain_digraph(hook_profile(), HOOK)
    assert witness_chain(g, "x", "z", strict=True) == ("x", "y", "z")
    assert witness_chain(g, "x", "w") is None


def test_shortest_witness_on_chain():
    P = Profile.parse(["x > y > z"], CHAIN3.elements)
    assert witness_chain(build_chain_digraph(P, CHAIN3), "x", "z") == ("x", "z")


def test_reverse_chain_is_dual_query():
    P = hook_profile()
    g = build_chain_digraph(P, dual(HOOK))
    assert has_reverse_p_chain(P, HOOK, "z", "x") == has_p_chain(g, "z", "x")
    assert has_reverse_p_chain(P, HOOK, "z", "x", True) == has_strict_p_chain(g, "z", "x")


def test_reverse_chain_on_chain3():
    P = Profile.parse(["z > x > y"], CHAIN3.elements)
    # a reverse step runs upward and needs the lower element weakly preferred
    assert not has_reverse_p_chain(P, CHAIN3, "y", "x")
    assert has_reverse_p_chain(P, CHAIN3, "z", "x")
    assert has_reverse_p_chain(P, CHAIN3, "x", "x")
    assert not has_reverse_p_chain(P, CHAIN3, "x", "x", strict=True)


def test_examples_against_brute():
    _check_against_brute(hook_profile(), HOOK)
    _check_against_brute(crown_profile(), CROWN4)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_brute_equivalence_exhaustive(n):
    posets = list(enumerate_posets(n))
    orders = list(enumerate_weak_orders(posets[0].elements))
    for p in posets:
        for a in orders:
            _check_against_brute(Profile((a,)), p)
            for b in orders:
                _check_against_brute(Profile((a, b)), p)


def test_brute_equivalence_four_sampled():
    rng = random.Random(4)
    posets = list(enumerate_posets(4))
    orders = list(enumerate_weak_orders(posets[0].elements))
    for p in posets:
        for _ in range(12):
            _check_against_brute(Profile((rng.choice(orders), rng.choice(orders))), p)
