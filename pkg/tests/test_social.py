import random

import pytest

from sclat.errors import NotAForkPoset
from sclat.lattice import is_minimum_upper_bound
from sclat.poset import poset_from_covers
from sclat.preference import Profile, WeakOrder, enumerate_weak_orders, parse_ranking, weak_order_ranks
from sclat.social import (
    COUNTEREXAMPLES,
    acceptability_report,
    acceptable_exists_for_profile,
    acceptable_preferences,
    conditionally_respects_unanimity,
    construct_acceptable,
    counterexample,
    exists_acceptable_swf,
    first_violation,
    is_acceptable,
    respects_justified_objections,
)
from sclat.structure import NEITHER, classify_fork

from fixtures import ANTI2, CHAIN3, CROWN4, DIAMOND4, HOOK, STATUSQUO, chain_profile, crown_profile, diamond_profile, hook_profile


def _w(text, p):
    return parse_ranking(text, p.elements)


def test_objections_examples():
    P = chain_profile()
    assert respects_justified_objections(_w("x > y > z", CHAIN3), P, CHAIN3)
    assert not respects_justified_objections(_w("z > x > y", CHAIN3), P, CHAIN3)
    for w in enumerate_weak_orders(ANTI2.elements):
        assert respects_justified_objections(w, Profile.parse(["x > y", "y > x"], ANTI2.elements), ANTI2)


def test_unanimity_examples():
    assert not conditionally_respects_unanimity(_w("w > x > y > z", HOOK), hook_profile(), HOOK)
    assert conditionally_respects_unanimity(_w("x > y > z", CHAIN3), chain_profile(), CHAIN3)
    flat = Profile.parse(["x ~ y ~ z", "x ~ y ~ z"], CHAIN3.elements)
    assert conditionally_respects_unanimity(_w("x ~ y ~ z", CHAIN3), flat, CHAIN3)


def test_first_violation_names_strict_demand():
    v = first_violation(_w("w > x > y > z", HOOK), hook_profile(), HOOK)
    assert v == {"axiom": "conditional_unanimity", "pair": ["z", "w"], "strict": True}
    assert first_violation(_w("x > y > z", CHAIN3), chain_profile(), CHAIN3) is None
    v = first_violation(_w("z > x > y", CHAIN3), chain_profile(), CHAIN3)
    assert v["axiom"] == "justified_objections"


def test_acceptable_examples():
    assert is_acceptable(_w("x > y > z", CHAIN3), chain_profile(), CHAIN3)
    for w in enumerate_weak_orders(HOOK.elements):
        assert not is_acceptable(w, hook_profile(), HOOK)
        assert not is_acceptable(w, crown_profile(), CROWN4)


def test_existence_examples():
    assert str(acceptable_exists_for_profile(chain_profile(), CHAIN3)) == "x > y > z"
    assert acceptable_exists_for_profile(hook_profile(), HOOK) is None
    assert acceptable_exists_for_profile(crown_profile(), CROWN4) is None
    assert acceptable_exists_for_profile(diamond_profile(), DIAMOND4) is None


def test_status_quo_always_has_acceptable():
    rng = random.Random(6)
    ranks = weak_order_ranks(6)
    for _ in range(25):
        P = Profile(tuple(WeakOrder(STATUSQUO.elements, rng.choice(ranks)) for _ in range(2)))
        found = acceptable_exists_for_profile(P, STATUSQUO)
        assert found is not None and is_acceptable(found, P, STATUSQUO)


def test_swf_verdicts():
    assert exists_acceptable_swf(STATUSQUO).exists
    assert not exists_acceptable_swf(HOOK).exists
    assert exists_acceptable_swf(CHAIN3).exists
    assert exists_acceptable_swf(HOOK).to_json()["forbidden_four_poset"]["kind"] == "hook"


def test_construction_examples():
    assert str(construct_acceptable(chain_profile(), CHAIN3)) == "x > y > z"
    with pytest.raises(NotAForkPoset):
        construct_acceptable(hook_profile(), HOOK)
    P = Profile.parse(["z1 > y1 > x0 > y2 ~ y3 > z2", "y3 > z2 > x0 > z1 > y1 > y2"], STATUSQUO.elements)
    assert is_acceptable(construct_acceptable(P, STATUSQUO), P, STATUSQUO)


@pytest.mark.parametrize("kind", sorted(COUNTEREXAMPLES))
def test_counterexample_profiles(kind):
    P, p = counterexample(kind)
    assert classify_fork(p) == NEITHER
    assert acceptable_preferences(P, p) == []


def test_counterexample_posets_have_the_named_shape():
    from sclat.structure import find_forbidden_four_poset

    for kind in COUNTEREXAMPLES:
        _, p = counterexample(kind)
        assert find_forbidden_four_poset(p)[0] == kind


def test_only_joins_are_acceptable_small():
    for p in (CHAIN3, poset_from_covers("xyz", [("x", "y")]), poset_from_covers("xyz", [("x", "y"), ("x", "z")])):
        orders = list(enumerate_weak_orders(p.elements))
        for a in orders:
            for b in orders:
                P = Profile((a, b))
                found = acceptable_preferences(P, p)
                assert found
                for w in found:
                    assert is_minimum_upper_bound(w, P, p)


def _random_fork(rng):
    """A random fork or shattered fork on at most six elements, randomly labeled."""
    n = rng.randint(1, 6)
    names = [f"e{i}" for i in range(n)]
    rng.shuffle(names)
    covers = []
    if rng.random() < 0.7:
        apex, rest = names[0], names[1:]
        k = rng.randint(0, len(rest))
        head, tail = rest[:k], rest[k:]
        up = rng.random() < 0.5
        for h in head:
            covers.append((h, apex) if up else (apex, h))
        prev = apex
        for t in tail:
            covers.append((prev, t) if up else (t, prev))
            prev = t
    else:
        k = rng.randint(1, n)
        apex, head = names[0], names[1:k]
        up = rng.random() < 0.5
        for h in head:
            covers.append((h, apex) if up else (apex, h))
    return poset_from_covers(sorted(names), covers)


def test_construction_on_random_forks():
    rng = random.Random(2024)
    for _ in range(10_000):
        p = _random_fork(rng)
        assert classify_fork(p) != NEITHER
        ranks = weak_order_ranks(p.n)
        P = Profile(tuple(WeakOrder(p.elements, rng.choice(ranks)) for _ in range(rng.randint(1, 3))))
        out = construct_acceptable(P, p)
        assert respects_justified_objections(out, P, p)
        assert conditionally_respects_unanimity(out, P, p)


def test_report_json():
    rep = acceptability_report([hook_profile()], HOOK).to_json()
    assert rep["constraint_class"] == NEITHER
    row = rep["profiles"][0]
    assert row["acceptable"] == []
    assert row["first_violation"]["axiom"] == "conditional_unanimity"
    rep = acceptability_report([chain_profile()], CHAIN3).to_json()
    assert rep["profiles"][0]["acceptable"] == ["x > y > z"]
