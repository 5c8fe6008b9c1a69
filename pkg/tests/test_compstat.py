import random

import numpy as np
import pytest

from sclat.compstat import (
    MonotoneSCF,
    PreferenceUniverse,
    RealChain,
    argmax_set,
    aso_dominates,
    aso_on_preferences,
    consensus,
    consensus_sweep,
    mcs_theorem_sweep,
    monotone_scf_psi,
    possibly_optimal,
    psi_sweep,
    robust_sweep,
    sso_dominates,
    sso_on_preferences,
)
from sclat.errors import EmptyInput, InputError, UniverseTooLarge
from sclat.preference import enumerate_weak_orders, sc_dominates

C3 = RealChain.of([1, 2, 3])


def _o(text):
    return C3.order(text)


def test_chain_basics():
    assert C3.elements == ("1", "2", "3")
    assert C3.poset.gt("3", "1")
    assert C3.value("2") == 2
    with pytest.raises(InputError):
        RealChain((2.0, 1.0))
    with pytest.raises(EmptyInput):
        RealChain(())


def test_argmax_examples():
    assert argmax_set(_o("2 > 3 > 1"), C3) == (2,)
    assert argmax_set(_o("1 ~ 2 ~ 3"), C3) == (1, 2, 3)
    assert argmax_set(_o("1 ~ 3 > 2"), C3) == (1, 3)


def test_consensus_examples():
    assert consensus([_o("2 > 1 ~ 3"), _o("2 ~ 3 > 1")], C3) == (2,)
    assert consensus([_o("3 > 1 > 2")], C3) == (3,)
    assert consensus([_o("1 > 2 > 3"), _o("3 > 2 > 1")], C3) == ()


def test_possibly_optimal_examples():
    assert possibly_optimal([_o("2 > 1 ~ 3"), _o("2 ~ 3 > 1")], C3) == (2, 3)
    assert possibly_optimal([_o("3 > 1 > 2")], C3) == (3,)
    assert possibly_optimal([_o("1 > 2 > 3"), _o("3 > 2 > 1")], C3) == (1, 3)


def test_sso_examples():
    assert sso_dominates({2, 3}, {1, 2})
    # max(1, 2) = 2 is missing from {1, 3}
    assert not sso_dominates({1, 3}, {2})
    assert sso_dominates(set(), {1})
    assert sso_dominates({1}, set())


def test_aso_examples():
    assert aso_dominates({3}, {1, 2})
    for A in ({1}, {1, 3}, {2, 3}):
        assert aso_dominates(A, A)
    assert not aso_dominates({1}, {2, 3})
    with pytest.raises(EmptyInput):
        aso_dominates(set(), {1})


def test_sso_on_preferences_examples():
    single = [_o("2 > 1 > 3")]
    assert sso_on_preferences(single, single, C3)
    assert sso_on_preferences([_o("3 > 2 > 1")], [_o("1 > 2 > 3")], C3)
    assert not sso_on_preferences([_o("1 > 2 > 3")], [_o("3 > 2 > 1")], C3)


def test_universe_shape():
    u = PreferenceUniverse(C3)
    assert u.m == 13 and len(u.sets) == 8191
    assert list(u.sets[:5]) == [1, 2, 3, 4, 5]
    with pytest.raises(UniverseTooLarge):
        PreferenceUniverse(RealChain.of([1, 2, 3, 4]))


def _members(u, mask):
    return [u.orders[i] for i in range(u.m) if mask >> i & 1]


def test_universe_masks_match_direct_route():
    u = PreferenceUniverse(C3)
    sA, sB = u.sso_pairs_masks()
    aA, aB = u.aso_pairs_masks()
    rng = random.Random(3)
    picks = [rng.randrange(len(u.sets)) for _ in range(25)]
    # small sets make the relation hold often enough to matter
    picks += [((1 << i) | (1 << j)) - 1 for i in range(13) for j in range(i, 13)][::3]
    sso_hits = 0
    for hi in picks:
        s_row = u.dominated_sets(hi, sA, sB)
        a_row = u.dominated_sets(hi, aA, aB)
        for lo in picks:
            Ph, Pl = _members(u, int(u.sets[hi])), _members(u, int(u.sets[lo]))
            direct = sso_on_preferences(Ph, Pl, C3)
            sso_hits += direct
            assert bool(s_row[lo]) == direct
            assert bool(a_row[lo]) == aso_on_preferences(Ph, Pl, C3)
    assert sso_hits > 0


def test_universe_tables_match_lattice():
    u = PreferenceUniverse(C3)
    p = C3.poset
    for i, a in enumerate(u.orders):
        assert [v for k, v in enumerate(C3.values) if int(u.argmax[i]) >> k & 1] == list(argmax_set(a, C3))
        for j, b in enumerate(u.orders):
            assert bool(u.dom[i, j]) == sc_dominates(a, b, p)


def test_mcs_on_three_chain_direct():
    p = C3.poset
    orders = list(enumerate_weak_orders(C3.elements))
    for hi in orders:
        for lo in orders:
            if sc_dominates(hi, lo, p):
                assert sso_dominates(argmax_set(hi, C3), argmax_set(lo, C3))


def test_mcs_sweep_counts():
    s = mcs_theorem_sweep(5)
    assert s.ok and s.instances == 541 ** 2
    assert mcs_theorem_sweep(3).ok


def test_set_sweeps_pass():
    for sweep in (consensus_sweep(), robust_sweep(), psi_sweep()):
        assert sweep.ok, sweep.first_counterexample


def test_psi_respects_unanimity():
    scf = MonotoneSCF(C3)
    u = scf.universe
    for s in range(len(u.sets)):
        cons = int(u.consensus[s])
        if cons:
            assert cons >> int(scf.psi_index[s]) & 1
    assert monotone_scf_psi([_o("2 > 1 ~ 3")], C3) == 2
    assert monotone_scf_psi([_o("3 > 1 ~ 2"), _o("1 ~ 3 > 2")], C3) == 3


def test_psi_matches_definition_and_fallback_unused():
    scf = MonotoneSCF(C3)
    u = scf.universe
    best = np.full(len(u.sets), 99)
    for h in np.flatnonzero(u.consensus != 0):
        top = int(u.consensus[h]).bit_length() - 1
        below = u.dominated_sets(h, scf.A, scf.B).copy()
        below[h] = True
        best[below] = np.minimum(best[below], top)
    # every set is reached from a set with a consensus, so the top-value fallback never fires
    assert (best != 99).all()
    assert (best == scf.psi_index).all()


def test_psi_rejects_empty_set():
    with pytest.raises(EmptyInput):
        monotone_scf_psi([], C3)


def test_psi_values_are_chain_values():
    vals = {monotone_scf_psi([o], C3) for o in enumerate_weak_orders(C3.elements)}
    assert vals <= {1.0, 2.0, 3.0}
    assert np.all(MonotoneSCF(C3).psi_index >= 0)
