"""Canonical posets and profiles shared across the test suite."""

from fractions import Fraction

from sclat.ambiguity import ActSpace, CEPreference
from sclat.poset import antichain, chain, poset_from_covers
from sclat.preference import Profile

HOOK = poset_from_covers("xyzw", [("x", "y"), ("y", "z"), ("x", "w")])
CROWN4 = poset_from_covers("xyzw", [("x", "y"), ("x", "w"), ("z", "y"), ("z", "w")])
DIAMOND4 = poset_from_covers("xyzw", [("x", "y"), ("x", "z"), ("y", "w"), ("z", "w")])
ANTI2 = antichain("xy")
CHAIN3 = chain("xyz")

PERM3_ELEMENTS = ("321", "231", "312", "213", "132", "123")
PERM3_COVERS = [("321", "231"), ("321", "312"), ("231", "213"), ("312", "132"), ("213", "123"), ("132", "123")]
PERM3 = poset_from_covers(PERM3_ELEMENTS, PERM3_COVERS)

STATUSQUO = poset_from_covers(
    ("x0", "y1", "y2", "y3", "z1", "z2"), [("x0", "y1"), ("x0", "y2"), ("x0", "y3")]
)

# a, b above e above c, d
CHALICE5 = poset_from_covers("abecd", [("a", "e"), ("b", "e"), ("e", "c"), ("e", "d")])


def hook_profile():
    return Profile.parse(["z > w > x > y", "y > z > w > x"], HOOK.elements)


def crown_profile():
    return Profile.parse(["w > x > y > z", "y > z > w > x"], CROWN4.elements)


def diamond_profile():
    return Profile.parse(["y > w > z > x", "w > z > x > y"], DIAMOND4.elements)


def anti_profile():
    return Profile.parse(["x > y", "y > x"], ANTI2.elements)


def chain_profile():
    return Profile.parse(["z > x > y", "y > z > x"], CHAIN3.elements)


def seu_preference(space: ActSpace, utility, belief) -> CEPreference:
    """Expected-utility certainty equivalents rounded down to the prize grid.

    ``utility`` maps prizes to reals, ``belief`` maps states to weights
    summing to one. Test-only generator of plausible instances.
    """
    prizes = sorted(space.prizes)
    ce = {}
    for i, name in enumerate(space.names):
        eu = sum(Fraction(belief[s]) * Fraction(utility[space.payoffs[i][k]]) for k, s in enumerate(space.states))
        ce[name] = max(p for p in prizes if Fraction(utility[p]) <= eu)
    return CEPreference.from_map(space, ce)
