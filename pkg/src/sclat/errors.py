"""Exception hierarchy shared by every module."""


class SclatError(Exception):
    """Base class for all library errors."""


class InputError(SclatError, ValueError):
    """Malformed or inconsistent input (CLI exit code 2)."""


class NotReflexive(InputError):
    def __init__(self, element):
        self.witness = (element,)
        super().__init__(f"relation is not reflexive at {element!r}")


class NotAntisymmetric(InputError):
    def __init__(self, a, b):
        self.witness = (a, b)
        super().__init__(f"relation is not antisymmetric: {a!r} and {b!r} rank each other")


class NotTransitive(InputError):
    def __init__(self, a, b, c):
        self.witness = (a, b, c)
        super().__init__(f"relation is not transitive: {a!r} >= {b!r} >= {c!r} but not {a!r} >= {c!r}")


class MissingElement(InputError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"no rank given for element {element!r}")


class UnknownElement(InputError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"unknown element {element!r}")


class RankingSyntaxError(InputError):
    """A ranking string does not follow the ``a > b ~ c`` grammar."""


class NotComparable(SclatError, ValueError):
    def __init__(self, a, b):
        self.pair = (a, b)
        super().__init__(f"{a!r} is not weakly above {b!r} in the poset")


class TooLarge(SclatError, ValueError):
    """An exhaustive routine was asked for an instance beyond its size guard."""


class UniverseTooLarge(TooLarge):
    pass


class EmptyInput(SclatError, ValueError):
    pass


class NotConsistent(SclatError):
    """The relation has a cycle with a strict return leg."""

    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__("relation is not Suzumura-consistent: cycle " + " -> ".join(map(str, self.witness)))


class NoJoin(NotConsistent):
    pass


class NoMeet(NotConsistent):
    pass


class PreconditionFailed(SclatError, ValueError):
    pass


class NotAForkPoset(SclatError, ValueError):
    pass


class InternalSearchExhausted(SclatError, RuntimeError):
    """Raised when a search that must succeed comes up empty. Always a bug."""
