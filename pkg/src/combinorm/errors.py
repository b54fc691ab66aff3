"""Exception types shared across the package."""


class CombinormError(Exception):
    """Base class for all package-specific errors."""


class Unbounded(CombinormError):
    """The linear program has unbounded objective value."""


class Infeasible(CombinormError):
    """The linear program has no feasible point."""


class DimensionLimitExceeded(CombinormError):
    """A polytope operation was asked to run above its dimension cap."""


class SizeLimitExceeded(CombinormError):
    """A graph operation was asked to run above its vertex cap."""


class LadderMissing(CombinormError):
    """A limit ordinal was used without a fundamental sequence."""


class EquivalenceViolation(CombinormError):
    """Two checks that must agree by theorem disagreed (implementation bug)."""

    def __init__(self, first, second, detail=""):
        self.first = first
        self.second = second
        super().__init__(f"equivalence violated: {first} != {second}" + (f" ({detail})" if detail else ""))


class HostExhausted(CombinormError):
    """A finite explicit host injection ran out of admissible values."""


class NotAnOddHole(CombinormError):
    """The supplied cycle is not an induced odd hole of the graph."""


class NotOnSphere(CombinormError):
    """The vector does not have norm exactly 1."""


class PrecisionExhausted(CombinormError):
    """Certified interval evaluation could not decide a comparison."""


class InputError(CombinormError):
    """Malformed or inconsistent user input."""
