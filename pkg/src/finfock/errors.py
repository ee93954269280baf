"""Exception types shared across the package.

DomainError subclasses signal well-formed requests whose answer does not
exist or exceeds a hard resource cap; parse failures carry source spans
and are raised as ParseError (see exprlang) or BadCycle.
"""


class DomainError(Exception):
    """Base class for arithmetic/combinatorial domain failures."""


class NonzeroConstantTerm(DomainError):
    """Series substitution F(G) needs G to have constant term 0."""


class NotGuarded(DomainError):
    """A recursive equation does not determine its coefficients.

    Raised when a coefficient fails to become determined within the
    iteration budget, e.g. for the equation F = F.
    """

    def __init__(self, index, iterations):
        self.index = index
        self.iterations = iterations
        super().__init__(
            "coefficient %d not determined after %d iterations; "
            "the equation is not guarded" % (index, iterations)
        )


class ZeroArgument(DomainError):
    """The closed form (1 - sqrt(1-4x))/(2x) is singular at x = 0."""


class UndeterminedTerm(DomainError):
    """A sequence term was read before the solver determined it."""


class NegativeCoefficient(DomainError):
    """An operator action produced a negative term on a counting sequence."""


class TooLarge(DomainError):
    """Input exceeds a documented enumeration/truncation cap."""


class NotEnumerable(DomainError):
    """The expression has no brute-force enumerator (e.g. composition)."""


class GroupTooLarge(DomainError):
    """Generated permutation group exceeds the closure cap."""


class MismatchReport(DomainError):
    """Engine count and enumeration count disagree (an engine bug)."""

    def __init__(self, n, engine_count, enumerated_count):
        self.n = n
        self.engine_count = engine_count
        self.enumerated_count = enumerated_count
        super().__init__(
            "count mismatch at n=%d: engine %s, enumeration %s"
            % (n, engine_count, enumerated_count)
        )


class BadCycle(Exception):
    """Malformed disjoint-cycle notation; span is (start, end) offsets."""

    def __init__(self, message, span):
        self.span = span
        super().__init__(message)
