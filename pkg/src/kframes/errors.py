"""Exception hierarchy for the kframes laboratory."""


class KFramesError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(KFramesError):
    """Array shapes are incompatible with the requested operation."""


class NotHermitian(KFramesError):
    """A matrix required to be Hermitian fails the symmetry test."""


class NoConvergence(KFramesError):
    """An iterative eigenvalue/SVD solver exceeded its iteration cap."""


class DomainViolation(KFramesError):
    """An eigenvalue lies outside a scalar function's domain beyond slack."""


class SingularDenominator(KFramesError):
    """The denominator form of a Rayleigh quotient is numerically singular."""


class BadSubset(KFramesError):
    """An index subset is malformed or out of range for the frame."""


class OverlappingSubsets(KFramesError):
    """Two index subsets required to be disjoint intersect."""


class NotSolvable(KFramesError):
    """No factorization exists: the range-inclusion test failed."""


class NotKFrame(KFramesError):
    """The vector family is not a K-frame for the supplied operator."""


class NotParseval(KFramesError):
    """The frame operator does not match KK* within tolerance."""


class ZeroOperator(KFramesError):
    """The operator K is (numerically) zero where a nonzero one is required."""


class NotOperatorConvex(KFramesError):
    """The scalar function is not flagged operator convex."""


class NotConvex(KFramesError):
    """The scalar function is not flagged convex."""


class SpectrumOutOfBracket(KFramesError):
    """An operator's spectrum escapes the required interval [m, M]."""


class NotUnital(KFramesError):
    """The positive map family does not sum to the identity on the identity."""


class BadConfig(KFramesError):
    """A generator/campaign configuration violates its invariants."""


class UnknownTheoremId(KFramesError):
    """A check id is not in the registered catalog."""
