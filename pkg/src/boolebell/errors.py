"""Exception types shared across the package."""


class BoolebellError(Exception):
    """Base class for all package-specific failures."""


class ScenarioTooLarge(BoolebellError):
    """Vertex enumeration refused: 2^n assignments exceed the guardrail."""


class DegeneratePolytope(BoolebellError):
    """V-representation is not full-dimensional."""


class DimensionMismatch(BoolebellError):
    """Operands disagree on dimension."""


class NotHermitian(BoolebellError):
    """Operator fails the Hermiticity tolerance."""


class NoConvergence(BoolebellError):
    """Iterative eigensolver did not reach its target accuracy."""


class DomainError(BoolebellError):
    """Argument outside the contract's domain."""


class InvalidPair(BoolebellError):
    """Pairwise expectation requested for a malformed observable pair."""


class UnsupportedMonomialOrder(BoolebellError):
    """Operator assembly only covers pair monomials."""


class ConventionNotFound(BoolebellError):
    """No scanned angle convention reproduces the target eigenvectors."""
