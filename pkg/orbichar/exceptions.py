# ============================================================================
# EXCEPTIONS MODULE
# ============================================================================
# Every error orbichar raises on purpose lives here.
#
# HOW THE HIERARCHY IS ORGANIZED:
# OrbicharError                        ← catch this to catch everything below
#   ├── LatticeError                   ← bad Gram matrices, enumeration caps
#   ├── IsometryError                  ← bad automorphisms, unsupported orders
#   ├── NotUpperHalfPlane              ← a modular point with Im(τ) <= 0
#   ├── CharacterError                 ← invalid trace requests
#   ├── TransformError                 ← S/T assembly, constants, fusion
#   └── SpecError                      ← job-spec parsing and validation
#
# Some errors flag internal inconsistencies rather than user mistakes
# (NotPerfectSquare, NonIntegerCardinality, NoSolution). They should never
# fire on valid input; if one does, the message carries the offending value.
#
# Last updated: 17 October 2026
# ============================================================================

from __future__ import annotations

__all__ = [
    "OrbicharError",
    "LatticeError",
    "NotEven",
    "NotPositiveDefinite",
    "NotSymmetric",
    "DimensionMismatch",
    "BoundTooLarge",
    "NotSublattice",
    "RankMismatch",
    "IsometryError",
    "NotIsometry",
    "InfiniteOrder",
    "NotPerfectSquare",
    "NonIntegerCardinality",
    "UnsupportedOrder",
    "QbarMismatch",
    "NotPrime",
    "NotUpperHalfPlane",
    "CharacterError",
    "InvalidTwist",
    "NotProjected",
    "TransformError",
    "NoSolution",
    "InconsistentSamples",
    "DegenerateBasis",
    "NotUnitary",
    "SpecError",
    "ParseError",
    "ValidationError",
]


class OrbicharError(Exception):
    """Base class for all orbichar errors."""


# ----------------------------------------------------------------------------
# LATTICE ERRORS
# ----------------------------------------------------------------------------

class LatticeError(OrbicharError):
    """Raised for invalid lattice input or lattice operations."""


class NotEven(LatticeError):
    """A diagonal Gram entry is odd."""


class NotPositiveDefinite(LatticeError):
    """The Gram matrix has a non-positive leading principal minor."""


class NotSymmetric(LatticeError):
    """The Gram matrix is not square or not symmetric."""


class DimensionMismatch(LatticeError):
    """A coordinate vector does not match the lattice rank."""


class BoundTooLarge(LatticeError):
    """Vector enumeration would exceed the configured output cap."""

    def __init__(self, bound, cap: int):
        self.bound = bound
        self.cap = cap
        super().__init__(
            f"Enumeration up to norm {bound} would produce more than {cap} vectors; "
            f"lower the bound or raise ORBICHAR_ENUM_CAP"
        )


class NotSublattice(LatticeError):
    """The second lattice is not contained in the first."""


class RankMismatch(LatticeError):
    """Two lattices that must have equal rank do not."""


# ----------------------------------------------------------------------------
# ISOMETRY ERRORS
# ----------------------------------------------------------------------------

class IsometryError(OrbicharError):
    """Raised for invalid isometries or unsupported isometry data."""


class NotIsometry(IsometryError):
    """The matrix does not preserve the Gram form."""


class InfiniteOrder(IsometryError):
    """No power up to the order cap is the identity."""


class NotPerfectSquare(IsometryError):
    """The defect index is not a perfect square (internal inconsistency)."""


class NonIntegerCardinality(IsometryError):
    """|Z_mu| came out non-integral (internal inconsistency)."""


class UnsupportedOrder(IsometryError):
    """The operation needs a prime-order isometry."""

    def __init__(self, order: int, operation: str = "this operation"):
        self.order = order
        super().__init__(f"{operation} requires prime order, got order {order}")


class QbarMismatch(IsometryError):
    """For p = 2 the lattice must equal its sublattice Q-bar."""


class NotPrime(IsometryError, ValueError):
    """A permutation orbifold was requested with a non-prime number of copies."""


# ----------------------------------------------------------------------------
# MODULAR POINTS AND CHARACTERS
# ----------------------------------------------------------------------------

class NotUpperHalfPlane(OrbicharError, ValueError):
    """A modular point with non-positive imaginary part."""

    def __init__(self, tau):
        self.tau = tau
        super().__init__(f"tau must lie in the upper half-plane, got {tau}")


class CharacterError(OrbicharError):
    """Raised for invalid character requests."""


class InvalidTwist(CharacterError):
    """A sigma^k-inserted trace was requested on a coset that sigma moves."""


class NotProjected(CharacterError):
    """A twisted-sector coset representative is not in pi_0(Q*)."""


# ----------------------------------------------------------------------------
# TRANSFORM ERRORS
# ----------------------------------------------------------------------------

class TransformError(OrbicharError):
    """Raised while assembling transformation data."""


class NoSolution(TransformError):
    """No beta_0 satisfies the congruence system (internal inconsistency)."""


class InconsistentSamples(TransformError):
    """Two numeric determinations of the same constant disagree."""


class DegenerateBasis(TransformError):
    """The orbifold characters are linearly dependent."""


class NotUnitary(TransformError):
    """The S-matrix fails the numeric unitarity check."""


# ----------------------------------------------------------------------------
# JOB-SPEC ERRORS
# ----------------------------------------------------------------------------

class SpecError(OrbicharError):
    """Raised for malformed or invalid job specs."""


class ParseError(SpecError):
    """The spec text is malformed or a required field is missing."""

    def __init__(self, message: str, field: str | None = None, position: int | None = None):
        self.field = field
        self.position = position
        where = []
        if field is not None:
            where.append(f"field '{field}'")
        if position is not None:
            where.append(f"position {position}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")


class ValidationError(SpecError):
    """The spec parsed but its lattice or isometry is invalid."""

    def __init__(self, message: str, cause: Exception | None = None):
        self.cause = cause
        super().__init__(message)
