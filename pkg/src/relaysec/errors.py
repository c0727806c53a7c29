"""Exception types shared across the toolkit."""


class RelaySecError(Exception):
    """Base class for all toolkit errors."""


class EmptyAlphabet(RelaySecError):
    """A channel or distribution axis has size zero."""


class NegativeProbability(RelaySecError):
    """A probability entry is negative beyond tolerance."""


class RowSumViolation(RelaySecError):
    """A probability row deviates from sum 1 by 1e-9 or more."""


class UndefinedConditional(RelaySecError):
    """A conditioning event has probability zero for every input."""


class DimensionMismatch(RelaySecError):
    """Array shapes or alphabet sizes are inconsistent."""


class OverlappingVariableSets(RelaySecError):
    """Variable sets passed to an information measure are not disjoint."""


class MissingVariable(RelaySecError):
    """A joint distribution lacks a variable required by the operation."""


class InternalConsistencyError(RelaySecError):
    """A quantity violated an exact identity beyond numerical tolerance."""


class CardinalityCapExceeded(RelaySecError):
    """An auxiliary alphabet exceeds the cap of the requested bound family."""


class FamilyAuxMismatch(RelaySecError):
    """The auxiliary input type does not match the requested bound family."""


class DegenerateConstraintSet(RelaySecError):
    """A rate constraint has an all-zero normal vector."""


class NegativeArgument(RelaySecError):
    """A function requiring a nonnegative argument received a negative one."""


class OutOfUnitInterval(RelaySecError):
    """A parameter restricted to [0, 1] lies outside it."""


class MemoryCapExceeded(RelaySecError):
    """A codebook would exceed the configured symbol-storage cap."""


class EnumerationCapExceeded(RelaySecError):
    """An exact enumeration would exceed the configured term cap."""
