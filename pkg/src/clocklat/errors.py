"""Exception hierarchy shared by all clocklat modules."""


class ClockLatError(Exception):
    """Base class for all domain errors raised by clocklat."""


# --- combinatorial maps -----------------------------------------------------

class MapError(ClockLatError):
    pass


class DanglingDart(MapError):
    """A dart has no involution partner, or is paired with itself."""


class RotationOverlap(MapError):
    """A dart occurs in more than one rotation, or twice in one."""


class OpenBoundaryCircle(MapError):
    """A boundary walk is not a closed walk of boundary arcs."""


class NonIntegerGenus(MapError):
    """Euler data of a component is inconsistent with an oriented surface."""


class CyclicContainment(MapError):
    """The containment forest has a cycle."""


class UnknownParentFace(MapError):
    """A containment entry references a face that does not exist."""


class SchemaError(ClockLatError):
    """Malformed input file."""


# --- multiverses ------------------------------------------------------------

class MultiverseError(ClockLatError):
    pass


class BadDegree(MultiverseError):
    """A vertex has degree other than 1 or 4, or sits on the wrong side."""


class StarCountMismatch(MultiverseError):
    pass


class StarNotOnOuterBoundary(MultiverseError):
    pass


class NotInteriorVertex(MultiverseError):
    pass


class HypothesisViolated(MultiverseError):
    """Some face is neither a disc nor a once-holed annulus; check skipped."""


# --- spines and matchings ---------------------------------------------------

class SpineError(ClockLatError):
    pass


class FramingRequired(SpineError):
    """No framing supplied and the canonical rule is disabled."""


class InvalidFraming(SpineError):
    """A framing overlay does not embed in the multiverse surface."""


class InvalidState(SpineError):
    pass


class InvalidMatching(SpineError):
    pass


class NotAlternating(SpineError):
    pass


class NotVertexSimple(SpineError):
    """Twisting at a non-vertex-simple cycle would not yield a matching."""


# --- planar lattice ---------------------------------------------------------

class PlanarError(ClockLatError):
    pass


class NotPlanar(PlanarError):
    pass


class WrongSign(PlanarError):
    pass


class NotStringUniverse(PlanarError):
    pass


class NonPlanarInteriorUndefined(PlanarError):
    """Cycle interiors only make sense on genus-zero surfaces."""


# --- dual lattice -----------------------------------------------------------

class DualError(ClockLatError):
    pass


class CycleNotInGraph(DualError):
    pass


class ConflictingBasicCycles(DualError):
    """Internal orientation-convention bug; impossible on valid input."""


class NotViable(DualError):
    """Orientation or circulation is not realized by any matching."""


NotViableCirculation = NotViable


class NotMinimal(DualError):
    pass


class NotMaximal(DualError):
    pass


class OuterClassUnpushable(DualError):
    pass


# --- lattice engine ---------------------------------------------------------

class LatticeError(ClockLatError):
    pass


class CycleDetected(LatticeError):
    """The move relation is not antisymmetric.

    Attributes:
        witness: a list of element keys forming a directed move cycle.
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class NotALattice(LatticeError):
    """A pair of elements without a unique meet or join.

    Attributes:
        witness: the offending pair of element keys.
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness
