"""Exception hierarchy shared by every flexcycle module."""


class FlexCycleError(Exception):
    """Base class. ``stage`` is filled in by the pipeline when re-raised."""

    stage = None

    def __str__(self):
        msg = super().__str__()
        if self.stage:
            return f"[{self.stage}] {msg}"
        return msg


class InputFormatError(FlexCycleError, ValueError):
    """Malformed serialized input (bad JSON field, bad number string)."""


# exact arithmetic
class FactorizationBudgetExceeded(FlexCycleError):
    pass


# Moebius model
class OffQuadricInput(FlexCycleError):
    pass


class NotSimpleInfinite(FlexCycleError):
    pass


class NotInFin(FlexCycleError):
    pass


class UnsolvablePivot(FlexCycleError):
    pass


# polyhedra
class EdgeFaceCountViolation(FlexCycleError):
    pass


class DisconnectedSkeleton(FlexCycleError):
    pass


class DegenerateFace(FlexCycleError):
    pass


class DuplicateFace(FlexCycleError):
    pass


class NotAnEdge(FlexCycleError):
    pass


class CoincidentEndpoints(FlexCycleError):
    pass


class DegenerateTriangle(FlexCycleError):
    pass


class NotACycle(FlexCycleError):
    pass


# limit configurations and colorings
class InvalidLimitConfiguration(FlexCycleError):
    pass


class InfinityOnEdge(FlexCycleError):
    def __init__(self, edge, msg=None):
        self.edge = edge
        super().__init__(msg or f"extended distance is infinite on edge {edge}")


class WrongFiniteValue(FlexCycleError):
    def __init__(self, edge, msg=None):
        self.edge = edge
        super().__init__(msg or f"finite distance on edge {edge} disagrees with its length")


class No3Violation(FlexCycleError):
    pass


class DegreeViolation(FlexCycleError):
    pass


class LemmaViolation(FlexCycleError):
    def __init__(self, vertex, msg):
        self.vertex = vertex
        super().__init__(msg)


class SpineRepeated(FlexCycleError):
    pass


class SpineTriangleCycle(FlexCycleError):
    pass


class NonRealTelescope(FlexCycleError):
    pass


# butterfly flexes
class NotSeparating(FlexCycleError):
    pass


class AllSignsEqual(FlexCycleError):
    pass


class UnsatisfiableSignPattern(FlexCycleError):
    pass


class PlacementFailure(FlexCycleError):
    pass


class MissingComponentParameter(FlexCycleError):
    pass


class NoUsableSpine(FlexCycleError):
    pass


class DegenerateRotatingVertex(FlexCycleError):
    pass


class LengthDrift(FlexCycleError):
    def __init__(self, edge, sample):
        self.edge = edge
        self.sample = sample
        super().__init__(f"squared length of edge {edge} drifts in sample {sample}")


class ConstantDihedral(FlexCycleError):
    pass


class CongruentSamples(FlexCycleError):
    pass
