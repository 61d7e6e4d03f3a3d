"""Exception hierarchy shared by every tridom module."""


class TridomError(Exception):
    """Base class for all library errors."""


class InvalidInput(TridomError):
    """The caller handed us something outside the documented domain."""


class ParseError(InvalidInput):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MalformedLine(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class SelfLoop(ParseError):
    pass


class VertexOutOfRange(ParseError):
    pass


class NotHamiltonCycle(InvalidInput):
    pass


class NotPlanarWithThisCycle(InvalidInput):
    """The chord conflict graph of a Hamilton cycle is not bipartite."""


class SideNotTriangulated(InvalidInput):
    pass


class ValidationFailed(InvalidInput):
    def __init__(self, report):
        failed = [c.name for c in report.checks if not c.passed]
        super().__init__("validation failed: " + ", ".join(failed))
        self.report = report


class UniversalVertex(InvalidInput):
    """Raised where a vertex adjacent to all others makes a step meaningless."""

    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} is adjacent to every other vertex")
        self.vertex = vertex


class NotNormalized(InvalidInput):
    pass


class RunTooLong(InvalidInput):
    pass


class PatternMismatch(InvalidInput):
    pass


class SizePreconditionViolated(InvalidInput):
    pass


class Infeasible(InvalidInput):
    pass


class ResourceLimit(TridomError):
    """A search budget or size cap was hit; the answer is unknown, not negative."""


class BudgetExhausted(ResourceLimit):
    pass


class TooLarge(ResourceLimit):
    pass


class FeasibilityTimeout(ResourceLimit):
    def __init__(self, message: str, attempts: int):
        super().__init__(f"{message} (after {attempts} attempts)")
        self.attempts = attempts


class NormalizationStalled(ResourceLimit):
    pass


class Falsification(TridomError):
    """A proven bound or a local lifting guarantee failed on a concrete instance.

    Anything in this branch means either a bug in tridom or a counterexample to
    a published result; the CLI maps it to exit status 1.
    """


class BoundViolated(Falsification):
    pass


class TheoremViolated(Falsification):
    pass


class LiftError(Falsification):
    """A lifting case table is missing a case or produced a non-dominating set."""


class DensityWouldBreak(Falsification):
    pass


class StructureInvalid(Falsification):
    pass
