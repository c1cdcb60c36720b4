"""Exception hierarchy shared by every module of the package."""


class GraphError(Exception):
    """Base class for all errors raised by graphdelta."""


class EmptyGraph(GraphError):
    pass


class Disconnected(GraphError):
    def __init__(self, components):
        self.components = [sorted(c) for c in components]
        super().__init__(f"graph is disconnected; components: {self.components}")


class SimpleModeViolation(GraphError):
    def __init__(self, edge, reason):
        self.edge = edge
        super().__init__(f"edge {edge[0]} {edge[1]} not allowed in simple mode: {reason}")


class InvalidPoint(GraphError):
    pass


class SideNotGeodesic(GraphError):
    pass


class NotProperCycles(GraphError):
    pass


class LoopContraction(GraphError):
    pass


class WouldDisconnect(GraphError):
    def __init__(self, edge, components):
        self.edge = edge
        self.components = [sorted(c) for c in components]
        super().__init__(
            f"deleting edge {edge} disconnects the graph into {self.components}"
        )


class CutEdge(GraphError):
    pass


class MinorSequenceError(GraphError):
    def __init__(self, step, cause):
        self.step = step
        self.cause = cause
        super().__init__(f"minor operation at step {step} failed: {cause}")


class BudgetExceeded(GraphError):
    pass


class InvalidSpec(GraphError):
    pass


class ParseError(GraphError):
    pass
