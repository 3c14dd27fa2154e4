"""Exception and warning types shared across the package."""


class GraphError(ValueError):
    """Base class for malformed-graph errors."""


class NegativeWeightError(GraphError):
    """A stored edge weight is not strictly positive."""

    def __init__(self, i, j, weight):
        self.i = int(i)
        self.j = int(j)
        self.weight = float(weight)
        super().__init__(f"edge ({i},{j}) has non-positive weight {weight}")


class SelfLoopError(GraphError):
    """A stored diagonal entry (self-loop) was found."""

    def __init__(self, i):
        self.i = int(i)
        super().__init__(f"node {i} has a stored self-loop")


class MalformedOffsetsError(GraphError):
    """Compressed-row offsets are inconsistent."""


class InvalidSizeError(GraphError):
    """A generator was asked for a graph with no nodes."""


class NotSquareError(GraphError):
    """A square matrix was required."""


class ParseError(ValueError):
    """Matrix Market input could not be parsed."""

    def __init__(self, line_number, message):
        self.line_number = int(line_number)
        super().__init__(f"line {line_number}: {message}")


class EmptySeedSetError(ValueError):
    """Bellman-Ford was called with no seed nodes."""


class UnreachableNodeError(RuntimeError):
    """A node is unreachable from every seed."""

    def __init__(self, node):
        self.node = int(node)
        super().__init__(f"node {node} is unreachable from the seed set")


class DuplicateCenterError(ValueError):
    """The same node was given as the center of two clusters."""


class DisconnectedClusterError(RuntimeError):
    """A cluster's induced subgraph is not connected."""

    def __init__(self, cluster):
        self.cluster = int(cluster)
        super().__init__(f"cluster {cluster} is internally disconnected")


class UnassignedNodeError(ValueError):
    """A node has no cluster where a covering membership is required."""

    def __init__(self, node):
        self.node = int(node)
        super().__init__(f"node {node} is not assigned to any cluster")


class SingularDiagonalError(ValueError):
    """The matrix diagonal contains a zero, so Jacobi scaling fails."""


class RankDeficientClusterError(ValueError):
    """Near-nullspace vectors are rank deficient on some cluster."""

    def __init__(self, cluster):
        self.cluster = int(cluster)
        super().__init__(f"near-nullspace block for cluster {cluster} is rank deficient")


class SingularCoarseSolveError(RuntimeError):
    """The coarsest-level operator could not be factorized."""


class DivergentRhoError(ValueError):
    """Work-per-digit is undefined for a convergence factor >= 1."""


class TooLargeError(ValueError):
    """Problem exceeds the dense-computation threshold."""


class NotSPDError(ValueError):
    """A symmetric positive definite matrix was required."""


class NoBorderWarning(UserWarning):
    """Recentering found no border nodes (single-cluster graph)."""


class CapReachedWarning(UserWarning):
    """Balanced Bellman-Ford hit its sweep cap before converging."""
