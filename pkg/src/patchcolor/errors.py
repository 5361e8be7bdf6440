"""Exception types shared across the package."""


class GraphError(Exception):
    """Base class for all structural and semantic input errors."""


class StructuralError(GraphError):
    """Rotation system is malformed or does not describe a connected plane graph."""


class InternalFaceNotTriangle(GraphError):
    def __init__(self, face):
        super().__init__(f"internal face {face} has length {len(face)}, expected 3")
        self.face = tuple(face)


class OuterBoundaryNotCycle(GraphError):
    """Outer face walk repeats a vertex or is shorter than a cycle."""


class NotNearEulerian(GraphError):
    """Some internal vertex has odd degree; no proper 3-coloring by hues exists."""


class NotBipartite(GraphError):
    pass


class NotTwoConnected(GraphError):
    pass


class NotNearQuadrangulation(GraphError):
    pass


class ImproperColoring(GraphError):
    """Adjacent vertices share a hue or a color where the contract forbids it."""


class NotViable(GraphError):
    """The dappled boundary cycle has no homomorphism to the triangular grid."""


class NotNullHomotopic(GraphError):
    pass


class InvalidCertificate(GraphError):
    pass
