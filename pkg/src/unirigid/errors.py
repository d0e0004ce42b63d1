class RigidityError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(RigidityError, ValueError):
    pass


class GraphParseError(GraphError):
    """Edge-list input rejected; ``kind`` is one of ``malformed``, ``edge_count``,
    ``self_loop``, ``out_of_range``, ``duplicate_edge``."""

    def __init__(self, kind: str, line: int, message: str):
        self.kind = kind
        self.line = line
        super().__init__(f"line {line}: {message}")


class DegreeError(RigidityError, ValueError):
    def __init__(self, node: int, degree: int, required: int):
        self.node = node
        self.degree = degree
        self.required = required
        super().__init__(f"node {node} has degree {degree} < {required}")


class RepresentationError(RigidityError):
    pass


class GaleError(RigidityError):
    pass


class ConnectivityError(RigidityError):
    """The graph is not (r+1)-connected; carries a witness separator."""

    def __init__(self, kappa: int, required: int, separator=None):
        self.kappa = kappa
        self.required = required
        self.separator = separator
        msg = f"vertex connectivity {kappa} < {required}"
        if separator is not None:
            msg += f"; separator {list(separator.nodes)}"
        super().__init__(msg)


class ConstructionError(RigidityError):
    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage}: {cause}")


class CertificateFormatError(RigidityError, ValueError):
    pass


class NoCounterexample(RigidityError):
    """Raised when the graph is (r+1)-connected, so no separator reflection exists."""


class DegenerateGeometry(RigidityError):
    pass
