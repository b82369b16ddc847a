"""Exception types shared across the package."""


class AmboolError(Exception):
    """Base class for all library errors."""

    code = "error"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class InvalidEdgeError(AmboolError):
    """Edge key does not refer to a live edge of the mesh."""

    code = "invalid-edge"


class TopologyError(AmboolError):
    """Edit rejected because it would break mesh topology."""

    code = "topology"


class GeometryError(AmboolError):
    """Edit rejected because it would fold or invert geometry."""

    code = "geometry"


class DegenerateTriangleError(AmboolError):
    """A geometric predicate was handed a zero-area triangle."""

    code = "degenerate-input"


class RebuildRequiredError(AmboolError):
    """Spatial index is stale relative to the mesh generation stamp."""

    code = "rebuild-required"


class InvalidLoopError(AmboolError):
    """Operation on an empty or broken boundary loop."""

    code = "invalid-loop"


class ZipperTimeout(AmboolError):
    """Loop evolution did not reach a bijective correspondence in time.

    Carries the best correspondence found so the caller can decide whether
    to refine and retry.
    """

    code = "zipper-timeout"

    def __init__(self, message, best_correspondence=None):
        super().__init__(message)
        self.best_correspondence = best_correspondence


class LoopPairingError(AmboolError):
    """Cut-boundary loops could not be matched one-to-one across inputs."""

    code = "loop-mismatch"


class MeshLoadError(AmboolError):
    """Mesh file could not be parsed; carries file position info when known."""

    code = "load-error"

    def __init__(self, message, path=None, line=None):
        super().__init__(message)
        self.path = path
        self.line = line
