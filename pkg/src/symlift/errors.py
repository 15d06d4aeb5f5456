"""Exception types shared across the package."""


class SymliftError(Exception):
    pass


class AmbiguousCoincidence(SymliftError):
    """Clustering at the requested tolerance does not separate the points."""

    def __init__(self, message, *, diameter=None, gap=None):
        super().__init__(message)
        self.diameter = diameter
        self.gap = gap


class ClassificationAmbiguity(SymliftError):
    """A grid node of a region could not be classified unambiguously."""

    def __init__(self, node, cause):
        super().__init__(f"node {node}: {cause}")
        self.node = node
        self.cause = cause
        self.gap = getattr(cause, "gap", None)


class GroupTooLarge(SymliftError):
    pass


class InputMismatch(SymliftError):
    pass


class LiftObstruction(SymliftError):
    """Base class for failures of the discrete lifting procedure."""

    def diagnostics(self):
        return {"error": type(self).__name__, "message": str(self)}


class HolonomyError(LiftObstruction):
    def __init__(self, message, *, square=None, edge=None, tuples=None):
        super().__init__(message)
        self.square = square
        self.edge = edge
        self.tuples = tuples

    def diagnostics(self):
        out = super().diagnostics()
        if self.square is not None:
            out["square"] = list(self.square)
        if self.edge is not None:
            out["edge"] = list(self.edge)
        if self.tuples is not None:
            out["tuples"] = [list(t) for t in self.tuples]
        return out


class ConflictingSheet(LiftObstruction):
    def __init__(self, message, *, event=None, expected=None, found=None):
        super().__init__(message)
        self.event = event
        self.expected = expected
        self.found = found

    def diagnostics(self):
        out = super().diagnostics()
        out["event"] = self.event
        if self.expected is not None:
            out["expected"] = list(self.expected)
            out["found"] = list(self.found)
        return out
