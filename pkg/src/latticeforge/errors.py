"""Exception vocabulary shared across the package.

Every error raised by the public API derives from LatticeForgeError so
callers can catch one base type at process boundaries (CLI, service).
"""

from __future__ import annotations


class LatticeForgeError(Exception):
    """Base class for all package errors."""


class BoundsError(LatticeForgeError):
    """A coordinate or dimension falls outside the supported lattice range."""


class DomainError(LatticeForgeError):
    """An operation was applied to a value outside its domain."""


class MissingVertexError(DomainError):
    """A graph operation referenced a vertex that is not present."""

    def __init__(self, vertex: int, message: str | None = None):
        self.vertex = vertex
        super().__init__(message or f"vertex {vertex} is not in the graph")


class BranchImpossibleError(DomainError):
    """The requested measurement outcome has probability zero."""


class ComparabilityError(LatticeForgeError):
    """Two objects cannot be compared (size or qubit-label mismatch)."""


class BudgetExceededError(LatticeForgeError):
    """An orbit search exhausted its exploration budget before deciding."""


class CollisionError(LatticeForgeError):
    """Two tiles occupy the same cell in a way that is not a legal join."""

    def __init__(self, first: object, second: object, cell: tuple[int, int]):
        self.first = first
        self.second = second
        self.cell = cell
        super().__init__(
            f"tiles {first} and {second} collide at cell {cell}"
        )


class GeometryError(LatticeForgeError):
    """A tile's footprint cannot be realised at the requested anchor."""


class ParseError(LatticeForgeError):
    """A document or script does not conform to its schema."""


class LayoutError(LatticeForgeError):
    """A grid with outstanding error diagnostics was sent to layout."""

    def __init__(self, diagnostics: list):
        self.diagnostics = diagnostics
        summary = "; ".join(d.message for d in diagnostics)
        super().__init__(f"grid failed validation: {summary}")


class RoutingError(LatticeForgeError):
    """A circuit operation cannot be mapped onto the tile geometry."""


class BindingError(LatticeForgeError):
    """Rotation angle bindings are missing, unknown or not finite numbers."""

    def __init__(self, message: str, missing: list | None = None,
                 unknown: list | None = None):
        self.missing = missing or []
        self.unknown = unknown or []
        super().__init__(message)


class ConfigurationError(LatticeForgeError):
    """A required runtime setting (such as the submission endpoint) is absent."""


class SubmissionError(LatticeForgeError):
    """The submission transport failed before an HTTP status was obtained."""
