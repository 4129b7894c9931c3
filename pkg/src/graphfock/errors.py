"""Exception types raised while parsing and validating carriers."""


class CarrierError(Exception):
    """Base class for problems with a graph or k-graph description."""


class GraphParseError(CarrierError):
    """The text of a carrier file is malformed."""


class DuplicateIdError(CarrierError):
    """A vertex or edge id is declared twice."""


class UnknownVertexError(CarrierError):
    """An edge refers to a vertex that was never declared."""


class KGraphError(CarrierError):
    """Base class for k-graph validation failures."""


class MalformedSquareError(KGraphError):
    """A commutation square has bad colors, sources or ranges."""


class IncompleteSquaresError(KGraphError):
    """Some mixed-color 2-path has no commutation square."""


class ConflictingSquaresError(KGraphError):
    """The square table is not a bijective pairing."""


class CubeConditionError(KGraphError):
    """Reordering a three-colored word along the two hexagon routes disagrees."""


class ColorSourceError(KGraphError):
    """A vertex receives no edge of some color, so the no-sources hypothesis fails."""
