"""Exception types shared across the toolkit."""


class SpexError(Exception):
    """Base class for all spexkit errors."""


class InvalidVertex(SpexError):
    """A vertex index is out of range for the graph."""


class SelfLoop(SpexError):
    """An edge (v, v) was supplied; simple graphs have no loops."""


class OrderCap(SpexError):
    """A graph order exceeds the supported cap for the operation."""


class InvalidArgument(SpexError, ValueError):
    """A parameter is outside its documented range."""


class IterationCap(SpexError):
    """Power iteration failed to converge within its iteration budget."""


class EdgelessGraph(SpexError):
    """The operation needs at least one edge."""


class Disconnected(SpexError):
    """The operation is only defined for connected graphs."""


class NotBipartiteWithGivenParts(SpexError):
    """The graph is not bipartite with the supplied bipartition."""


class Graph6Error(SpexError):
    """A graph6 record is malformed."""


class BadHeader(Graph6Error):
    """The graph6 order byte is outside the printable single-byte range."""


class TruncatedRecord(Graph6Error):
    """A graph6 record has the wrong number of payload bytes."""


class NonzeroPadding(Graph6Error):
    """Unused padding bits of the final graph6 byte are not zero."""
