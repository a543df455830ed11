"""Exception types raised by clucmp.

Every error raised by this package derives from :class:`ClucmpError`, so
callers can catch the whole family with a single except clause.
"""


class ClucmpError(Exception):
    """Base class for all clucmp errors."""


class EmptyInput(ClucmpError):
    """A clustering with no clusters, or an operation given no data."""


class EmptyCluster(ClucmpError):
    """A cluster with zero members."""


class CyclicHierarchy(ClucmpError):
    """Hierarchy edges contain a directed cycle."""


class UnknownClusterInDAG(ClucmpError):
    """A hierarchy edge references a cluster id that does not exist."""


class UniverseMismatch(ClucmpError):
    """Two clusterings do not cover the same element set."""


class NotAPartition(ClucmpError):
    """The operation requires a flat partition (each element in exactly one cluster)."""


class NonStochasticGraph(ClucmpError):
    """Element-graph rows do not sum to one."""


class NoConvergence(ClucmpError):
    """Iterative solver exceeded its iteration budget."""


class EmptySet(ClucmpError):
    """An empty collection of clusterings where at least one is required."""


class TooFewClusterings(ClucmpError):
    """Fewer clusterings than the operation needs."""


class IndivisibleSize(ClucmpError):
    """Requested equal-sized clusters but the element count is not divisible."""


class NoSuchLevel(ClucmpError):
    """Requested hierarchy level does not exist."""


class UnknownScenario(ClucmpError):
    """Scenario name not in the registry."""


class UnknownMeasure(ClucmpError):
    """Measure name not in the registry."""


class DegenerateARI(ClucmpError):
    """Adjusted Rand index is undefined for this pair of partitions."""


class ParseError(ClucmpError):
    """Input file or object does not match the clustering JSON schema."""


class MeasureInputUnsupported(ClucmpError):
    """The requested measure cannot handle this kind of clustering input."""
