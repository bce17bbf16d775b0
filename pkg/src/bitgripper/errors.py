"""Exception hierarchy for the gripper cell simulator.

Two families matter to callers: ``UsageError`` subclasses signal a caller
mistake (bad arguments, protocol misuse) and map to nonzero CLI exits, while
``SimulationFault`` subclasses signal a fault raised by the simulated cell
itself (e.g. a scale that never settles).
"""


class GripperCellError(Exception):
    """Base class for every error raised by this package."""


class UsageError(GripperCellError):
    """Caller misuse: bad arguments or an operation called out of protocol."""


class ConfigError(GripperCellError):
    """Malformed or contradictory configuration input."""


class SimulationFault(GripperCellError):
    """A fault produced by the simulated hardware during a run."""


class KindMismatch(UsageError):
    """Food pile and belt assembly categories do not match."""


class EmptyPile(UsageError):
    """Pickup attempted from a pile with no mass left."""


class OverCapacity(UsageError):
    """Mass added to a scale beyond its rated capacity."""


class InvalidTarget(UsageError):
    """Drop target weight is zero or negative."""


class EmptyInput(UsageError):
    """An operation that requires at least one element got none."""


class UnknownFood(ConfigError):
    """An order names a food with no registered belt assembly."""


class ScaleUnstableTimeout(SimulationFault):
    """Debounced scale reading did not converge within the time budget."""


class ToolChangeProtocolError(UsageError):
    """Tool-change operation called from an incompatible phase."""


class DockOccupied(ToolChangeProtocolError):
    """Docking attempted onto a dock that already holds an assembly."""


class DockEmpty(ToolChangeProtocolError):
    """Undocking attempted from a dock that holds nothing."""


class NotFaulted(ToolChangeProtocolError):
    """Reset called on a state machine that is not in the Faulted phase."""
