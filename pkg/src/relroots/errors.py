"""Exception hierarchy shared by the toolkit.

The classes mirror the CLI exit codes: input problems exit 1, size-guard
violations exit 2, indeterminate certificates exit 3 and numerical
failures exit 4.
"""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InputError(ToolkitError):
    """Malformed or out-of-contract input (bad JSON, loops, disconnected graphs...)."""

    exit_code = 1


class DisconnectedGraphError(InputError):
    """An operation that requires a connected graph received a disconnected one."""


class GuardExceededError(ToolkitError):
    """An enumeration or recursion guard was exceeded."""

    exit_code = 2


class IndeterminateError(ToolkitError):
    """A certified sign could not be decided at the configured subdivision depth.

    This is a precision failure, not a disproof.
    """

    exit_code = 3


class SchurCohnHypothesisError(ToolkitError):
    """Some determinant in the root-counting test is exactly zero.

    The test's hypothesis fails, so no root count can be reported.
    """

    exit_code = 3


class RootFindingError(ToolkitError):
    """The root solver did not converge within its iteration/precision budget."""

    exit_code = 4


class NumericalError(ToolkitError):
    """A numerical consistency check failed (e.g. an exact division left a remainder)."""

    exit_code = 4
