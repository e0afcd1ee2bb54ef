"""Shared exception hierarchy.

Two branches matter to callers: UsageError covers configuration and
validation problems (CLI exit code 1), everything else derived from
QAError is a runtime failure (exit code 2).
"""


class QAError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(QAError):
    """Bad configuration, bad flags, or failed validation."""
