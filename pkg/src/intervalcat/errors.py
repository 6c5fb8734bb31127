"""Shared exception types."""


class CapExceeded(RuntimeError):
    """A computation would exceed a configured resource cap."""
