"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """An exhaustive search would exceed its configured cap."""

    def __init__(self, message: str, cap):
        super().__init__(message)
        self.cap = cap
