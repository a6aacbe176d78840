"""Exception types shared across the package."""


class CliquecommError(Exception):
    """Base class for all package-specific errors."""


class EdgeListParseError(CliquecommError):
    """A malformed record in an edge-list, cover, or hashtag file."""

    def __init__(self, path, line_number, message):
        self.path = str(path)
        self.line_number = line_number
        super().__init__(f"{self.path}:{line_number}: {message}")


class ResourceLimitError(CliquecommError):
    """A configurable resource cap (clique count, k-clique count) was exceeded."""


class DeadlineExceededError(CliquecommError):
    """A wall-clock timeout elapsed mid-computation."""
