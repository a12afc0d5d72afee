"""Shared exception types."""


class DomainError(ValueError):
    """A precondition or invariant of the dispatch domain was violated."""


class ParseError(DomainError):
    """Malformed formula text. Carries the 0-based offset of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at column {position + 1})")
        self.position = position


class LlmError(RuntimeError):
    """A language-model backend call failed. Carries partial context."""

    def __init__(self, message: str, context: dict | None = None):
        super().__init__(message)
        self.context = context or {}
