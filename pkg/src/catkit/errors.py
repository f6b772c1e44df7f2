"""Shared error type carrying a finding kind and an optional witness."""

from __future__ import annotations


class CheckError(Exception):
    """Raised when validation fails or a precondition is not met.

    ``kind`` is a short stable identifier (e.g. ``"MissingComposite"``,
    ``"SizeBound"``) used by tests and by the CLI report renderer;
    ``witness`` holds whatever object pinpoints the violation.
    """

    def __init__(self, kind: str, message: str, witness=None):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.message = message
        self.witness = witness

    def __repr__(self):
        return f"CheckError({self.kind!r}, {self.message!r}, witness={self.witness!r})"
