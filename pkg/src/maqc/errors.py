"""Error types shared by every module.

Two families matter to callers: bad input (exit code 1 from the CLI) and a
broken internal invariant such as d∘d ≠ 0 (exit code 2).
"""


class ValidationError(ValueError):
    """The user handed us something that does not describe a valid object."""


class InvariantError(RuntimeError):
    """A computed object violates an identity it must satisfy; this is a bug."""
