"""Exception hierarchy shared by every module."""

from __future__ import annotations


class LptError(Exception):
    """Base class for all errors raised by lptrans."""


class GraphFormatError(LptError, ValueError):
    """Malformed graph, representation or decomposition input."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class SizeLimitError(LptError):
    """The exact oracle refuses a graph above its configured vertex limit."""

    def __init__(self, what: str, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"{what}: graph has {n} vertices, limit is {limit}")


class PathOverflowError(LptError):
    """Enumeration would produce more longest paths than the configured cap."""

    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"more than {cap} longest paths; raise the cap or use a DP query")


class ClassMembershipError(LptError):
    """Input graph is not in the class a pipeline requires.

    ``witness`` is an induced obstruction (a vertex tuple) when one is known.
    """

    def __init__(self, message: str, witness: tuple[int, ...] | None = None):
        self.witness = witness
        if witness is not None:
            message = f"{message}; witness {list(witness)}"
        super().__init__(message)


class HypothesisError(LptError, ValueError):
    """A precondition of a construction does not hold; names it and a witness."""

    def __init__(self, hypothesis: str, witness=None):
        self.hypothesis = hypothesis
        self.witness = witness
        message = hypothesis if witness is None else f"{hypothesis} (witness: {witness})"
        super().__init__(message)


class InternalContradiction(LptError, RuntimeError):
    """A search whose success is guaranteed by a theorem came back empty.

    Seeing this means a bug or a silently broken precondition.
    """


class BudgetExhausted(LptError):
    """Rejection sampling ran out of attempts before finding an instance."""

    def __init__(self, what: str, attempts: int):
        self.attempts = attempts
        super().__init__(f"{what}: no instance accepted in {attempts} attempts")
