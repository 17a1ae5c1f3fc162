"""Exception hierarchy. Each class maps onto one CLI exit code."""

from __future__ import annotations


class SparsekError(Exception):
    exit_code = 3


class InputError(SparsekError, ValueError):
    """A precondition on the caller's input does not hold."""

    exit_code = 2


class InfeasibleError(SparsekError):
    """A flow requirement cannot be met; ``witness`` explains why."""

    exit_code = 1

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ConstructionError(SparsekError):
    """A heuristic construction gave up; ``partial`` holds the best attempt."""

    exit_code = 3

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class InvariantError(SparsekError, AssertionError):
    """An internal guarantee was violated. This is a defect."""

    exit_code = 3
