"""Exception types shared across the package.

The CLI maps each class to an exit code, so new failure modes should
subclass one of these rather than raising bare ``ValueError``.
"""

from __future__ import annotations


class CodegreeError(Exception):
    """Base class for all package errors."""


class InputError(CodegreeError, ValueError):
    """Malformed user input: bad permutation, degree mismatch, parse failure."""


class DomainError(InputError):
    """Input is well formed but outside the domain of the operation."""


class CapacityError(CodegreeError):
    """A computation would exceed the configured element bound."""


class InvariantError(CodegreeError):
    """An internal consistency check failed.

    Raised loudly: it means either a bug or a counterexample to the
    classification being checked.
    """
