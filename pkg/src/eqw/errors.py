"""Exception types shared across the package.

Input validation raises plain ``ValueError``; these classes cover the two
conditions the CLI maps to dedicated exit codes.
"""
from __future__ import annotations


class ResourceCapError(RuntimeError):
    """A requested computation exceeds its configured size cap."""


class TargetEntanglementError(RuntimeError):
    """The oracle pipeline's target qubit failed to factor out.

    Unreachable for states produced by the pipeline itself; exists so the
    internal product check is a real check rather than an assumption.
    """
