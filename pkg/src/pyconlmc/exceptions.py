# Copyright (c) 2024 pyconlmc developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""
Exceptions and warnings specific to constrained Langevin sampling.
"""
from __future__ import annotations
from typing import List, Optional


class ConLMCError(Exception):
    """
    Represents a generic exception raised by many package classes.
    """


class NonConvergenceError(ConLMCError):
    """
    Raised when an iterative solver exceeds its iteration cap.
    """


class NotSPDError(ConLMCError):
    """
    Raised when a matrix expected to be symmetric positive definite fails the
    Cholesky factorization.
    """


class InvalidBodyError(ConLMCError):
    """
    Raised when a convex body is malformed, e.g. does not contain the origin
    in its interior.
    """


class DomainError(ConLMCError, ValueError):
    """
    Raised when an argument lies outside of the domain of a function.
    """


class NonFiniteError(ConLMCError):
    """
    Raised when a chain produces non-finite position or velocity.
    """


class UnsupportedCombinationError(ConLMCError):
    """
    Raised when no schedule is known for the algorithm and metric pair.
    """


class SizeMismatchError(ConLMCError):
    """
    Raised when empirical measures have incompatible sizes or dimensions.
    """


class ProblemTooLargeError(ConLMCError):
    """
    Raised when an exact assignment is requested for too many points.
    """


class DegenerateDensityError(ConLMCError):
    """
    Raised when a tabulated density carries no mass.
    """


class DegenerateInputError(ConLMCError):
    """
    Raised when a regression is fed too few or non-positive points.
    """


class ConfigError(ConLMCError):
    """
    Base class for run configuration errors.
    """


class ConfigParseError(ConfigError):
    """
    Raised when the run configuration is not a well-formed document.
    """
    def __init__(
        self, message: str, line: Optional[int] = None,
        column: Optional[int] = None
    ) -> None:
        self.line = line
        self.column = column
        if line is not None:
            message = f'{message} (line {line}, column {column})'
        super().__init__(message)


class ConfigValidationError(ConfigError):
    """
    Raised when the run configuration violates one or more constraints, all
    of them are listed.
    """
    def __init__(self, violations: List[str]) -> None:
        self.violations = violations
        super().__init__(
            'Invalid configuration: ' + '; '.join(violations)
        )


class OutputError(ConLMCError):
    """
    Raised when experiment outputs could not be written.
    """


class StepSizeWarning(UserWarning):
    """
    Emitted when the step size exceeds the inverse smoothness of the
    surrogate potential.
    """


class LowAcceptanceWarning(UserWarning):
    """
    Emitted when the rejection sampler accepts too few proposals.
    """
