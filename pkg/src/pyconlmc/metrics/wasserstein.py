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
Wasserstein distances between empirical measures.
"""
from __future__ import annotations
from typing import Optional
import logging

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from ..const import ASSIGNMENT_MAX_SIZE, SLICED_PROJECTIONS
from ..exceptions import DomainError, ProblemTooLargeError, SizeMismatchError
from .measure import EmpiricalMeasure

_LOGGER = logging.getLogger(__name__)


def _check_pair(q: float, a: EmpiricalMeasure, b: EmpiricalMeasure) -> None:
    if q < 1:
        raise DomainError(f'Wasserstein order must be at least one: {q}')
    if a.size != b.size or a.dim != b.dim:
        raise SizeMismatchError(
            f'Measures of shapes {a.points.shape} and {b.points.shape} are'
            ' not comparable'
        )


def wasserstein_empirical(
    q: float, a: EmpiricalMeasure, b: EmpiricalMeasure
) -> float:
    """
    Exact Wasserstein distance of order `q` between equal-size empirical
    measures, solved as an assignment problem.

    :param q: Order, at least one
    :param a: First measure
    :param b: Second measure, same size and dimension
    :raises SizeMismatchError: Measures differ in size or dimension
    :raises ProblemTooLargeError: Measures are too large for the exact solver
    """
    _check_pair(q, a, b)
    if a.size > ASSIGNMENT_MAX_SIZE:
        raise ProblemTooLargeError(
            f'Exact assignment is limited to {ASSIGNMENT_MAX_SIZE} points,'
            f' got {a.size}; use the sliced estimator'
        )
    cost = cdist(a.points, b.points) ** q
    rows, cols = linear_sum_assignment(cost)
    return float(np.mean(cost[rows, cols]) ** (1.0 / q))


def sliced_wasserstein(
    q: float, a: EmpiricalMeasure, b: EmpiricalMeasure,
    n_projections: int = SLICED_PROJECTIONS,
    rng: Optional[np.random.Generator] = None,
) -> float:
    """
    Sliced Wasserstein distance: one-dimensional distances of projections
    onto random directions, averaged in the `q`-th power.

    One-dimensional measures are compared along their only direction, where
    the result is exact.

    :param n_projections: Number of random directions
    :param rng: Generator of the directions
    :raises SizeMismatchError: Measures differ in size or dimension
    """
    _check_pair(q, a, b)
    if a.dim == 1:
        directions = np.ones((1, 1))
    else:
        gen = rng or np.random.default_rng(0)
        directions = gen.standard_normal((n_projections, a.dim))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    proj_a = np.sort(a.points @ directions.T, axis=0)
    proj_b = np.sort(b.points @ directions.T, axis=0)
    costs = np.mean(np.abs(proj_a - proj_b) ** q, axis=0)
    return float(np.mean(costs) ** (1.0 / q))


def wasserstein(
    q: float, a: EmpiricalMeasure, b: EmpiricalMeasure,
    rng: Optional[np.random.Generator] = None,
) -> float:
    """
    Exact distance when the assignment solver can handle the size, sliced
    estimate otherwise.
    """
    if a.size <= ASSIGNMENT_MAX_SIZE:
        return wasserstein_empirical(q, a, b)
    _LOGGER.debug('Falling back to the sliced estimator for %s points',
                  a.size)
    return sliced_wasserstein(q, a, b, rng=rng)
