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
Empirical measures the Wasserstein estimators operate on.
"""
from __future__ import annotations
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from ..arrays import FloatArray
from ..exceptions import DomainError


@dataclass(frozen=True, eq=False)
class EmpiricalMeasure:
    """
    Uniformly weighted points, stored as an `(N, p)` array.
    """
    points: FloatArray

    def __post_init__(self) -> None:
        if self.points.ndim != 2 or self.points.shape[0] < 1:
            raise DomainError(
                'Empirical measure needs a non-empty (N, p) array, got'
                f' shape {self.points.shape}'
            )
        if not np.all(np.isfinite(self.points)):
            raise DomainError('Empirical measure has non-finite points')

    @classmethod
    def from_points(cls, points: ArrayLike) -> EmpiricalMeasure:
        """
        Constructs the measure, a flat array is taken as one-dimensional
        points.
        """
        arr = np.asarray(points, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[:, np.newaxis]
        return cls(points=arr)

    @property
    def size(self) -> int:
        """
        Number of points.
        """
        return int(self.points.shape[0])

    @property
    def dim(self) -> int:
        """
        Dimension of the points.
        """
        return int(self.points.shape[1])

    @property
    def weights(self) -> FloatArray:
        """
        Weights of the points, `1 / N` each.
        """
        return np.full(self.size, 1.0 / self.size)
