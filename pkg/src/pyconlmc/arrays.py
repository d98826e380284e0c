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
Array type aliases and helpers treating a point and a batch of points
uniformly.
"""
from __future__ import annotations
from typing import Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

FloatArray = NDArray[np.float64]
Scalar = Union[float, FloatArray]


def as_batch(x: ArrayLike) -> Tuple[FloatArray, bool]:
    """
    Converts a point of shape `(p,)` or a batch of shape `(N, p)` to a batch.

    :param x: Point or batch of points
    :return: The batch and whether the input was a single point
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        return arr[np.newaxis, :], True
    if arr.ndim != 2:
        raise ValueError(f'Expected a point or a batch, got shape {arr.shape}')
    return arr, False


def unbatch_points(batch: FloatArray, single: bool) -> FloatArray:
    """
    Reverts :func:`as_batch` for per-row vectors.
    """
    return batch[0] if single else batch


def unbatch_values(values: FloatArray, single: bool) -> Scalar:
    """
    Reverts :func:`as_batch` for per-row scalars.
    """
    return float(values[0]) if single else values


def row_column(value: ArrayLike, rows: int) -> FloatArray:
    """
    Broadcasts a scalar or a per-row vector into a `(rows, 1)` column.
    """
    arr = np.asarray(value, dtype=np.float64)
    if arr.ndim == 0:
        return np.full((rows, 1), float(arr))
    return arr.reshape(rows, 1)
