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
Gauge (Minkowski) function of the bodies, clamped below at one.
"""
from __future__ import annotations
from typing import Tuple
import logging

import numpy as np
from numpy.typing import ArrayLike

from ..arrays import FloatArray, as_batch
from ..const import GAUGE_BISECTION_TOLERANCE, GAUGE_FD_STEP
from ..exceptions import InvalidBodyError
from .body import Ball, Box, ConvexBody, OracleBody, Polytope

_LOGGER = logging.getLogger(__name__)


def scaled_halfspaces(body: ConvexBody) -> FloatArray:
    """
    Returns the halfspace normals of a box or a polytope scaled by their
    offsets, so that the body is `{x : max_i a_i^T x <= 1}`.
    """
    shape = body.shape
    if isinstance(shape, Polytope):
        return shape.normals / shape.offsets[:, np.newaxis]
    if isinstance(shape, Box):
        eye = np.eye(body.dim)
        return np.vstack([eye / shape.upper[:, np.newaxis],
                          eye / shape.lower[:, np.newaxis]])
    raise InvalidBodyError('Body has no halfspace description')


def _ball_gauge(shape: Ball, pts: FloatArray) -> FloatArray:
    """
    Unclamped gauge of a ball, the positive root `t` of
    `|x - t c| = t rho`.
    """
    rho = shape.radius
    center = shape.center
    norms_sq = np.sum(pts * pts, axis=1)
    if not np.any(center):
        return np.sqrt(norms_sq) / rho
    quad = float(center @ center) - rho * rho
    lin = pts @ center
    disc = np.sqrt(lin * lin - quad * norms_sq)
    return np.asarray((lin + disc) / -quad)


def _oracle_gauge(
    shape: OracleBody, x: FloatArray, lower: float, upper: float
) -> float:
    """
    Smallest `t` in `[lower, upper]` with `x / t` in the body, by bisection
    down to a relative width of `GAUGE_BISECTION_TOLERANCE`; `x / upper`
    has to lie in the body.
    """
    while upper - lower > GAUGE_BISECTION_TOLERANCE * upper:
        mid = 0.5 * (lower + upper)
        if shape.membership(x / mid):
            upper = mid
        else:
            lower = mid
    return upper


def minkowski_gauge_rows(body: ConvexBody, x: ArrayLike) -> FloatArray:
    """
    Unclamped Minkowski gauge `inf{t >= 0 : x in tK}` of each row.
    """
    pts, _ = as_batch(x)
    shape = body.shape
    if isinstance(shape, Ball):
        return _ball_gauge(shape, pts)
    if isinstance(shape, (Box, Polytope)):
        return np.maximum(np.max(pts @ scaled_halfspaces(body).T, axis=1),
                          0.0)
    result = np.empty(pts.shape[0])
    for i, row in enumerate(pts):
        norm = float(np.linalg.norm(row))
        if norm == 0.0:
            result[i] = 0.0
            continue
        # r-ball is inside the body, hence the gauge is at most |x| / r
        upper = norm / body.inner_radius * (1 + GAUGE_BISECTION_TOLERANCE)
        result[i] = _oracle_gauge(shape, row, 0.0, upper)
    return result


def gauge_value_rows(body: ConvexBody, x: ArrayLike) -> FloatArray:
    """
    Gauge `g_K(x) = inf{t >= 1 : x in tK}` of each row.
    """
    pts, _ = as_batch(x)
    shape = body.shape
    if not isinstance(shape, OracleBody):
        return np.maximum(minkowski_gauge_rows(body, pts), 1.0)

    result = np.ones(pts.shape[0])
    for i, row in enumerate(pts):
        if shape.membership(row):
            continue
        upper = 1.0 + float(np.linalg.norm(row)) / body.inner_radius
        result[i] = _oracle_gauge(shape, row, 1.0, upper)
    return result


def gauge_value(body: ConvexBody, x: ArrayLike) -> float:
    """
    Gauge of the body at a point, equals one on the body.

    :param body: The body, with the origin in its interior
    :param x: The point
    :return: `inf{t >= 1 : x in tK}`
    """
    if body.inner_radius <= 0:
        raise InvalidBodyError('Origin must be interior to the body')
    return float(gauge_value_rows(body, np.atleast_2d(x))[0])


def gauge_gradient_rows(
    body: ConvexBody, x: ArrayLike
) -> Tuple[FloatArray, FloatArray]:
    """
    Gauge of each row along with its gradient, the latter is zero where the
    gauge is clamped.

    For polytopes the facet attaining the maximum defines the gradient, the
    lowest index wins on ties.
    """
    pts, _ = as_batch(x)
    shape = body.shape
    grads = np.zeros_like(pts)

    if isinstance(shape, (Box, Polytope)):
        scaled = scaled_halfspaces(body)
        ratios = pts @ scaled.T
        facet = np.argmax(ratios, axis=1)
        values = np.maximum(ratios[np.arange(len(pts)), facet], 1.0)
        outside = values > 1.0
        grads[outside] = scaled[facet[outside]]
        return values, grads

    if isinstance(shape, Ball):
        raw = _ball_gauge(shape, pts)
        outside = raw > 1.0
        values = np.maximum(raw, 1.0)
        t = raw[outside, np.newaxis]
        resid = pts[outside] - t * shape.center
        denom = resid @ shape.center + raw[outside] * shape.radius ** 2
        grads[outside] = resid / denom[:, np.newaxis]
        return values, grads

    values = gauge_value_rows(body, pts)
    for i in np.flatnonzero(values > 1.0):
        for j in range(pts.shape[1]):
            step = np.zeros(pts.shape[1])
            step[j] = GAUGE_FD_STEP
            ahead, behind = gauge_value_rows(
                body, np.vstack([pts[i] + step, pts[i] - step])
            )
            grads[i, j] = (ahead - behind) / (2 * GAUGE_FD_STEP)
    return values, grads
