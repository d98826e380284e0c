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
Euclidean and Bregman projections onto the bodies.
"""
from __future__ import annotations
from typing import Optional, Tuple
import logging

import numpy as np
from numpy.typing import ArrayLike
from scipy.linalg import solve_triangular
from scipy.optimize import brentq, minimize

from ..arrays import FloatArray, as_batch, unbatch_points
from ..const import (
    PROJECTION_MAX_SWEEPS, PROJECTION_TOLERANCE, ROOT_TOLERANCE,
)
from ..exceptions import NonConvergenceError, NotSPDError
from .body import Ball, Box, ConvexBody, OracleBody, Polytope, contains_rows
from .gauge import minkowski_gauge_rows

_LOGGER = logging.getLogger(__name__)

# Slack identifying active facets on the Dykstra output
_ACTIVE_SLACK = 1e-8
_ORACLE_SLACK = 1e-6


def _halfspaces(body: ConvexBody) -> Tuple[FloatArray, FloatArray]:
    """
    Returns `(A, b)` of a box or a polytope.
    """
    shape = body.shape
    if isinstance(shape, Polytope):
        return shape.normals, shape.offsets
    assert isinstance(shape, Box)
    eye = np.eye(body.dim)
    return np.vstack([eye, -eye]), np.concatenate([shape.upper, -shape.lower])


def _polish(
    a_mat: FloatArray, b_vec: FloatArray, x: FloatArray, y: FloatArray
) -> FloatArray:
    """
    Snaps the approximate projection `y` of `x` to the exact projection onto
    the affine hull of its active facets, when that satisfies the KKT
    conditions.
    """
    active = a_mat @ y - b_vec > -_ACTIVE_SLACK
    if not np.any(active):
        return y
    a_act = a_mat[active]
    mult, *_ = np.linalg.lstsq(
        a_act @ a_act.T, a_act @ x - b_vec[active], rcond=None
    )
    snapped: FloatArray = x - a_act.T @ mult
    if (
        np.all(mult >= -PROJECTION_TOLERANCE)
        and np.all(a_mat @ snapped <= b_vec + PROJECTION_TOLERANCE)
        and np.linalg.norm(snapped - y) <= 1e3 * PROJECTION_TOLERANCE
    ):
        return snapped
    return y


def dykstra_project(
    a_mat: FloatArray, b_vec: FloatArray, pts: FloatArray
) -> FloatArray:
    """
    Projects the rows onto `{y : A y <= b}` with Dykstra's alternating
    projections on the halfspaces.

    :raises NonConvergenceError: Sweep cap is exceeded
    """
    result = pts.copy()
    outside = np.any(pts @ a_mat.T > b_vec, axis=1)
    if not np.any(outside):
        return result

    y = pts[outside].copy()
    norms_sq = np.sum(a_mat * a_mat, axis=1)
    increments = np.zeros((a_mat.shape[0],) + y.shape)
    for sweep in range(PROJECTION_MAX_SWEEPS):
        previous = y.copy()
        for i, (normal, offset) in enumerate(zip(a_mat, b_vec)):
            shifted = y + increments[i]
            excess = np.maximum(shifted @ normal - offset, 0.0) / norms_sq[i]
            y = shifted - excess[:, np.newaxis] * normal
            increments[i] = shifted - y
        if np.max(np.abs(y - previous)) <= PROJECTION_TOLERANCE:
            _LOGGER.debug('Dykstra converged after %s sweeps', sweep + 1)
            break
    else:
        raise NonConvergenceError(
            f'Dykstra projection did not converge in {PROJECTION_MAX_SWEEPS}'
            ' sweeps'
        )

    sources = pts[outside]
    result[outside] = np.array([
        _polish(a_mat, b_vec, src, approx) for src, approx in zip(sources, y)
    ])
    return result


def _oracle_project(
    body: ConvexBody, pts: FloatArray, q_mat: Optional[FloatArray]
) -> FloatArray:
    """
    Projects rows onto a membership-oracle body with SLSQP, constraining the
    Minkowski gauge to at most one.
    """
    metric = np.eye(body.dim) if q_mat is None else q_mat
    result = pts.copy()
    inside = contains_rows(body, pts)
    for i in np.flatnonzero(~inside):
        x = pts[i]
        start = x / minkowski_gauge_rows(body, x)[0]

        def cost(y: FloatArray, x: FloatArray = x) -> float:
            return float((y - x) @ metric @ (y - x))

        def cost_grad(y: FloatArray, x: FloatArray = x) -> FloatArray:
            return np.asarray(2.0 * metric @ (y - x))

        res = minimize(
            cost, start, jac=cost_grad, method='SLSQP',
            constraints=[{
                'type': 'ineq',
                'fun': lambda y: 1.0 - minkowski_gauge_rows(body, y)[0],
            }],
            options={'ftol': 1e-14, 'maxiter': 1000},
        )
        if not res.success:
            # Noisy gauge gradients may stall the line search at the optimum
            if minkowski_gauge_rows(body, res.x)[0] > 1.0 + _ORACLE_SLACK:
                raise NonConvergenceError(
                    f'Projection onto the oracle body failed: {res.message}'
                )
            _LOGGER.debug('Accepting feasible SLSQP result: %s', res.message)
        result[i] = res.x
    return result


def euclidean_project_rows(body: ConvexBody, x: ArrayLike) -> FloatArray:
    """
    Euclidean projection of each row onto the body.
    """
    pts, _ = as_batch(x)
    shape = body.shape
    if isinstance(shape, Ball):
        offsets = pts - shape.center
        norms = np.linalg.norm(offsets, axis=1, keepdims=True)
        scale = np.minimum(
            1.0, shape.radius / np.where(norms > 0, norms, 1.0)
        )
        return np.asarray(shape.center + offsets * scale)
    if isinstance(shape, Box):
        return np.clip(pts, shape.lower, shape.upper)
    if isinstance(shape, Polytope):
        return dykstra_project(shape.normals, shape.offsets, pts)
    return _oracle_project(body, pts, None)


def euclidean_project(body: ConvexBody, x: ArrayLike) -> FloatArray:
    """
    Euclidean projection onto the body.

    :param body: The body
    :param x: Point to project
    :return: The nearest point of the body, `x` itself when inside
    :raises NonConvergenceError: Iterative projection exceeded its cap
    """
    pts, single = as_batch(x)
    return unbatch_points(euclidean_project_rows(body, pts), single)


def check_spd(q_mat: ArrayLike) -> FloatArray:
    """
    Validates the matrix is symmetric positive definite.

    :return: Lower Cholesky factor of the matrix
    :raises NotSPDError: The matrix is asymmetric or indefinite
    """
    mat = np.asarray(q_mat, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise NotSPDError(f'Expected a square matrix, got shape {mat.shape}')
    if not np.allclose(mat, mat.T, rtol=1e-12, atol=1e-12):
        raise NotSPDError('Matrix is not symmetric')
    try:
        return np.linalg.cholesky(mat)
    except np.linalg.LinAlgError as exc:
        raise NotSPDError('Matrix is not positive definite') from exc


def _ball_bregman(
    shape: Ball, q_mat: FloatArray, pts: FloatArray
) -> FloatArray:
    """
    Bregman projection onto a ball through the secular equation of the
    multiplier `mu` in `y = (Q + mu I)^-1 (Q x + mu c)`.
    """
    eigvals, eigvecs = np.linalg.eigh(q_mat)
    result = pts.copy()
    rho_sq = shape.radius ** 2
    for i, x in enumerate(pts):
        z = eigvecs.T @ (x - shape.center)
        if z @ z <= rho_sq:
            continue

        def excess(mu: float, z: FloatArray = z) -> float:
            scaled = eigvals * z / (eigvals + mu)
            return float(scaled @ scaled) - rho_sq

        upper = float(eigvals[-1]) * float(np.linalg.norm(z)) / shape.radius
        mu = brentq(excess, 0.0, upper, xtol=ROOT_TOLERANCE,
                    rtol=ROOT_TOLERANCE)
        result[i] = shape.center + eigvecs @ (eigvals * z / (eigvals + mu))
    return result


def bregman_project_rows(
    body: ConvexBody, q_mat: ArrayLike, x: ArrayLike
) -> FloatArray:
    """
    Bregman projection of each row onto the body under the cost
    `(x - y)^T Q (x - y)`.
    """
    pts, _ = as_batch(x)
    lower = check_spd(q_mat)
    metric = np.asarray(q_mat, dtype=np.float64)
    if np.array_equal(metric, np.eye(body.dim)):
        return euclidean_project_rows(body, pts)

    shape = body.shape
    if isinstance(shape, Ball):
        return _ball_bregman(shape, metric, pts)
    if isinstance(shape, Box) and np.count_nonzero(
        metric - np.diag(np.diag(metric))
    ) == 0:
        return np.clip(pts, shape.lower, shape.upper)
    if isinstance(shape, OracleBody):
        return _oracle_project(body, pts, metric)

    # With Q = L L^T and z = L^T y the cost becomes Euclidean in z
    a_mat, b_vec = _halfspaces(body)
    a_transformed = solve_triangular(lower, a_mat.T, lower=True).T
    z = dykstra_project(a_transformed, b_vec, pts @ lower)
    return np.asarray(solve_triangular(lower.T, z.T, lower=False).T)


def bregman_project(
    body: ConvexBody, q_mat: ArrayLike, x: ArrayLike
) -> FloatArray:
    """
    Bregman projection onto the body.

    :param body: The body
    :param q_mat: Symmetric positive definite metric `Q`
    :param x: Point to project
    :return: Minimizer of `(x - y)^T Q (x - y)` over the body
    :raises NotSPDError: `Q` fails the Cholesky factorization
    :raises NonConvergenceError: Iterative projection exceeded its cap
    """
    pts, single = as_batch(x)
    return unbatch_points(bregman_project_rows(body, q_mat, pts), single)
