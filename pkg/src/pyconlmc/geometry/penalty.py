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
Distance functions penalizing the constraint, and their gradients.
"""
from __future__ import annotations
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional, Tuple
import logging

import numpy as np
from numpy.typing import ArrayLike

from ..arrays import (
    FloatArray, as_batch, unbatch_points, unbatch_values,
)
from ..const import GAUGE_CURVATURE_DIRECTIONS, PenaltyKind
from ..exceptions import DomainError
from .body import ConvexBody, OracleBody
from .gauge import gauge_gradient_rows, gauge_value_rows, minkowski_gauge_rows
from .projection import (
    bregman_project_rows, check_spd, euclidean_project_rows,
)

_LOGGER = logging.getLogger(__name__)

_CURVATURE_STEP = 1e-5
_ORACLE_CURVATURE_STEP = 1e-3
# Relative disagreement between two step sizes marking a kink sample
_KINK_TOLERANCE = 0.1
_OUTWARD_SCALE = 2.0


@dataclass(frozen=True, eq=False)
class Penalty:
    """
    Distance function `d_K` along with the tuning `lam` and constants.

    `m0` is the Lipschitz constant of the gradient of `d_K`, `c1` and `c2`
    bound `d_K` against the squared Euclidean distance to the body.
    """
    kind: PenaltyKind
    lam: float
    m0: float
    c1: float
    c2: float
    q: Optional[FloatArray] = None

    def __post_init__(self) -> None:
        if not self.lam > 0:
            raise DomainError(f'Penalty lambda must be positive: {self.lam}')
        if not 0 < self.c1 <= self.c2:
            raise DomainError(
                f'Penalty constants must satisfy 0 < c1 <= c2: {self.c1},'
                f' {self.c2}'
            )

    @classmethod
    def euclidean(cls, lam: float) -> Penalty:
        """
        Squared Euclidean distance to the body.
        """
        return cls(kind=PenaltyKind.EUCLIDEAN, lam=lam, m0=2.0, c1=1.0,
                   c2=1.0)

    @classmethod
    def bregman(cls, q_mat: ArrayLike, lam: float) -> Penalty:
        """
        Squared Mahalanobis distance to the Bregman projection under `Q`.

        :raises NotSPDError: `Q` is not symmetric positive definite
        """
        metric = np.asarray(q_mat, dtype=np.float64)
        check_spd(metric)
        eigvals = np.linalg.eigvalsh(metric)
        return cls(
            kind=PenaltyKind.BREGMAN, lam=lam, m0=2.0 * float(eigvals[-1]),
            c1=float(eigvals[0]), c2=float(eigvals[-1]), q=metric
        )

    @classmethod
    def gauge(
        cls, body: ConvexBody, lam: float,
        rng: Optional[np.random.Generator] = None
    ) -> Penalty:
        """
        Squared excess of the gauge over one.

        The smoothness constant is `4 / r^2` for balls centered at the origin,
        and `2 (1 + C_K r) / r^2` otherwise with the gauge curvature `C_K`
        estimated numerically.
        """
        r = body.inner_radius
        if body.is_centered_ball:
            m0 = 4.0 / r ** 2
        else:
            curvature = estimate_gauge_curvature(
                body, rng=rng or np.random.default_rng(0)
            )
            m0 = 2.0 * (1.0 + curvature * r) / r ** 2
        return cls(
            kind=PenaltyKind.GAUGE, lam=lam, m0=m0,
            c1=1.0 / body.outer_radius ** 2, c2=1.0 / r ** 2
        )

    def with_lambda(self, lam: float) -> Penalty:
        """
        Returns the same distance function under another tuning.
        """
        return replace(self, lam=lam)

    def _asdict(self) -> Dict[str, Any]:
        """
        Returns the penalty as dictionary.
        """
        return {
            'kind': self.kind.name.lower(),
            'lambda': self.lam,
            'm0': self.m0,
            'c1': self.c1,
            'c2': self.c2,
            'q': None if self.q is None else self.q.tolist(),
        }


def _finite_difference_hessian(
    body: ConvexBody, x: FloatArray, step: float
) -> FloatArray:
    """
    Hessian of the gauge at `x`, by central differences of the analytic
    gradient or, for oracle bodies, by second differences of the values.
    """
    dim = x.shape[0]
    eye = np.eye(dim) * step
    if not isinstance(body.shape, OracleBody):
        _, grads = gauge_gradient_rows(
            body, np.vstack([x + eye, x - eye])
        )
        hess = (grads[:dim] - grads[dim:]).T / (2 * step)
        return np.asarray(0.5 * (hess + hess.T))

    hess = np.empty((dim, dim))
    for j in range(dim):
        for k in range(dim):
            corners = np.vstack([
                x + eye[j] + eye[k], x + eye[j] - eye[k],
                x - eye[j] + eye[k], x - eye[j] - eye[k],
            ])
            vals = minkowski_gauge_rows(body, corners)
            hess[j, k] = (vals[0] - vals[1] - vals[2] + vals[3]) / (
                4 * step ** 2
            )
    return hess


def estimate_gauge_curvature(
    body: ConvexBody, n_directions: int = GAUGE_CURVATURE_DIRECTIONS,
    rng: Optional[np.random.Generator] = None
) -> float:
    """
    Estimates the largest spectral norm of the gauge Hessian over boundary
    points in random directions.

    Samples whose finite-difference Hessians at two step sizes disagree are
    straddling a kink of the gauge and are discarded.

    :param body: The body
    :param n_directions: Number of random boundary directions
    :param rng: Random generator for the directions
    :return: Curvature estimate, zero for polytopes away from the kinks
    """
    gen = rng or np.random.default_rng(0)
    step = (
        _ORACLE_CURVATURE_STEP if isinstance(body.shape, OracleBody)
        else _CURVATURE_STEP
    )
    directions = gen.standard_normal((n_directions, body.dim))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    boundary = directions / minkowski_gauge_rows(
        body, directions
    )[:, np.newaxis]

    curvature = 0.0
    discarded = 0
    # The Hessian of the gauge scales as 1 / t along rays, evaluating off
    # the boundary keeps the clamp at one out of the stencil
    for x in _OUTWARD_SCALE * boundary:
        fine = _OUTWARD_SCALE * _finite_difference_hessian(body, x, step)
        coarse = _OUTWARD_SCALE * _finite_difference_hessian(
            body, x, 2 * step
        )
        fine_norm = float(np.linalg.norm(fine, 2))
        if np.linalg.norm(fine - coarse, 2) > _KINK_TOLERANCE * max(
            1.0, fine_norm
        ):
            discarded += 1
            continue
        curvature = max(curvature, fine_norm)

    _LOGGER.debug(
        'Gauge curvature %s estimated from %s directions (%s discarded)',
        curvature, n_directions, discarded
    )
    return curvature


def _distance_and_gradient(
    penalty: Penalty, body: ConvexBody, pts: FloatArray
) -> Tuple[FloatArray, FloatArray]:
    """
    Evaluates `d_K` and its gradient for each row.
    """
    if penalty.kind == PenaltyKind.GAUGE:
        values, grads = gauge_gradient_rows(body, pts)
        excess = values - 1.0
        return excess ** 2, 2.0 * excess[:, np.newaxis] * grads

    if penalty.kind == PenaltyKind.BREGMAN:
        assert penalty.q is not None
        resid = pts - bregman_project_rows(body, penalty.q, pts)
        weighted = resid @ penalty.q
        return np.sum(resid * weighted, axis=1), 2.0 * weighted

    resid = pts - euclidean_project_rows(body, pts)
    return np.sum(resid * resid, axis=1), 2.0 * resid


def penalty_distance_rows(
    penalty: Penalty, body: ConvexBody, x: ArrayLike
) -> FloatArray:
    """
    Evaluates `d_K` for each row.
    """
    pts, _ = as_batch(x)
    if penalty.kind == PenaltyKind.GAUGE:
        return np.asarray((gauge_value_rows(body, pts) - 1.0) ** 2)
    return _distance_and_gradient(penalty, body, pts)[0]


def penalty_gradient_rows(
    penalty: Penalty, body: ConvexBody, x: ArrayLike
) -> FloatArray:
    """
    Evaluates the gradient of `d_K` for each row.
    """
    pts, _ = as_batch(x)
    return _distance_and_gradient(penalty, body, pts)[1]


def penalty_distance(
    penalty: Penalty, body: ConvexBody, x: ArrayLike
) -> float:
    """
    Distance function `d_K` at a point, zero on the body.

    :param penalty: The penalty
    :param body: The body
    :param x: The point
    """
    pts, single = as_batch(x)
    return float(
        unbatch_values(penalty_distance_rows(penalty, body, pts), single)
    )


def penalty_gradient(
    penalty: Penalty, body: ConvexBody, x: ArrayLike
) -> FloatArray:
    """
    Gradient of `d_K` at a point, zero on the interior of the body.
    """
    pts, single = as_batch(x)
    return unbatch_points(penalty_gradient_rows(penalty, body, pts), single)
