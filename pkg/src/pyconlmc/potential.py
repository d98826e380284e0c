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
Target potentials and their penalized surrogates.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Union
import logging
import math

import numpy as np
from numpy.typing import ArrayLike

from .arrays import FloatArray, as_batch, unbatch_points
from .const import MINIMIZER_GRADIENT_TOLERANCE, MINIMIZER_MAX_ITERATIONS
from .exceptions import DomainError, NonConvergenceError
from .geometry.body import ConvexBody
from .geometry.penalty import (
    Penalty, penalty_distance_rows, penalty_gradient_rows,
)
from .geometry.projection import check_spd

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Quadratic:
    """
    Quadratic form `f(x) = (x - center)^T precision (x - center) / 2`.
    """
    center: FloatArray
    precision: FloatArray


@dataclass(frozen=True, eq=False)
class Custom:
    """
    User supplied value and gradient. Unless `vectorized`, the callables take
    a single point and are applied row by row.
    """
    value: Callable[[FloatArray], Any]
    gradient: Callable[[FloatArray], Any]
    vectorized: bool = False


Form = Union[Quadratic, Custom]


@dataclass(frozen=True, eq=False)
class Potential:
    """
    Strongly convex and smooth potential `f`, `m` and `M` bound its Hessian.
    """
    form: Form
    m: float
    M: float  # pylint: disable=invalid-name
    minimizer: FloatArray

    def __post_init__(self) -> None:
        if not 0 < self.m <= self.M:
            raise DomainError(
                f'Potential constants must satisfy 0 < m <= M: {self.m},'
                f' {self.M}'
            )

    @classmethod
    def quadratic(
        cls, center: ArrayLike, precision: ArrayLike
    ) -> Potential:
        """
        Gaussian potential with the given mean and precision matrix.

        :raises NotSPDError: Precision is not symmetric positive definite
        """
        mean = np.asarray(center, dtype=np.float64).reshape(-1)
        prec = np.asarray(precision, dtype=np.float64)
        check_spd(prec)
        if prec.shape[0] != mean.shape[0]:
            raise DomainError(
                f'Precision of shape {prec.shape} does not match the mean of'
                f' dimension {mean.shape[0]}'
            )
        eigvals = np.linalg.eigvalsh(prec)
        return cls(
            form=Quadratic(center=mean, precision=prec),
            m=float(eigvals[0]), M=float(eigvals[-1]), minimizer=mean,
        )

    @classmethod
    def standard_gaussian(cls, dim: int) -> Potential:
        """
        Potential `|x|^2 / 2` of the standard Gaussian.
        """
        return cls.quadratic(np.zeros(dim), np.eye(dim))

    @classmethod
    def custom(  # pylint: disable=too-many-arguments
        cls, value: Callable[[FloatArray], Any],
        gradient: Callable[[FloatArray], Any], m: float,
        M: float,  # pylint: disable=invalid-name
        dim: int, start: Optional[ArrayLike] = None,
        vectorized: bool = False,
    ) -> Potential:
        """
        Potential from user callables, the minimizer is located by gradient
        descent with step `1 / M`.

        :raises NonConvergenceError: Gradient descent exceeded its cap
        """
        form = Custom(value=value, gradient=gradient, vectorized=vectorized)
        x = (
            np.zeros(dim) if start is None
            else np.asarray(start, dtype=np.float64).reshape(-1)
        )
        for iteration in range(MINIMIZER_MAX_ITERATIONS):
            grad = _custom_rows(form.gradient, x[np.newaxis, :],
                                vectorized)[0]
            if np.linalg.norm(grad) <= MINIMIZER_GRADIENT_TOLERANCE:
                _LOGGER.debug(
                    'Minimizer found after %s iterations', iteration
                )
                break
            x = x - grad / M
        else:
            raise NonConvergenceError(
                'Gradient descent for the minimizer did not converge in'
                f' {MINIMIZER_MAX_ITERATIONS} iterations'
            )
        return cls(form=form, m=m, M=M, minimizer=x)

    @property
    def dim(self) -> int:
        """
        Dimension of the domain.
        """
        return int(self.minimizer.shape[0])

    @property
    def isotropic_scale(self) -> Optional[float]:
        """
        The scale `a` when the potential is `a |x|^2 / 2`, `None` otherwise.
        """
        form = self.form
        if not isinstance(form, Quadratic) or np.any(form.center):
            return None
        scale = float(form.precision[0, 0])
        if not np.array_equal(form.precision, scale * np.eye(self.dim)):
            return None
        return scale

    def value_rows(self, x: ArrayLike) -> FloatArray:
        """
        Evaluates the potential for each row.
        """
        pts, _ = as_batch(x)
        form = self.form
        if isinstance(form, Quadratic):
            resid = pts - form.center
            return np.asarray(
                0.5 * np.sum(resid * (resid @ form.precision), axis=1)
            )
        return _custom_rows(form.value, pts, form.vectorized).reshape(-1)

    def gradient_rows(self, x: ArrayLike) -> FloatArray:
        """
        Evaluates the gradient of the potential for each row.
        """
        pts, _ = as_batch(x)
        form = self.form
        if isinstance(form, Quadratic):
            return np.asarray((pts - form.center) @ form.precision)
        return _custom_rows(form.gradient, pts, form.vectorized).reshape(
            pts.shape
        )

    def _asdict(self) -> Dict[str, Any]:
        """
        Returns the potential as dictionary.
        """
        result: Dict[str, Any] = {
            'm': self.m, 'M': self.M, 'minimizer': self.minimizer.tolist(),
        }
        if isinstance(self.form, Quadratic):
            result.update(
                kind='gaussian', mean=self.form.center.tolist(),
                precision=self.form.precision.tolist(),
            )
        else:
            result.update(kind='custom')
        return result


def _custom_rows(
    func: Callable[[FloatArray], Any], pts: FloatArray, vectorized: bool
) -> FloatArray:
    """
    Applies a user callable to a batch.
    """
    if vectorized:
        return np.asarray(func(pts), dtype=np.float64)
    return np.array([func(row) for row in pts], dtype=np.float64)


@dataclass(frozen=True, eq=False)
class SurrogatePotential:
    """
    Surrogate `U(x) = f(x) + d_K(x) / (2 lam^2)` replacing the hard
    constraint by the penalty.
    """
    f: Potential
    penalty: Penalty
    body: ConvexBody

    def __post_init__(self) -> None:
        if self.f.dim != self.body.dim:
            raise DomainError(
                f'Potential of dimension {self.f.dim} does not match the body'
                f' of dimension {self.body.dim}'
            )

    @property
    def dim(self) -> int:
        """
        Dimension of the domain.
        """
        return self.f.dim

    @property
    def strong_convexity(self) -> float:
        """
        Strong convexity constant, inherited from `f`.
        """
        return self.f.m

    @property
    def _weight(self) -> float:
        lam = self.penalty.lam
        return 0.0 if math.isinf(lam) else 1.0 / (2.0 * lam * lam)

    def value_rows(self, x: ArrayLike) -> FloatArray:
        """
        Evaluates the surrogate for each row.
        """
        pts, _ = as_batch(x)
        values = self.f.value_rows(pts)
        weight = self._weight
        if weight:
            values = values + weight * penalty_distance_rows(
                self.penalty, self.body, pts
            )
        return values

    def gradient_rows(self, x: ArrayLike) -> FloatArray:
        """
        Evaluates the gradient of the surrogate for each row.
        """
        pts, _ = as_batch(x)
        grads = self.f.gradient_rows(pts)
        weight = self._weight
        if weight:
            grads = grads + weight * penalty_gradient_rows(
                self.penalty, self.body, pts
            )
        return grads

    def smoothness_bound(self) -> float:
        """
        Lipschitz constant `M + m0 / (2 lam^2)` of the surrogate gradient.
        """
        return self.f.M + self.penalty.m0 * self._weight

    gradient_lipschitz = smoothness_bound


def potential_value(sp: SurrogatePotential, x: ArrayLike) -> float:
    """
    Surrogate potential at a point, equals `f` on the body.

    :param sp: The surrogate
    :param x: The point
    """
    return float(sp.value_rows(np.atleast_2d(x))[0])


def potential_gradient(sp: SurrogatePotential, x: ArrayLike) -> FloatArray:
    """
    Gradient of the surrogate potential at a point.

    Samplers count the evaluations in their states, this function does not.
    """
    pts, single = as_batch(x)
    return unbatch_points(sp.gradient_rows(pts), single)


def smoothness_bound(sp: SurrogatePotential) -> float:
    """
    Smoothness constant of the surrogate, `M` as `lam` grows unbounded.
    """
    return sp.smoothness_bound()
