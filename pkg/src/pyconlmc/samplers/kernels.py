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
One-step kernels of the samplers.

Each kernel comes in two flavours: `*_update` is the deterministic map taking
the noise as arguments, `*_step` draws the noise from the state's stream and
advances the state. Positions are batches of shape `(N, p)` in the former,
and either a point or a batch in the latter.
"""
from __future__ import annotations
from dataclasses import replace
from typing import Tuple
import logging
import warnings

import numpy as np

from ..arrays import FloatArray, as_batch, row_column, unbatch_points
from ..const import KINETIC_FRICTION_FACTOR
from ..exceptions import NonFiniteError, StepSizeWarning
from ..potential import SurrogatePotential
from .noise import (
    kinetic_noise_covariance_pair, kinetic_noise_covariance_triple,
    psi_array, sample_correlated,
)
from .state import ChainState, KineticState, StepSize

_LOGGER = logging.getLogger(__name__)


def clmc_update(
    sp: SurrogatePotential, theta: FloatArray, h: FloatArray, xi: FloatArray
) -> FloatArray:
    """
    Euler step `theta - h grad U(theta) + sqrt(2h) xi`.
    """
    return theta - h * sp.gradient_rows(theta) + np.sqrt(2.0 * h) * xi


def crlmc_update(  # pylint: disable=too-many-arguments
    sp: SurrogatePotential, theta: FloatArray, h: FloatArray,
    iota: FloatArray, xi_mid: FloatArray, xi_rest: FloatArray
) -> FloatArray:
    """
    Randomized midpoint step, the drift is evaluated at the fraction `iota`
    of the step.
    """
    midpoint = (
        theta - h * iota * sp.gradient_rows(theta)
        + np.sqrt(2.0 * h * iota) * xi_mid
    )
    return (
        theta - h * sp.gradient_rows(midpoint)
        + np.sqrt(2.0 * h) * (
            np.sqrt(iota) * xi_mid + np.sqrt(1.0 - iota) * xi_rest
        )
    )


def cklmc_update(  # pylint: disable=too-many-arguments
    sp: SurrogatePotential, theta: FloatArray, velocity: FloatArray,
    gamma: float, h: FloatArray, eta_x: FloatArray, eta_v: FloatArray
) -> Tuple[FloatArray, FloatArray]:
    """
    Exact frozen-drift integration of the kinetic dynamics over a step.
    """
    rate = gamma * h
    grad = sp.gradient_rows(theta)
    shrink = psi_array(rate)
    new_velocity = (
        np.exp(-rate) * velocity + np.expm1(-rate) * grad + eta_v
    )
    new_theta = (
        theta + h * shrink * velocity - h * (1.0 - shrink) * grad + eta_x
    )
    return new_theta, new_velocity


def crklmc_update(  # pylint: disable=too-many-arguments
    sp: SurrogatePotential, theta: FloatArray, velocity: FloatArray,
    gamma: float, h: FloatArray, iota: FloatArray,
    noise: Tuple[FloatArray, FloatArray, FloatArray],
) -> Tuple[FloatArray, FloatArray]:
    """
    Randomized midpoint step of the kinetic dynamics; `noise` is the triple
    drawn from :func:`kinetic_noise_covariance_triple` at `u = iota`.
    """
    xi_mid, xi_pos, xi_vel = noise
    rate = gamma * h
    scale = np.sqrt(2.0 * h)
    head = rate * iota
    tail = rate * (1.0 - iota)

    head_shrink = psi_array(head)
    midpoint = (
        theta + iota * h * head_shrink * velocity
        - iota * h * (1.0 - head_shrink) * sp.gradient_rows(theta)
        + scale * xi_mid
    )
    grad = sp.gradient_rows(midpoint)
    new_theta = (
        theta + h * psi_array(rate) * velocity
        - gamma * h * h * (1.0 - iota) * psi_array(tail) * grad
        + scale * xi_pos
    )
    new_velocity = (
        np.exp(-rate) * velocity - gamma * h * np.exp(-tail) * grad
        + scale * xi_vel
    )
    return new_theta, new_velocity


def _unpack(
    position: FloatArray, step: StepSize
) -> Tuple[FloatArray, bool, FloatArray]:
    theta, single = as_batch(position)
    return theta, single, row_column(step, theta.shape[0])


def _check_stability(sp: SurrogatePotential, h: FloatArray) -> None:
    """
    Warns when the step exceeds the inverse smoothness of the surrogate.
    """
    bound = sp.smoothness_bound()
    largest = float(np.max(h))
    if largest * bound >= 1.0:
        warnings.warn(
            f'Step size {largest} is not below 1/M^lambda = {1.0 / bound}',
            StepSizeWarning, stacklevel=3
        )


def _check_friction(sp: SurrogatePotential, gamma: float) -> None:
    recommended = KINETIC_FRICTION_FACTOR * sp.smoothness_bound()
    if gamma < recommended:
        _LOGGER.debug(
            'Friction %s is below the recommended %s', gamma, recommended
        )


def _check_finite(*arrays: FloatArray) -> None:
    for arr in arrays:
        if not np.all(np.isfinite(arr)):
            raise NonFiniteError(
                'Chain produced non-finite values, step size is likely too'
                ' large for the penalty'
            )


def clmc_step(state: ChainState, sp: SurrogatePotential) -> ChainState:
    """
    Advances the chain by one Euler step.

    Draws: one standard normal per coordinate.

    :raises NonFiniteError: The new position is not finite
    """
    theta, single, h = _unpack(state.position, state.step)
    _check_stability(sp, h)
    xi = state.rng.standard_normal(theta.shape)
    new_theta = clmc_update(sp, theta, h, xi)
    _check_finite(new_theta)
    return replace(
        state, position=unbatch_points(new_theta, single),
        grad_evals=state.grad_evals + theta.shape[0],
    )


def crlmc_step(state: ChainState, sp: SurrogatePotential) -> ChainState:
    """
    Advances the chain by one randomized midpoint step.

    Draws: the uniform midpoint fraction per chain, then two standard normals
    per coordinate.

    :raises NonFiniteError: The new position is not finite
    """
    theta, single, h = _unpack(state.position, state.step)
    _check_stability(sp, h)
    iota = state.rng.random((theta.shape[0], 1))
    xi_mid = state.rng.standard_normal(theta.shape)
    xi_rest = state.rng.standard_normal(theta.shape)
    new_theta = crlmc_update(sp, theta, h, iota, xi_mid, xi_rest)
    _check_finite(new_theta)
    return replace(
        state, position=unbatch_points(new_theta, single),
        grad_evals=state.grad_evals + 2 * theta.shape[0],
    )


def cklmc_step(state: KineticState, sp: SurrogatePotential) -> KineticState:
    """
    Advances the kinetic chain by one frozen-drift step.

    Draws: a correlated (position, velocity) normal pair per coordinate.

    :raises NonFiniteError: The new position or velocity is not finite
    """
    theta, single, h = _unpack(state.position, state.step)
    velocity, _ = as_batch(state.velocity)
    _check_stability(sp, h)
    _check_friction(sp, state.friction)
    cov = kinetic_noise_covariance_pair(state.friction, h[:, 0])
    eta = sample_correlated(cov, theta.shape[1], state.rng)
    new_theta, new_velocity = cklmc_update(
        sp, theta, velocity, state.friction, h, eta[..., 0], eta[..., 1]
    )
    _check_finite(new_theta, new_velocity)
    return replace(
        state, position=unbatch_points(new_theta, single),
        velocity=unbatch_points(new_velocity, single),
        grad_evals=state.grad_evals + theta.shape[0],
    )


def crklmc_step(
    state: KineticState, sp: SurrogatePotential
) -> KineticState:
    """
    Advances the kinetic chain by one randomized midpoint step.

    Draws: the uniform midpoint fraction per chain, then a correlated normal
    triple per coordinate.

    :raises NonFiniteError: The new position or velocity is not finite
    """
    theta, single, h = _unpack(state.position, state.step)
    velocity, _ = as_batch(state.velocity)
    _check_stability(sp, h)
    _check_friction(sp, state.friction)
    iota = state.rng.random((theta.shape[0], 1))
    cov = kinetic_noise_covariance_triple(
        state.friction, h[:, 0], iota[:, 0]
    )
    xi = sample_correlated(cov, theta.shape[1], state.rng)
    new_theta, new_velocity = crklmc_update(
        sp, theta, velocity, state.friction, h, iota,
        (xi[..., 0], xi[..., 1], xi[..., 2]),
    )
    _check_finite(new_theta, new_velocity)
    return replace(
        state, position=unbatch_points(new_theta, single),
        velocity=unbatch_points(new_velocity, single),
        grad_evals=state.grad_evals + 2 * theta.shape[0],
    )
