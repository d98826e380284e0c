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
Noise laws of the kinetic schemes.

The kinetic dynamics are `dL = V dt`, `dV = -gamma (V + grad U) dt +
gamma sqrt(2) dW`, integrated exactly over a step with the drift frozen.
All covariances are per coordinate; coordinates are independent.
"""
from __future__ import annotations
import logging

import numpy as np
from numpy.typing import ArrayLike

from ..arrays import FloatArray, Scalar
from ..const import EIGENVALUE_CLIP_THRESHOLD, PSI_SERIES_THRESHOLD
from ..exceptions import DomainError
from .state import RandomStream

_LOGGER = logging.getLogger(__name__)


def psi_array(x: ArrayLike) -> FloatArray:
    """
    Element-wise `(1 - exp(-x)) / x`, see :func:`psi`.
    """
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr < 0):
        raise DomainError('psi is defined for non-negative arguments')
    small = arr < PSI_SERIES_THRESHOLD
    safe = np.where(small, 1.0, arr)
    return np.asarray(np.where(
        small, 1.0 - arr / 2.0 + arr * arr / 6.0, -np.expm1(-safe) / safe
    ))


def psi(x: ArrayLike) -> Scalar:
    """
    Computes `(1 - exp(-x)) / x`, continued by one at zero.

    :param x: Non-negative argument, scalar or array
    :raises DomainError: Argument is negative
    """
    out = psi_array(x)
    return float(out) if out.ndim == 0 else out


def _positive_rate(gamma: float, h: ArrayLike) -> FloatArray:
    rate = gamma * np.asarray(h, dtype=np.float64)
    if gamma <= 0 or np.any(rate <= 0):
        raise DomainError(
            f'Friction and step must be positive: {gamma}, {h}'
        )
    return np.asarray(rate)


def kinetic_noise_covariance_pair(gamma: float, h: ArrayLike) -> FloatArray:
    """
    Covariance of the position and velocity noise of one frozen-drift
    kinetic step.

    :param gamma: Friction
    :param h: Step size, scalar or array
    :return: Matrices of shape `(..., 2, 2)` ordered (position, velocity)
    """
    a = _positive_rate(gamma, h)
    one_minus = -np.expm1(-a)
    # h - 2 (1 - e^-a) / gamma + (1 - e^-2a) / (2 gamma), up to 2 / gamma
    bracket = a - 2.0 * one_minus - 0.5 * np.expm1(-2.0 * a)
    series = a ** 3 / 3.0 - a ** 4 / 4.0 + 7.0 * a ** 5 / 60.0
    bracket = np.where(a < PSI_SERIES_THRESHOLD, series, bracket)

    cov = np.empty(a.shape + (2, 2))
    cov[..., 0, 0] = 2.0 * bracket / gamma
    cov[..., 0, 1] = cov[..., 1, 0] = one_minus ** 2
    cov[..., 1, 1] = -gamma * np.expm1(-2.0 * a)
    return cov


def kinetic_noise_covariance_triple(
    gamma: float, h: ArrayLike, u: ArrayLike
) -> FloatArray:
    """
    Covariance of the randomized midpoint noise triple
    `(B_u - e^{-au} G_u, B_1 - e^{-a} G_1, gamma e^{-a} G_1)` where
    `a = gamma h`, `B` is a Brownian motion and `G_t` the integral of
    `e^{a s}` against it.

    :param gamma: Friction
    :param h: Step size, scalar or array
    :param u: Midpoint fraction in `[0, 1]`, broadcast against `h`
    :return: Matrices of shape `(..., 3, 3)`
    :raises DomainError: `u` lies outside of `[0, 1]`
    """
    frac = np.asarray(u, dtype=np.float64)
    if np.any(frac < 0) or np.any(frac > 1):
        raise DomainError(f'Midpoint fraction must lie in [0, 1]: {u}')
    a, frac = np.broadcast_arrays(_positive_rate(gamma, h), frac)

    # Base vector (B_u, H_u, B_1, H_1) with H_s = e^{-as} G_s
    times = (frac, frac, np.ones_like(a), np.ones_like(a))
    is_b = (True, False, True, False)
    base = np.empty(a.shape + (4, 4))
    for i in range(4):
        for j in range(i, 4):
            low = np.minimum(times[i], times[j])
            if is_b[i] and is_b[j]:
                entry = low
            elif is_b[i] or is_b[j]:
                other = times[j] if is_b[i] else times[i]
                entry = np.exp(-a * other) * np.expm1(a * low) / a
            else:
                entry = (np.exp(-a * (times[i] + times[j]))
                         * np.expm1(2.0 * a * low) / (2.0 * a))
            base[..., i, j] = base[..., j, i] = entry

    transform = np.array([
        [1.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, -1.0],
        [0.0, 0.0, 0.0, gamma],
    ])
    return np.asarray(np.einsum(
        'ik,...kl,jl->...ij', transform, base, transform
    ))


def sample_correlated(
    cov: FloatArray, dim: int, rng: RandomStream
) -> FloatArray:
    """
    Draws `dim` independent coordinates of the correlated noise for each row.

    :param cov: Row covariances, shape `(N, k, k)`
    :param dim: Number of coordinates
    :param rng: Stream to draw from
    :return: Noise of shape `(N, dim, k)`
    :raises DomainError: A covariance is materially indefinite
    """
    eigvals, eigvecs = np.linalg.eigh(cov)
    scale = np.maximum(1.0, np.max(np.abs(eigvals), axis=-1))
    if np.any(np.min(eigvals, axis=-1) < -EIGENVALUE_CLIP_THRESHOLD * scale):
        raise DomainError('Noise covariance is not positive semidefinite')
    factor = eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))[:, np.newaxis, :]
    draws = rng.standard_normal((cov.shape[0], dim, cov.shape[-1]))
    return np.asarray(np.einsum('nij,npj->npi', factor, draws))
