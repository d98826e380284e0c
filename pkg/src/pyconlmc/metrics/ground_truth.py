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
Exact samplers of the constrained target and of its surrogate, used as
ground truth.
"""
from __future__ import annotations
from typing import Optional
import logging
import math
import warnings

import numpy as np
from scipy.linalg import solve_triangular

from ..arrays import FloatArray
from ..const import LOW_ACCEPTANCE_RATE, REJECTION_MAX_PROPOSALS
from ..exceptions import ConLMCError, DomainError, LowAcceptanceWarning
from ..geometry.body import ConvexBody, contains_rows
from ..geometry.penalty import Penalty, penalty_distance_rows
from ..potential import Potential, Quadratic
from .measure import EmpiricalMeasure

_LOGGER = logging.getLogger(__name__)

_MIN_BATCH = 1024
_MAX_BATCH = 1_000_000


class RejectionSampler:
    """
    Rejection sampler proposing from the Gaussian of a quadratic potential.

    Without a penalty a proposal is accepted iff it lies in the body, giving
    exact draws of the constrained target. With a penalty it is accepted
    with probability `exp(-d_K / (2 lam^2))`, giving exact draws of the
    surrogate.

    :param f: Quadratic potential
    :param body: The body
    :param penalty: Penalty of the surrogate, if any
    """
    def __init__(
        self, f: Potential, body: ConvexBody,
        penalty: Optional[Penalty] = None,
    ) -> None:
        if not isinstance(f.form, Quadratic):
            raise DomainError('Rejection sampling needs a quadratic potential')
        self._center = f.form.center
        self._precision_factor = np.linalg.cholesky(f.form.precision)
        self._body = body
        self._penalty = penalty
        self.proposals = 0
        self.accepted = 0

    @property
    def acceptance_rate(self) -> float:
        """
        Fraction of the proposals accepted so far.
        """
        return self.accepted / self.proposals if self.proposals else math.nan

    def draw(self, count: int, rng: np.random.Generator) -> FloatArray:
        """
        Makes `count` proposals, returning the accepted ones.
        """
        normals = rng.standard_normal((count, self._center.shape[0]))
        # x = mu + L^-T z has covariance (L L^T)^-1
        proposals = self._center + solve_triangular(
            self._precision_factor.T, normals.T, lower=False
        ).T
        if self._penalty is None:
            keep = contains_rows(self._body, proposals)
        else:
            lam = self._penalty.lam
            log_accept = -penalty_distance_rows(
                self._penalty, self._body, proposals
            ) / (2.0 * lam * lam)
            keep = np.log(rng.random(count)) < log_accept
        self.proposals += count
        self.accepted += int(np.count_nonzero(keep))
        return np.asarray(proposals[keep])

    def sample(self, size: int, rng: np.random.Generator) -> EmpiricalMeasure:
        """
        Draws exactly `size` accepted points.

        :raises ConLMCError: Nothing got accepted within the proposal cap
        """
        chunks = []
        collected = 0
        while collected < size:
            rate = self.acceptance_rate if self.accepted else 0.1
            batch = int(min(
                max(1.2 * (size - collected) / rate, _MIN_BATCH), _MAX_BATCH
            ))
            accepted = self.draw(batch, rng)
            chunks.append(accepted)
            collected += accepted.shape[0]
            if self.proposals > REJECTION_MAX_PROPOSALS:
                raise ConLMCError(
                    f'Rejection sampler accepted {self.accepted} of'
                    f' {self.proposals} proposals, giving up'
                )

        if self.acceptance_rate < LOW_ACCEPTANCE_RATE:
            _LOGGER.warning(
                'Rejection sampler acceptance rate %s is low',
                self.acceptance_rate
            )
            warnings.warn(
                f'Acceptance rate {self.acceptance_rate} is below'
                f' {LOW_ACCEPTANCE_RATE}', LowAcceptanceWarning, stacklevel=2
            )
        _LOGGER.debug(
            'Rejection sampler accepted %s of %s proposals',
            self.accepted, self.proposals
        )
        return EmpiricalMeasure(points=np.vstack(chunks)[:size])


def rejection_sample_target(
    f: Potential, body: ConvexBody, n_samples: int, rng: np.random.Generator
) -> EmpiricalMeasure:
    """
    Draws exact samples of the target `exp(-f)` restricted to the body.

    :param f: Quadratic potential, its Gaussian is the proposal
    :param body: The body
    :param n_samples: Number of samples
    :param rng: Random stream
    """
    return RejectionSampler(f, body).sample(n_samples, rng)
