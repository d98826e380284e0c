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
Selection of the tuning, step size, iteration count and friction reaching a
target accuracy.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple
import logging
import math

from .const import KINETIC_FRICTION_FACTOR, Algorithm, Metric
from .exceptions import DomainError, UnsupportedCombinationError
from .geometry.penalty import Penalty

_LOGGER = logging.getLogger(__name__)

Exponent = Callable[[int], float]
ExponentPair = Tuple[Exponent, Exponent]

# (step exponent e_h, tuning exponent e_lambda) as functions of dimension;
# h = C eps^e_h and lambda = h^e_lambda
SCHEDULE_EXPONENTS: Dict[Tuple[Algorithm, Metric], ExponentPair] = {
    (Algorithm.CLMC, Metric.W1): (lambda p: 4.0, lambda p: 1 / 4),
    (Algorithm.CLMC, Metric.W2): (
        lambda p: (6 * p + 4) / (p + 2), lambda p: p / (3 * p + 2)
    ),
    (Algorithm.CKLMC, Metric.W1): (lambda p: 4.0, lambda p: 1 / 4),
    (Algorithm.CKLMC, Metric.W2): (
        lambda p: (7 * p + 2) / (p + 2), lambda p: 2 * p / (7 * p + 2)
    ),
    (Algorithm.CRLMC, Metric.W1): (lambda p: 10 / 3, lambda p: 3 / 10),
    (Algorithm.CRLMC, Metric.W2): (
        lambda p: (18 * p + 4) / (3 * p + 6), lambda p: 3 * p / (9 * p + 2)
    ),
    (Algorithm.CRKLMC, Metric.W1): (lambda p: 8 / 3, lambda p: 3 / 8),
    (Algorithm.CRKLMC, Metric.W2): (
        lambda p: (15 * p + 2) / (3 * p + 6), lambda p: 6 * p / (15 * p + 2)
    ),
}

# Simplified W2 iteration exponents, upper bounds of the exact ones for p >= 2
SIMPLIFIED_EXPONENTS: Dict[Algorithm, Exponent] = {
    Algorithm.CLMC: lambda p: 6 - 4 / p,
    Algorithm.CKLMC: lambda p: 7 - 6 / p,
    Algorithm.CRLMC: lambda p: 6 - 16 / (3 * p),
    Algorithm.CRKLMC: lambda p: 5 - 14 / (3 * p),
}

ITERATION_FACTORS: Dict[Algorithm, float] = {
    Algorithm.CLMC: 2.0,
    Algorithm.CKLMC: 1.0,
    Algorithm.CRLMC: 2.0,
    Algorithm.CRKLMC: 1.0,
}

LOG_FACTORS: Dict[Algorithm, float] = {
    Algorithm.CLMC: 3.0,
    Algorithm.CKLMC: 6.0,
    Algorithm.CRLMC: 3.3,
    Algorithm.CRKLMC: 4.8,
}


@dataclass(frozen=True)
class ScheduleRequest:  # pylint: disable=too-many-instance-attributes
    """
    Problem constants a schedule is selected from; `M0` is the smoothness
    constant in the `M + M0 / lambda^2` convention, see
    :func:`m0_for_schedule`.
    """
    algo: Algorithm
    metric: Metric
    epsilon: float
    p: int
    m: float
    M: float  # pylint: disable=invalid-name
    M0: float  # pylint: disable=invalid-name
    user_constant: float = 1.0
    outer_radius: Optional[float] = None

    def __post_init__(self) -> None:
        violations = []
        if not 0 < self.epsilon < 1:
            violations.append(f'epsilon must lie in (0, 1): {self.epsilon}')
        if self.p < 1:
            violations.append(f'dimension must be positive: {self.p}')
        if not 0 < self.m <= self.M:
            violations.append(f'need 0 < m <= M: {self.m}, {self.M}')
        if self.M0 < 0:
            violations.append(f'M0 must be non-negative: {self.M0}')
        if not self.user_constant > 0:
            violations.append(
                f'user constant must be positive: {self.user_constant}'
            )
        if self.outer_radius is not None and not self.outer_radius > 0:
            violations.append(
                f'outer radius must be positive: {self.outer_radius}'
            )
        if violations:
            raise DomainError('Invalid schedule request: '
                              + '; '.join(violations))


@dataclass(frozen=True)
class SchedulePlan:
    """
    Tuning, step size, iteration count and (kinetic only) friction.
    """
    lam: float
    h: float
    n: int
    gamma: Optional[float] = None

    def _asdict(self) -> Dict[str, Any]:
        """
        Returns the plan as dictionary.
        """
        return {
            'lambda': self.lam, 'h': self.h, 'n': self.n, 'gamma': self.gamma,
        }


def m0_for_schedule(penalty: Penalty) -> float:
    """
    Converts the Lipschitz constant of the distance gradient into the `M0`
    of the `M + M0 / lambda^2` convention.
    """
    return penalty.m0 / 2.0


def step_exponent(algo: Algorithm, metric: Metric, p: int) -> float:
    """
    Exponent `e_h` of the step size `h = C eps^e_h`.

    :raises UnsupportedCombinationError: No schedule for the pair
    """
    try:
        return SCHEDULE_EXPONENTS[(algo, metric)][0](p)
    except KeyError as exc:
        raise UnsupportedCombinationError(
            f'No schedule known for {algo!r} with {metric!r}'
        ) from exc


def simplified_exponent(algo: Algorithm, p: int) -> float:
    """
    Simplified W2 iteration exponent, valid for `p >= 2`.
    """
    if p < 2:
        raise DomainError(f'Simplified exponents need p >= 2, got {p}')
    return SIMPLIFIED_EXPONENTS[algo](p)


def select_parameters(req: ScheduleRequest) -> SchedulePlan:
    """
    Selects the schedule reaching the accuracy of the request.

    :param req: The request
    :return: The plan
    :raises UnsupportedCombinationError: No schedule for the algorithm and
      metric pair
    """
    try:
        e_h, e_lam = SCHEDULE_EXPONENTS[(req.algo, req.metric)]
    except KeyError as exc:
        raise UnsupportedCombinationError(
            f'No schedule known for {req.algo!r} with {req.metric!r}'
        ) from exc

    h = req.user_constant * req.epsilon ** e_h(req.p)
    lam = h ** e_lam(req.p)

    log_factor = LOG_FACTORS[req.algo]
    if req.metric == Metric.W1 and req.outer_radius is not None:
        spread = math.sqrt(req.p / req.m)
        log_factor *= (2 * req.outer_radius + 1 + spread) / spread
    n = max(1, math.ceil(
        ITERATION_FACTORS[req.algo] / (req.m * h)
        * math.log(log_factor / req.epsilon)
    ))

    gamma = None
    if req.algo.is_kinetic:
        gamma = KINETIC_FRICTION_FACTOR * (req.M + req.M0 / lam ** 2)

    plan = SchedulePlan(lam=lam, h=h, n=n, gamma=gamma)
    _LOGGER.debug('Selected %s for %s', plan, req)
    return plan
