'''
Tests for the schedule selection
'''
import itertools
import math
from typing import Any, Dict
import pytest

from pyconlmc.const import Algorithm, Metric
from pyconlmc.exceptions import DomainError
from pyconlmc.geometry import ConvexBody, Penalty
from pyconlmc.schedules import (
    ScheduleRequest, m0_for_schedule, select_parameters, simplified_exponent,
    step_exponent,
)


def request(algo: Algorithm, metric: Metric, **kwargs: Any) -> ScheduleRequest:
    '''
    Request in the plane for a unit Gaussian unless overridden.
    '''
    params: Dict[str, Any] = {
        'epsilon': 0.1, 'p': 2, 'm': 1.0, 'M': 1.0, 'M0': 1.0,
    }
    params.update(kwargs)
    return ScheduleRequest(algo=algo, metric=metric, **params)


@pytest.mark.parametrize(
    'algo,metric', list(itertools.product(Algorithm, Metric))
)
def test_step_scaling(algo: Algorithm, metric: Metric) -> None:
    '''
    Verifies halving the accuracy scales the step by `2^-e_h` and the
    tuning follows the step.
    '''
    coarse = select_parameters(request(algo, metric, epsilon=0.1))
    fine = select_parameters(request(algo, metric, epsilon=0.05))
    e_h = step_exponent(algo, metric, 2)
    assert fine.h / coarse.h == pytest.approx(2 ** -e_h, rel=1e-12)
    assert fine.n > coarse.n
    assert math.log(coarse.lam) / math.log(coarse.h) == pytest.approx(
        math.log(fine.lam) / math.log(fine.h), rel=1e-12
    )


def test_known_exponents() -> None:
    '''
    Verifies a few exponents against their closed forms.
    '''
    assert step_exponent(Algorithm.CRLMC, Metric.W2, 2) == pytest.approx(
        10 / 3
    )
    assert step_exponent(Algorithm.CLMC, Metric.W1, 7) == 4.0

    plan = select_parameters(request(Algorithm.CLMC, Metric.W1))
    assert plan.lam == pytest.approx(plan.h ** 0.25)

    coarse = select_parameters(request(Algorithm.CRKLMC, Metric.W1))
    fine = select_parameters(
        request(Algorithm.CRKLMC, Metric.W1, epsilon=0.05)
    )
    assert fine.h / coarse.h == pytest.approx(2 ** (-8 / 3))


def test_iteration_count() -> None:
    '''
    Verifies the iteration count of a Euler schedule.
    '''
    plan = select_parameters(request(Algorithm.CLMC, Metric.W1, epsilon=0.5))
    assert plan.h == pytest.approx(0.0625)
    assert plan.n == 58
    assert plan.gamma is None

    wide = select_parameters(
        request(Algorithm.CLMC, Metric.W1, epsilon=0.5, outer_radius=2.0)
    )
    assert wide.h == plan.h
    assert wide.n > plan.n


def test_user_constant() -> None:
    '''
    Verifies the user constant scales the step size.
    '''
    base = select_parameters(request(Algorithm.CKLMC, Metric.W2))
    scaled = select_parameters(
        request(Algorithm.CKLMC, Metric.W2, user_constant=0.5)
    )
    assert scaled.h == pytest.approx(0.5 * base.h)


@pytest.mark.parametrize('algo', [Algorithm.CKLMC, Algorithm.CRKLMC])
def test_kinetic_friction(algo: Algorithm) -> None:
    '''
    Verifies kinetic schedules carry the friction `5 (M + M0 / lam^2)`.
    '''
    plan = select_parameters(request(algo, Metric.W2, M=2.0, M0=0.5))
    assert plan.gamma == pytest.approx(5 * (2.0 + 0.5 / plan.lam ** 2))
    assert plan._asdict()['gamma'] == plan.gamma


@pytest.mark.parametrize('algo', list(Algorithm))
def test_simplified_exponents_bound_exact(algo: Algorithm) -> None:
    '''
    Verifies the simplified iteration exponents never undercut the exact
    ones.
    '''
    for p in range(2, 65):
        assert simplified_exponent(algo, p) >= (
            step_exponent(algo, Metric.W2, p) - 1e-12
        )
    with pytest.raises(DomainError):
        simplified_exponent(algo, 1)


def test_m0_conversion(ball: ConvexBody) -> None:
    '''
    Verifies the distance smoothness is halved for schedules.
    '''
    assert m0_for_schedule(Penalty.euclidean(0.1)) == 1.0
    assert m0_for_schedule(Penalty.gauge(ball, 0.1)) == pytest.approx(8.0)


@pytest.mark.parametrize('kwargs', [
    {'epsilon': 0.0},
    {'epsilon': 1.0},
    {'p': 0},
    {'m': 2.0, 'M': 1.0},
    {'M0': -1.0},
    {'user_constant': 0.0},
    {'outer_radius': -1.0},
])
def test_invalid_request(kwargs: Any) -> None:
    '''
    Verifies out-of-domain requests are rejected.
    '''
    with pytest.raises(DomainError):
        request(Algorithm.CLMC, Metric.W2, **kwargs)
