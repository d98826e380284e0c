'''
Tests for the sampler kernels and chain drivers
'''
import math
from typing import Callable, Dict, List, Tuple
import numpy as np
from numpy.typing import NDArray
import pytest

from pyconlmc.const import Algorithm
from pyconlmc.exceptions import DomainError, NonFiniteError, StepSizeWarning
from pyconlmc.geometry import ConvexBody, Penalty
from pyconlmc.metrics import EmpiricalMeasure, sliced_wasserstein
from pyconlmc.potential import Custom, Potential, SurrogatePotential
from pyconlmc.samplers import (
    ChainState, KineticState, cklmc_step, cklmc_update, clmc_step,
    clmc_update, crklmc_step, crklmc_update, crlmc_update, make_stream,
    run_chain, run_ensemble,
)

FloatArray = NDArray[np.float64]


def constant_gradient(grad: FloatArray) -> SurrogatePotential:
    '''
    Unpenalized surrogate of a linear potential with the given gradient.
    '''
    f = Potential(
        form=Custom(
            value=lambda x: x @ grad,
            gradient=lambda x: np.tile(grad, (x.shape[0], 1)),
            vectorized=True,
        ),
        m=1.0, M=1.0, minimizer=np.zeros(grad.shape[0]),
    )
    return SurrogatePotential(
        f=f, penalty=Penalty.euclidean(math.inf),
        body=ConvexBody.ball(1.0, dim=grad.shape[0]),
    )


def gaussian_in_ball(ball: ConvexBody, lam: float = 0.1) -> SurrogatePotential:
    '''
    Standard Gaussian penalized outside of the ball.
    '''
    return SurrogatePotential(
        f=Potential.standard_gaussian(2), penalty=Penalty.euclidean(lam),
        body=ball,
    )


def test_clmc_update_without_noise() -> None:
    '''
    Verifies the Euler step is a plain gradient step under zero noise.
    '''
    sp = SurrogatePotential(
        f=Potential.standard_gaussian(2), penalty=Penalty.euclidean(0.1),
        body=ConvexBody.ball(2.0),
    )
    theta = np.array([[1.0, 0.0]])
    result = clmc_update(sp, theta, np.array([[0.1]]), np.zeros((1, 2)))
    assert result == pytest.approx(np.array([[0.9, 0.0]]))


def test_clmc_update_zero_gradient() -> None:
    '''
    Verifies the Euler step reduces to scaled noise without a drift.
    '''
    sp = constant_gradient(np.zeros(2))
    xi = np.array([[1.0, -2.0], [0.5, 0.0]])
    theta = np.array([[0.1, 0.2], [0.3, 0.4]])
    result = clmc_update(sp, theta, np.array([[0.5], [2.0]]), xi)
    assert result == pytest.approx(
        np.array([[1.1, -1.8], [1.3, 0.4]])
    )


def test_clmc_step_variance() -> None:
    '''
    Verifies the one-step spread of the Euler step is `2h` per coordinate.
    '''
    h = 0.1
    state = ChainState(
        position=np.zeros((100_000, 2)), step=h, rng=make_stream(7, 1)
    )
    result = clmc_step(state, constant_gradient(np.zeros(2)))
    assert result.grad_evals == 100_000
    assert np.var(result.position, axis=0) == pytest.approx(
        [2 * h, 2 * h], rel=0.02
    )


def test_crlmc_update_constant_gradient() -> None:
    '''
    Verifies the midpoint fraction does not matter under a constant
    gradient.
    '''
    grad = np.array([1.0, -2.0])
    sp = constant_gradient(grad)
    theta = np.array([[0.5, 0.5]])
    h = np.array([[0.01]])
    zeros = np.zeros((1, 2))
    for iota in (0.0, 0.3, 1.0):
        result = crlmc_update(sp, theta, h, np.array([[iota]]), zeros, zeros)
        assert result == pytest.approx(theta - 0.01 * grad)


def test_crlmc_update_start_midpoint(ball: ConvexBody) -> None:
    '''
    Verifies the midpoint step with zero fraction is the Euler step driven
    by the second noise.
    '''
    sp = gaussian_in_ball(ball)
    gen = np.random.default_rng(3)
    theta = gen.standard_normal((5, 2))
    xi_mid = gen.standard_normal((5, 2))
    xi_rest = gen.standard_normal((5, 2))
    h = np.full((5, 1), 1e-3)
    result = crlmc_update(sp, theta, h, np.zeros((5, 1)), xi_mid, xi_rest)
    assert result == pytest.approx(clmc_update(sp, theta, h, xi_rest))


def test_kinetic_updates_free_flight() -> None:
    '''
    Verifies both kinetic updates transport the velocity exactly without
    drift and noise.
    '''
    sp = constant_gradient(np.zeros(2))
    gamma, h = 2.0, 0.1
    theta = np.array([[0.1, -0.1]])
    velocity = np.array([[1.0, 3.0]])
    zeros = np.zeros((1, 2))
    step = np.array([[h]])
    shift = (1 - math.exp(-gamma * h)) / gamma
    decay = math.exp(-gamma * h)

    new_theta, new_velocity = cklmc_update(
        sp, theta, velocity, gamma, step, zeros, zeros
    )
    assert new_theta == pytest.approx(theta + shift * velocity)
    assert new_velocity == pytest.approx(decay * velocity)

    for iota in (0.0, 0.5, 1.0):
        new_theta, new_velocity = crklmc_update(
            sp, theta, velocity, gamma, step, np.array([[iota]]),
            (zeros, zeros, zeros),
        )
        assert new_theta == pytest.approx(theta + shift * velocity)
        assert new_velocity == pytest.approx(decay * velocity)


def test_cklmc_update_constant_gradient() -> None:
    '''
    Verifies the frozen drift enters the kinetic update through the
    integrated friction factors.
    '''
    grad = np.array([1.0, 0.0])
    sp = constant_gradient(grad)
    gamma, h = 1.0, 1.0
    zeros = np.zeros((1, 2))
    new_theta, new_velocity = cklmc_update(
        sp, zeros, zeros, gamma, np.array([[h]]), zeros, zeros
    )
    assert new_velocity == pytest.approx(
        np.array([[math.exp(-1.0) - 1.0, 0.0]])
    )
    assert new_theta == pytest.approx(np.array([[-math.exp(-1.0), 0.0]]))


def test_crklmc_update_end_midpoint() -> None:
    '''
    Verifies the position update ignores the gradient when the midpoint
    sits at the end of the step.
    '''
    grad = np.array([1.0, -1.0])
    sp = constant_gradient(grad)
    gamma, h = 2.0, 0.1
    theta = np.array([[0.2, 0.3]])
    zeros = np.zeros((1, 2))
    new_theta, new_velocity = crklmc_update(
        sp, theta, zeros, gamma, np.array([[h]]), np.array([[1.0]]),
        (zeros, zeros, zeros),
    )
    assert new_theta == pytest.approx(theta)
    assert new_velocity == pytest.approx(-gamma * h * grad[np.newaxis, :])


def test_run_chain_without_steps(ball: ConvexBody) -> None:
    '''
    Verifies a chain of no steps holds the initial position only.
    '''
    trace = run_chain(
        Algorithm.CLMC, gaussian_in_ball(ball), [0.1, 0.2], n=0, h=1e-3
    )
    assert trace.positions.shape == (1, 2)
    assert trace.positions[0] == pytest.approx([0.1, 0.2])
    assert trace.grad_evals == 0
    assert trace.friction is None


@pytest.mark.parametrize('algo', list(Algorithm))
def test_run_chain_deterministic(algo: Algorithm, ball: ConvexBody) -> None:
    '''
    Verifies chains are reproducible from the seed and chain identifier.
    '''
    sp = gaussian_in_ball(ball)
    first = run_chain(algo, sp, [0.0, 0.0], n=50, h=1e-3, seed=5)
    second = run_chain(algo, sp, [0.0, 0.0], n=50, h=1e-3, seed=5)
    other = run_chain(algo, sp, [0.0, 0.0], n=50, h=1e-3, seed=5,
                      chain_id=9)
    assert np.array_equal(first.positions, second.positions)
    assert not np.array_equal(first.positions, other.positions)
    assert first.positions.shape == (51, 2)
    if algo.is_kinetic:
        assert first.friction == pytest.approx(5 * 101.0)


def test_run_chain_counts_gradients(ball: ConvexBody) -> None:
    '''
    Verifies the randomized midpoint chain evaluates two gradients per step.
    '''
    trace = run_chain(
        Algorithm.CRLMC, gaussian_in_ball(ball), [0.0, 0.0], n=1000, h=1e-3
    )
    assert trace.grad_evals == 2000
    assert np.all(np.isfinite(trace.positions))


@pytest.mark.parametrize('algo', list(Algorithm))
def test_run_ensemble_counts_gradients(
    algo: Algorithm, ball: ConvexBody
) -> None:
    '''
    Verifies the gradient count of an ensemble run.
    '''
    result = run_ensemble(
        algo, gaussian_in_ball(ball), [0.0, 0.0], n_chains=16, n=25, h=1e-3
    )
    assert result.positions.shape == (16, 2)
    assert result.grad_evals == 16 * 25 * algo.grads_per_step


def test_run_ensemble_step_rule(ball: ConvexBody) -> None:
    '''
    Verifies per-chain step sizes of a step rule are honoured.
    '''
    sp = gaussian_in_ball(ball)
    calls: List[Tuple[int, ...]] = []

    def rule(positions: FloatArray) -> FloatArray:
        calls.append(positions.shape)
        return np.full(positions.shape[0], 1e-4)

    ruled = run_ensemble(
        Algorithm.CLMC, sp, [0.0, 0.0], n_chains=8, n=10, h=1e-3, seed=2,
        step_rule=rule,
    )
    plain = run_ensemble(
        Algorithm.CLMC, sp, [0.0, 0.0], n_chains=8, n=10, h=1e-4, seed=2,
    )
    assert calls == [(8, 2)] * 10
    assert ruled.positions == pytest.approx(plain.positions)


def test_run_invalid_arguments(ball: ConvexBody) -> None:
    '''
    Verifies negative step counts, step sizes and chain counts are rejected.
    '''
    sp = gaussian_in_ball(ball)
    with pytest.raises(DomainError):
        run_chain(Algorithm.CLMC, sp, [0.0, 0.0], n=-1, h=1e-3)
    with pytest.raises(DomainError):
        run_chain(Algorithm.CLMC, sp, [0.0, 0.0], n=10, h=0.0)
    with pytest.raises(DomainError):
        run_ensemble(Algorithm.CLMC, sp, [0.0, 0.0], n_chains=0, n=10,
                     h=1e-3)


def test_step_size_warning(ball: ConvexBody) -> None:
    '''
    Verifies a step beyond the inverse smoothness is flagged.
    '''
    with pytest.warns(StepSizeWarning):
        run_chain(
            Algorithm.CLMC, gaussian_in_ball(ball), [0.0, 0.0], n=1, h=0.05
        )


def test_divergence_reported(ball: ConvexBody) -> None:
    '''
    Verifies a diverging chain stops with the offending step.
    '''
    with np.errstate(all='ignore'), pytest.warns(StepSizeWarning):
        with pytest.raises(NonFiniteError, match='diverged at step'):
            run_chain(
                Algorithm.CLMC, gaussian_in_ball(ball), [1.0, 0.0], n=1000,
                h=3.0
            )


@pytest.mark.slow
@pytest.mark.parametrize('step', [cklmc_step, crklmc_step])
def test_kinetic_velocity_equilibrium(
    step: Callable[[KineticState, SurrogatePotential], KineticState]
) -> None:
    '''
    Verifies the velocity of a drift-free kinetic ensemble settles at
    variance `gamma`.
    '''
    gamma = 2.0
    sp = constant_gradient(np.zeros(2))
    state = KineticState(
        position=np.zeros((20_000, 2)), velocity=np.zeros((20_000, 2)),
        friction=gamma, step=0.01, rng=make_stream(11, 4),
    )
    for _ in range(500):
        state = step(state, sp)
    assert np.var(state.velocity) == pytest.approx(gamma, rel=0.03)


def unconstrained_gaussian(dim: int) -> SurrogatePotential:
    '''
    Standard Gaussian with the penalty switched off.
    '''
    return SurrogatePotential(
        f=Potential.standard_gaussian(dim),
        penalty=Penalty.euclidean(math.inf),
        body=ConvexBody.ball(1.0, dim=dim),
    )


@pytest.mark.parametrize('algo', list(Algorithm))
def test_ensemble_paths_independent_of_size(
    algo: Algorithm, ball: ConvexBody
) -> None:
    '''
    Verifies a chain follows the same path whatever the number of chains run
    alongside it, and that the first chain matches the single-chain run.
    '''
    sp = gaussian_in_ball(ball)
    small = run_ensemble(algo, sp, [0.1, 0.0], n_chains=3, n=20, h=1e-3,
                         seed=3)
    large = run_ensemble(algo, sp, [0.1, 0.0], n_chains=7, n=20, h=1e-3,
                         seed=3)
    single = run_chain(algo, sp, [0.1, 0.0], n=20, h=1e-3, seed=3)
    assert np.allclose(small.positions, large.positions[:3], rtol=1e-12,
                       atol=1e-14)
    assert np.allclose(single.positions[-1], small.positions[0],
                       rtol=1e-12, atol=1e-14)
    assert not np.allclose(large.positions[0], large.positions[1])


@pytest.mark.slow
def test_cklmc_velocity_equilibrium_under_confinement() -> None:
    '''
    Verifies the velocity of a kinetic ensemble in a Gaussian well settles at
    variance `gamma`.
    '''
    gamma = 2.0
    state = KineticState(
        position=np.zeros((20_000, 2)), velocity=np.zeros((20_000, 2)),
        friction=gamma, step=0.01, rng=make_stream(12, 1),
    )
    sp = unconstrained_gaussian(2)
    for _ in range(1500):
        state = cklmc_step(state, sp)
    assert np.var(state.velocity) == pytest.approx(gamma, rel=0.03)


@pytest.mark.slow
def test_randomized_midpoint_reduces_stationary_bias() -> None:
    '''
    Verifies the randomized midpoint chain sits closer to a Gaussian target
    than the Euler chain at a coarse step.
    '''
    sp = unconstrained_gaussian(1)
    distances: Dict[Algorithm, List[float]] = {
        Algorithm.CLMC: [], Algorithm.CRLMC: [],
    }
    for seed in range(5):
        exact = EmpiricalMeasure.from_points(
            make_stream(seed, 99).standard_normal((2000, 1))
        )
        for algo, found in distances.items():
            result = run_ensemble(algo, sp, [0.0], n_chains=2000, n=30,
                                  h=0.5, seed=seed)
            found.append(sliced_wasserstein(
                2.0, EmpiricalMeasure.from_points(result.positions), exact
            ))
    assert (np.median(distances[Algorithm.CRLMC])
            < np.median(distances[Algorithm.CLMC]))


@pytest.mark.slow
def test_crklmc_step_matches_fine_discretization() -> None:
    '''
    Verifies one randomized midpoint kinetic step against an Euler-Maruyama
    solution of the same dynamics on a thousand substeps.
    '''
    gamma, h, count, substeps = 2.0, 0.05, 100_000, 1000
    theta = np.tile([1.0, 0.0], (count, 1))
    velocity = np.tile([0.0, 1.0], (count, 1))
    state = KineticState(
        position=theta, velocity=velocity, friction=gamma, step=h,
        rng=make_stream(21, 3),
    )
    state = crklmc_step(state, unconstrained_gaussian(2))

    rng = make_stream(21, 4)
    dt = h / substeps
    x, v = theta.copy(), velocity.copy()
    for _ in range(substeps):
        noise = gamma * math.sqrt(2 * dt) * rng.standard_normal(v.shape)
        x, v = x + v * dt, v - gamma * (v + x) * dt + noise

    assert sliced_wasserstein(
        2.0,
        EmpiricalMeasure.from_points(np.hstack([state.position,
                                                state.velocity])),
        EmpiricalMeasure.from_points(np.hstack([x, v])),
    ) <= 0.05
