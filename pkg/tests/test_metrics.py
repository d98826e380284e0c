'''
Tests for the Wasserstein estimators, ground-truth samplers and rate
validation
'''
import math
import numpy as np
import pytest

from pyconlmc.exceptions import (
    DegenerateDensityError, DegenerateInputError, DomainError,
    InvalidBodyError, ProblemTooLargeError, SizeMismatchError,
)
from pyconlmc.geometry import ConvexBody, Penalty
from pyconlmc.metrics import (
    EmpiricalMeasure, RadialDensity, RejectionSampler, loglog_slope,
    radial_grid, radial_wasserstein, rejection_sample_target,
    sliced_wasserstein, surrogate_distances, surrogate_radial_density,
    target_radial_density, validate_rates, wasserstein,
    wasserstein_empirical,
)
from pyconlmc.potential import Potential


def test_empirical_measure() -> None:
    '''
    Verifies construction and validation of empirical measures.
    '''
    measure = EmpiricalMeasure.from_points([0.0, 1.0, 2.0])
    assert (measure.size, measure.dim) == (3, 1)
    assert measure.weights == pytest.approx([1 / 3] * 3)

    with pytest.raises(DomainError):
        EmpiricalMeasure(points=np.empty((0, 2)))
    with pytest.raises(DomainError):
        EmpiricalMeasure.from_points([[0.0, math.nan]])


@pytest.mark.parametrize('q', [1.0, 2.0, 3.5])
def test_exact_distance_examples(q: float) -> None:
    '''
    Verifies exact distances between small measures.
    '''
    shifted = wasserstein_empirical(
        q, EmpiricalMeasure.from_points([0.0, 1.0]),
        EmpiricalMeasure.from_points([2.0, 1.0]),
    )
    assert shifted == pytest.approx(1.0)

    square = wasserstein_empirical(
        q, EmpiricalMeasure.from_points([[0.0, 0.0], [1.0, 0.0]]),
        EmpiricalMeasure.from_points([[1.0, 1.0], [0.0, 1.0]]),
    )
    assert square == pytest.approx(1.0)

    single = wasserstein_empirical(
        q, EmpiricalMeasure.from_points([[0.0, 0.0]]),
        EmpiricalMeasure.from_points([[3.0, 4.0]]),
    )
    assert single == pytest.approx(5.0)


def test_distance_of_identical_measures(rng: np.random.Generator) -> None:
    '''
    Verifies a measure is at distance zero from a permutation of itself.
    '''
    points = rng.standard_normal((50, 2))
    a = EmpiricalMeasure(points=points)
    b = EmpiricalMeasure(points=rng.permutation(points))
    assert wasserstein_empirical(2.0, a, b) == pytest.approx(0.0, abs=1e-12)


def test_sliced_exact_on_line(rng: np.random.Generator) -> None:
    '''
    Verifies the sliced estimator is exact for one-dimensional measures.
    '''
    a = EmpiricalMeasure.from_points(rng.standard_normal(300))
    b = EmpiricalMeasure.from_points(rng.exponential(size=300))
    for q in (1.0, 2.0):
        assert sliced_wasserstein(q, a, b) == pytest.approx(
            wasserstein_empirical(q, a, b), rel=1e-10
        )


def test_sliced_below_exact(rng: np.random.Generator) -> None:
    '''
    Verifies projections never increase the distance between planar clouds.
    '''
    for _ in range(5):
        a = EmpiricalMeasure(points=rng.standard_normal((200, 2)))
        b = EmpiricalMeasure(points=1.5 * rng.standard_normal((200, 2)) + 1)
        for q in (1.0, 2.0):
            assert sliced_wasserstein(q, a, b, rng=rng) <= (
                wasserstein_empirical(q, a, b) + 1e-12
            )


def test_distance_errors(rng: np.random.Generator) -> None:
    '''
    Verifies incompatible measures, orders and oversized problems are
    rejected.
    '''
    a = EmpiricalMeasure(points=rng.standard_normal((10, 2)))
    with pytest.raises(SizeMismatchError):
        wasserstein_empirical(
            1.0, a, EmpiricalMeasure(points=rng.standard_normal((11, 2)))
        )
    with pytest.raises(SizeMismatchError):
        sliced_wasserstein(
            1.0, a, EmpiricalMeasure(points=rng.standard_normal((10, 3)))
        )
    with pytest.raises(DomainError):
        wasserstein_empirical(0.5, a, a)

    large_a = EmpiricalMeasure(points=rng.standard_normal((2001, 2)))
    large_b = EmpiricalMeasure(points=rng.standard_normal((2001, 2)))
    with pytest.raises(ProblemTooLargeError):
        wasserstein_empirical(1.0, large_a, large_b)
    assert 0 < wasserstein(1.0, large_a, large_b) < 0.5


def test_radial_uniform_example() -> None:
    '''
    Verifies the radial coupling on uniform radii over `[0, 1]` and
    `[0, 1.1]`.
    '''
    grid = np.linspace(0.0, 1.1, 110_001)
    short = RadialDensity(
        dim=1, grid=grid, density=(grid <= 1.0).astype(np.float64)
    )
    long = RadialDensity(dim=1, grid=grid, density=np.ones_like(grid))
    assert radial_wasserstein(1.0, short, long) == pytest.approx(
        0.05, abs=1e-3
    )


def test_radial_density_errors(ball: ConvexBody) -> None:
    '''
    Verifies malformed densities and unsupported setups are rejected.
    '''
    grid = np.linspace(0.0, 1.0, 11)
    with pytest.raises(SizeMismatchError):
        RadialDensity(dim=1, grid=grid, density=np.ones(10))
    with pytest.raises(DomainError):
        RadialDensity(dim=1, grid=grid[::-1], density=np.ones(11))
    with pytest.raises(DegenerateDensityError):
        RadialDensity(dim=1, grid=grid, density=np.zeros(11)).cdf()

    f = Potential.standard_gaussian(2)
    with pytest.raises(InvalidBodyError):
        target_radial_density(f, ConvexBody.ball(0.5, [0.1, 0.0]), grid)
    with pytest.raises(DomainError):
        target_radial_density(Potential.quadratic([0.1, 0.0], np.eye(2)),
                              ball, grid)
    with pytest.raises(DomainError):
        radial_grid(f, ball, Penalty.bregman(np.eye(2), 0.1))


def test_surrogate_approaches_target(ball: ConvexBody) -> None:
    '''
    Verifies the surrogate approaches the target as the tuning shrinks, and
    grids hold the ball radius.
    '''
    f = Potential.standard_gaussian(2)
    penalty = Penalty.euclidean(0.1)
    grid = radial_grid(f, ball, penalty)
    assert 0.5 in grid
    assert np.all(np.diff(grid) > 0)

    distances = []
    for lam in (0.1, 0.05, 0.025):
        grid = radial_grid(f, ball, penalty, lam=lam)
        distances.append(radial_wasserstein(
            2.0, target_radial_density(f, ball, grid),
            surrogate_radial_density(f, ball, penalty, lam, grid),
        ))
    assert distances[0] > distances[1] > distances[2] > 0
    assert surrogate_distances(2, 2.0, [0.1]) == pytest.approx(
        distances[:1], rel=1e-6
    )


def test_rejection_sampler_target(
    ball: ConvexBody, gaussian: Potential, rng: np.random.Generator
) -> None:
    '''
    Verifies exact target draws lie in the body and the acceptance rate
    matches the Gaussian mass of the disc.
    '''
    sampler = RejectionSampler(gaussian, ball)
    sampler.draw(200_000, rng)
    expected = 1 - math.exp(-0.125)
    stderr = math.sqrt(expected * (1 - expected) / 200_000)
    assert abs(sampler.acceptance_rate - expected) < 3 * stderr

    measure = rejection_sample_target(gaussian, ball, 5000, rng)
    assert measure.size == 5000
    assert np.all(np.linalg.norm(measure.points, axis=1) <= 0.5)
    assert np.mean(measure.points, axis=0) == pytest.approx(
        [0.0, 0.0], abs=0.02
    )


def test_rejection_sampler_surrogate(
    ball: ConvexBody, gaussian: Potential, rng: np.random.Generator
) -> None:
    '''
    Verifies surrogate draws leak outside of the body, less so for smaller
    tuning.
    '''
    def outside(lam: float) -> float:
        measure = RejectionSampler(
            gaussian, ball, Penalty.euclidean(lam)
        ).sample(20_000, rng)
        return float(np.mean(np.linalg.norm(measure.points, axis=1) > 0.5))

    loose, tight = outside(0.5), outside(0.05)
    assert loose > tight > 0


def test_rejection_sampler_needs_gaussian(ball: ConvexBody) -> None:
    '''
    Verifies the rejection sampler refuses non-Gaussian potentials.
    '''
    f = Potential.custom(
        value=lambda x: float(np.sum(x ** 2)), gradient=lambda x: 2.0 * x,
        m=2.0, M=2.0, dim=2,
    )
    with pytest.raises(DomainError):
        RejectionSampler(f, ball)


@pytest.mark.slow
def test_radial_distance_matches_samples(
    ball: ConvexBody, gaussian: Potential, rng: np.random.Generator
) -> None:
    '''
    Verifies the quadrature distance between target and surrogate against
    the exact one-dimensional distance of sampled radii.
    '''
    penalty = Penalty.euclidean(0.1)
    grid = radial_grid(gaussian, ball, penalty)
    expected = radial_wasserstein(
        2.0, target_radial_density(gaussian, ball, grid),
        surrogate_radial_density(gaussian, ball, penalty, 0.1, grid),
    )
    target = rejection_sample_target(gaussian, ball, 200_000, rng)
    surrogate = RejectionSampler(gaussian, ball, penalty).sample(200_000,
                                                                 rng)
    sampled = sliced_wasserstein(
        2.0,
        EmpiricalMeasure.from_points(np.linalg.norm(target.points, axis=1)),
        EmpiricalMeasure.from_points(
            np.linalg.norm(surrogate.points, axis=1)
        ),
    )
    assert sampled == pytest.approx(expected, rel=0.1)


def test_loglog_slope() -> None:
    '''
    Verifies slope fitting and its degenerate inputs.
    '''
    assert loglog_slope([(1.0, 1.0), (2.0, 4.0), (4.0, 16.0)]) == (
        pytest.approx(2.0)
    )
    assert loglog_slope([(0.1, 0.3), (0.2, 0.6), (0.4, 1.2)]) == (
        pytest.approx(1.0)
    )
    with pytest.raises(DegenerateInputError):
        loglog_slope([(1.0, 1.0), (2.0, 2.0)])
    with pytest.raises(DegenerateInputError):
        loglog_slope([(1.0, 1.0), (2.0, 0.0), (4.0, 4.0)])
    with pytest.raises(DegenerateInputError):
        loglog_slope([(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)])


@pytest.mark.slow
def test_validate_rates() -> None:
    '''
    Verifies the decay exponents of the surrogate distance on the default
    tuning grid.
    '''
    report = validate_rates()
    assert report.passed
    slopes = {(case.p, case.q): case.slope for case in report.cases}
    assert slopes[(1, 1.0)] == pytest.approx(1.0, abs=0.1)
    assert report._asdict()['passed'] is True
