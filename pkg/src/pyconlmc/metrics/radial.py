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
Radial densities of rotation-invariant measures and the monotone radial
coupling between them.

For a Gaussian `a |x|^2 / 2` restricted to (or penalized outside of) a ball
centered at the origin, both the target and the surrogate are rotation
invariant, and transporting radii by their quantiles gives the distance.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Optional, Tuple
import math

import numpy as np
from numpy.typing import ArrayLike
from scipy.integrate import cumulative_trapezoid, trapezoid

from ..arrays import FloatArray
from ..const import (
    DENSITY_MASS_FLOOR, QUANTILE_GRID_SIZE, RADIAL_GRID_SIZE, PenaltyKind,
)
from ..exceptions import (
    DegenerateDensityError, DomainError, InvalidBodyError, SizeMismatchError,
)
from ..geometry.body import ConvexBody
from ..geometry.penalty import Penalty
from ..potential import Potential

# Grid extent beyond the boundary in units of the penalty width
_TAIL_WIDTHS = 10.0


@dataclass(frozen=True, eq=False)
class RadialDensity:
    """
    Unnormalized density of the radius `|x|`, tabulated on an increasing
    grid starting at zero; includes the `t^(p-1)` area factor.
    """
    dim: int
    grid: FloatArray
    density: FloatArray

    def __post_init__(self) -> None:
        if self.grid.shape != self.density.shape or self.grid.ndim != 1:
            raise SizeMismatchError(
                f'Grid of shape {self.grid.shape} does not match density of'
                f' shape {self.density.shape}'
            )
        if np.any(np.diff(self.grid) <= 0):
            raise DomainError('Radial grid must be increasing')
        if np.any(self.density < 0):
            raise DomainError('Radial density must be non-negative')

    @property
    def mass(self) -> float:
        """
        Total mass of the density.
        """
        return float(trapezoid(self.density, self.grid))

    def cdf(self) -> FloatArray:
        """
        Normalized cumulative distribution on the grid.

        :raises DegenerateDensityError: Density carries no mass
        """
        total = self.mass
        if total < DENSITY_MASS_FLOOR:
            raise DegenerateDensityError(
                f'Radial density has mass {total} below the floor'
            )
        return np.asarray(
            cumulative_trapezoid(self.density, self.grid, initial=0.0) / total
        )

    def quantiles(self, levels: ArrayLike) -> FloatArray:
        """
        Radial quantiles by linear interpolation of the distribution.
        """
        cdf = self.cdf()
        keep = np.concatenate([[True], np.diff(cdf) > 0])
        return np.asarray(np.interp(levels, cdf[keep], self.grid[keep]))


def _radial_setup(f: Potential, body: ConvexBody) -> Tuple[float, float]:
    """
    Returns the scale of the isotropic potential and the ball radius.
    """
    if not body.is_centered_ball:
        raise InvalidBodyError(
            'Radial densities need a ball centered at the origin'
        )
    scale = f.isotropic_scale
    if scale is None:
        raise DomainError(
            'Radial densities need an isotropic potential centered at the'
            ' origin'
        )
    return scale, body.inner_radius


def _penalty_width(penalty: Penalty, radius: float, lam: float) -> float:
    if penalty.kind == PenaltyKind.GAUGE:
        return lam * radius
    if penalty.kind == PenaltyKind.EUCLIDEAN:
        return lam
    raise DomainError('Radial densities support Euclidean and gauge penalties')


def radial_grid(
    f: Potential, body: ConvexBody, penalty: Penalty,
    lam: Optional[float] = None, size: int = RADIAL_GRID_SIZE,
) -> FloatArray:
    """
    Grid on `[0, T]` holding the ball radius as a node, with `T` leaving out
    no more than `1e-12` of the surrogate mass.

    :param lam: Tuning, the one of `penalty` if omitted
    """
    scale, radius = _radial_setup(f, body)
    tail = _TAIL_WIDTHS / math.sqrt(scale)
    tuning = penalty.lam if lam is None else lam
    if not math.isinf(tuning):
        tail = min(tail, _TAIL_WIDTHS * _penalty_width(penalty, radius,
                                                       tuning))
    inner = size // 2
    return np.concatenate([
        np.linspace(0.0, radius, inner),
        np.linspace(radius, radius + tail, size - inner + 1)[1:],
    ])


def target_radial_density(
    f: Potential, body: ConvexBody, grid: ArrayLike
) -> RadialDensity:
    """
    Radial density of the target restricted to the ball.
    """
    scale, radius = _radial_setup(f, body)
    t = np.asarray(grid, dtype=np.float64)
    density = np.where(
        t <= radius, t ** (body.dim - 1) * np.exp(-0.5 * scale * t * t), 0.0
    )
    return RadialDensity(dim=body.dim, grid=t, density=density)


def surrogate_radial_density(
    f: Potential, body: ConvexBody, penalty: Penalty, lam: float,
    grid: ArrayLike,
) -> RadialDensity:
    """
    Radial density of the surrogate `exp(-f - d_K / (2 lam^2))`.

    :param f: Isotropic Gaussian potential centered at the origin
    :param body: Ball centered at the origin
    :param penalty: Euclidean or gauge penalty
    :param lam: Tuning, unbounded recovers the unconstrained density
    :param grid: Radii to tabulate at
    :raises DegenerateDensityError: Density carries no mass
    """
    scale, radius = _radial_setup(f, body)
    t = np.asarray(grid, dtype=np.float64)
    excess = np.maximum(t - radius, 0.0)
    if penalty.kind == PenaltyKind.GAUGE:
        excess = excess / radius
    elif penalty.kind != PenaltyKind.EUCLIDEAN:
        raise DomainError(
            'Radial densities support Euclidean and gauge penalties'
        )
    exponent = -0.5 * scale * t * t
    if not math.isinf(lam):
        exponent = exponent - excess ** 2 / (2.0 * lam * lam)
    density = RadialDensity(
        dim=body.dim, grid=t, density=t ** (body.dim - 1) * np.exp(exponent)
    )
    if density.mass < DENSITY_MASS_FLOOR:
        raise DegenerateDensityError(
            f'Surrogate density has mass {density.mass} below the floor'
        )
    return density


def radial_wasserstein(
    q: float, density_a: RadialDensity, density_b: RadialDensity,
    levels: int = QUANTILE_GRID_SIZE,
) -> float:
    """
    Wasserstein distance of order `q` between rotation-invariant measures,
    through the monotone coupling of their radii.

    :param q: Order, at least one
    :param density_a: First radial density
    :param density_b: Second radial density, of the same dimension
    :param levels: Number of quantile levels (midpoint rule)
    :raises DegenerateDensityError: A density carries no mass
    """
    if q < 1:
        raise DomainError(f'Wasserstein order must be at least one: {q}')
    if density_a.dim != density_b.dim:
        raise SizeMismatchError(
            f'Densities of dimensions {density_a.dim} and {density_b.dim}'
        )
    u = (np.arange(levels) + 0.5) / levels
    gap = np.abs(density_a.quantiles(u) - density_b.quantiles(u))
    return float(np.mean(gap ** q) ** (1.0 / q))
