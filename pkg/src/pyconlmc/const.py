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
Defines constants and enumerations used across the package.
"""
from __future__ import annotations
from enum import IntEnum
from typing import Optional

# Projection solvers
PROJECTION_TOLERANCE = 1e-10
PROJECTION_MAX_SWEEPS = 100_000
ROOT_TOLERANCE = 1e-15
BREGMAN_MAX_ITERATIONS = 100_000

# Gauge evaluation for membership-oracle bodies, values are accurate to the
# relative bisection tolerance
GAUGE_BISECTION_TOLERANCE = 1e-12
GAUGE_FD_STEP = 1e-6
GAUGE_CURVATURE_DIRECTIONS = 1000

# Minimizer search for custom potentials
MINIMIZER_GRADIENT_TOLERANCE = 1e-8
MINIMIZER_MAX_ITERATIONS = 1_000_000

# Noise generation
PSI_SERIES_THRESHOLD = 1e-4
EIGENVALUE_CLIP_THRESHOLD = 1e-12

# Metrics
ASSIGNMENT_MAX_SIZE = 2000
SLICED_PROJECTIONS = 200
RADIAL_GRID_SIZE = 200_001
QUANTILE_GRID_SIZE = 200_000
DENSITY_MASS_FLOOR = 1e-300
LOW_ACCEPTANCE_RATE = 1e-4
REJECTION_MAX_PROPOSALS = 10**9

# Harness defaults
DEFAULT_STEP = 1e-3
DEFAULT_INSIDE_SCALE = 0.1
DEFAULT_ITERATIONS = 1000
DEFAULT_SAMPLES = 500
DEFAULT_OUTPUTS = 'results'
KINETIC_FRICTION_FACTOR = 5.0
# Stream identifier of the ground-truth sampler, kept clear of chain ids
GROUND_TRUTH_STREAM = 2**31 - 1


class Algorithm(IntEnum):
    """
    Defines the sampling algorithms.

    Enumeration values double as chain stream identifiers, so they must never
    be renumbered.
    """

    def __new__(cls, value: int, doc: Optional[str] = None) -> Algorithm:
        """
        Allows to set the docstring along with the value to enum entry.
        """
        obj = int.__new__(cls, value)
        obj._value_ = value
        obj.__doc__ = doc
        return obj

    CLMC = (1, 'Constrained Langevin Monte Carlo, Euler discretization')
    CKLMC = (2, """
        Constrained kinetic Langevin Monte Carlo, exact integration of the
        frozen-drift Ornstein-Uhlenbeck step
    """)
    CRLMC = (3, 'Constrained randomized midpoint Langevin Monte Carlo')
    CRKLMC = (4, """
        Constrained randomized midpoint kinetic Langevin Monte Carlo
    """)

    @property
    def is_kinetic(self) -> bool:
        """
        Indicates the algorithm carries a velocity.
        """
        return self in (Algorithm.CKLMC, Algorithm.CRKLMC)

    @property
    def grads_per_step(self) -> int:
        """
        Number of gradient evaluations a single step performs per chain.
        """
        return 2 if self in (Algorithm.CRLMC, Algorithm.CRKLMC) else 1


class Metric(IntEnum):
    """
    Defines the accuracy metrics schedules are tuned for.
    """
    W1 = 1
    W2 = 2


class PenaltyKind(IntEnum):
    """
    Defines the kinds of distance functions penalizing the constraint.
    """

    def __new__(cls, value: int, doc: Optional[str] = None) -> PenaltyKind:
        """
        Allows to set the docstring along with the value to enum entry.
        """
        obj = int.__new__(cls, value)
        obj._value_ = value
        obj.__doc__ = doc
        return obj

    EUCLIDEAN = (1, 'Squared Euclidean distance to the body')
    BREGMAN = (2, 'Squared Mahalanobis distance to the Bregman projection')
    GAUGE = (3, 'Squared excess of the gauge function over one')
