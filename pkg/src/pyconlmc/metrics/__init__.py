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
Wasserstein estimators, ground-truth samplers and rate validation.
"""
from .ground_truth import RejectionSampler, rejection_sample_target
from .measure import EmpiricalMeasure
from .radial import (
    RadialDensity, radial_grid, radial_wasserstein, surrogate_radial_density,
    target_radial_density,
)
from .rates import (
    RateCase, RateReport, loglog_slope, surrogate_distances, validate_rates,
)
from .wasserstein import sliced_wasserstein, wasserstein, wasserstein_empirical

__all__ = [
    'RejectionSampler', 'rejection_sample_target', 'EmpiricalMeasure',
    'RadialDensity', 'radial_grid', 'radial_wasserstein',
    'surrogate_radial_density', 'target_radial_density', 'RateCase',
    'RateReport', 'loglog_slope', 'surrogate_distances', 'validate_rates',
    'sliced_wasserstein', 'wasserstein', 'wasserstein_empirical',
]
