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
Convex bodies, projections onto them and the penalties built from those.
"""
from .body import (
    Ball, Box, ConvexBody, OracleBody, Polytope, boundary_segments, contains,
    contains_rows,
)
from .gauge import gauge_gradient_rows, gauge_value, gauge_value_rows
from .penalty import (
    Penalty, estimate_gauge_curvature, penalty_distance,
    penalty_distance_rows, penalty_gradient, penalty_gradient_rows,
)
from .projection import (
    bregman_project, bregman_project_rows, euclidean_project,
    euclidean_project_rows,
)

__all__ = [
    'Ball', 'Box', 'ConvexBody', 'OracleBody', 'Polytope',
    'boundary_segments', 'contains', 'contains_rows',
    'gauge_gradient_rows', 'gauge_value', 'gauge_value_rows',
    'Penalty', 'estimate_gauge_curvature', 'penalty_distance',
    'penalty_distance_rows', 'penalty_gradient', 'penalty_gradient_rows',
    'bregman_project', 'bregman_project_rows', 'euclidean_project',
    'euclidean_project_rows',
]
