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
Python package for sampling log-concave distributions restricted to convex
bodies with penalized Langevin Monte Carlo.
"""

from .const import Algorithm, Metric, PenaltyKind
from .exceptions import (
    ConLMCError, ConfigError, ConfigParseError, ConfigValidationError,
    DomainError, InvalidBodyError, NonFiniteError, LowAcceptanceWarning,
    StepSizeWarning,
)
from .geometry import ConvexBody, Penalty
from .potential import Potential, SurrogatePotential
from .samplers import run_chain, run_ensemble
from .schedules import ScheduleRequest, SchedulePlan, select_parameters
from .metrics import EmpiricalMeasure, wasserstein
from .harness import (
    RunConfig, ExperimentReport, load_config, run_experiment, write_outputs,
)

__all__ = [
    'Algorithm', 'Metric', 'PenaltyKind', 'ConLMCError', 'ConfigError',
    'ConfigParseError', 'ConfigValidationError', 'DomainError',
    'InvalidBodyError', 'NonFiniteError', 'LowAcceptanceWarning',
    'StepSizeWarning', 'ConvexBody', 'Penalty', 'Potential',
    'SurrogatePotential', 'run_chain', 'run_ensemble', 'ScheduleRequest',
    'SchedulePlan', 'select_parameters', 'EmpiricalMeasure', 'wasserstein',
    'RunConfig', 'ExperimentReport', 'load_config', 'run_experiment',
    'write_outputs',
]
