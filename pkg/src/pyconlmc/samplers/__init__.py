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
Langevin samplers of the surrogate potential.
"""
from .chain import (
    ChainTrace, EnsembleResult, advance, default_friction, run_chain,
    run_ensemble,
)
from .kernels import (
    cklmc_step, cklmc_update, clmc_step, clmc_update, crklmc_step,
    crklmc_update, crlmc_step, crlmc_update,
)
from .noise import (
    kinetic_noise_covariance_pair, kinetic_noise_covariance_triple, psi,
    sample_correlated,
)
from .state import ChainState, ChainStreams, KineticState, make_stream

__all__ = [
    'ChainTrace', 'EnsembleResult', 'advance', 'default_friction',
    'run_chain', 'run_ensemble', 'cklmc_step', 'cklmc_update', 'clmc_step',
    'clmc_update', 'crklmc_step', 'crklmc_update', 'crlmc_step',
    'crlmc_update', 'kinetic_noise_covariance_pair',
    'kinetic_noise_covariance_triple', 'psi', 'sample_correlated',
    'ChainState', 'ChainStreams', 'KineticState', 'make_stream',
]
