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
Chain drivers: a single traced chain, and a vectorized ensemble of
independent chains.
"""
from __future__ import annotations
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, Optional
import logging

import numpy as np
from numpy.typing import ArrayLike

from ..arrays import FloatArray
from ..const import KINETIC_FRICTION_FACTOR, Algorithm
from ..exceptions import DomainError, NonFiniteError
from ..potential import SurrogatePotential
from .kernels import clmc_step, cklmc_step, crklmc_step, crlmc_step
from .state import (
    ChainState, ChainStreams, KineticState, RandomStream, State,
)

_LOGGER = logging.getLogger(__name__)

StepRule = Callable[[FloatArray], FloatArray]


@dataclass(frozen=True, eq=False)
class ChainTrace:
    """
    Positions visited by a chain, the initial one included.
    """
    algo: Algorithm
    positions: FloatArray
    grad_evals: int
    friction: Optional[float] = None

    def _asdict(self) -> Dict[str, Any]:
        """
        Returns the trace as dictionary.
        """
        return {
            'algo': self.algo.name,
            'positions': self.positions.tolist(),
            'grad_evals': self.grad_evals,
            'friction': self.friction,
        }


@dataclass(frozen=True, eq=False)
class EnsembleResult:
    """
    Final positions of an ensemble of independent chains.
    """
    algo: Algorithm
    positions: FloatArray
    grad_evals: int
    friction: Optional[float] = None


def default_friction(sp: SurrogatePotential) -> float:
    """
    Friction `5 M^lambda` the kinetic schemes are analyzed with.
    """
    return KINETIC_FRICTION_FACTOR * sp.smoothness_bound()


def advance(algo: Algorithm, state: State, sp: SurrogatePotential) -> State:
    """
    Advances the state by one step of the algorithm.
    """
    if algo.is_kinetic:
        assert isinstance(state, KineticState)
        if algo == Algorithm.CKLMC:
            return cklmc_step(state, sp)
        return crklmc_step(state, sp)
    assert isinstance(state, ChainState)
    if algo == Algorithm.CLMC:
        return clmc_step(state, sp)
    return crlmc_step(state, sp)


def _initial_state(
    algo: Algorithm, position: FloatArray, h: float,
    gamma: Optional[float], rng: RandomStream
) -> State:
    if not algo.is_kinetic:
        return ChainState(position=position, step=h, rng=rng)
    assert gamma is not None
    batch = np.atleast_2d(position)
    velocity = np.sqrt(gamma) * rng.standard_normal(batch.shape).reshape(
        position.shape
    )
    return KineticState(
        position=position, velocity=velocity, friction=gamma, step=h,
        rng=rng,
    )


def _validate(n: int, h: float) -> None:
    if n < 0:
        raise DomainError(f'Number of steps must be non-negative: {n}')
    if not h > 0:
        raise DomainError(f'Step size must be positive: {h}')


def _log_stability(sp: SurrogatePotential, h: float) -> None:
    bound = sp.smoothness_bound()
    if h * bound >= 1.0:
        _LOGGER.warning(
            'Step size %s exceeds the stability limit %s', h, 1.0 / bound
        )


def run_chain(  # pylint: disable=too-many-arguments
    algo: Algorithm, sp: SurrogatePotential, init: ArrayLike, n: int,
    h: float, gamma: Optional[float] = None, seed: int = 0,
    chain_id: int = 0,
) -> ChainTrace:
    """
    Runs a single chain and records its trace.

    Kinetic chains start with velocity drawn from `N(0, gamma I)`, the first
    draw of the stream.

    :param algo: Sampling algorithm
    :param sp: Surrogate potential
    :param init: Initial position
    :param n: Number of steps
    :param h: Step size
    :param gamma: Friction of kinetic algorithms, `5 M^lambda` if omitted
    :param seed: Master seed
    :param chain_id: Chain identifier, selects the random stream
    :return: Trace of `n + 1` positions
    :raises NonFiniteError: The chain diverged
    """
    _validate(n, h)
    _log_stability(sp, h)
    friction = (gamma or default_friction(sp)) if algo.is_kinetic else None
    rng = ChainStreams(seed, chain_id, 1)
    start = np.asarray(init, dtype=np.float64).reshape(-1)
    state = _initial_state(algo, start, h, friction, rng)

    positions = np.empty((n + 1, start.shape[0]))
    positions[0] = start
    for k in range(n):
        try:
            state = advance(algo, state, sp)
        except NonFiniteError as exc:
            raise NonFiniteError(
                f'{algo.name} chain {chain_id} (seed {seed}) diverged at'
                f' step {k + 1}'
            ) from exc
        positions[k + 1] = state.position

    _LOGGER.debug(
        '%s chain %s (seed %s) ran %s steps', algo.name, chain_id, seed, n
    )
    return ChainTrace(
        algo=algo, positions=positions, grad_evals=state.grad_evals,
        friction=friction,
    )


def run_ensemble(  # pylint: disable=too-many-arguments
    algo: Algorithm, sp: SurrogatePotential, init: ArrayLike,
    n_chains: int, n: int, h: float, gamma: Optional[float] = None,
    seed: int = 0, chain_id: int = 0, step_rule: Optional[StepRule] = None,
) -> EnsembleResult:
    """
    Runs independent chains from a common start as one vectorized batch.

    Chain `i` draws from the stream of `(seed, chain_id, i)`, so its path
    does not depend on `n_chains`; chain 0 follows the path `run_chain`
    takes with the same arguments.

    :param n_chains: Number of chains
    :param step_rule: Maps current positions to per-chain step sizes,
      the constant `h` is used if omitted
    :return: Final positions of the chains
    :raises NonFiniteError: A chain diverged
    """
    _validate(n, h)
    _log_stability(sp, h)
    if n_chains < 1:
        raise DomainError(f'Number of chains must be positive: {n_chains}')
    friction = (gamma or default_friction(sp)) if algo.is_kinetic else None
    rng = ChainStreams(seed, chain_id, n_chains)
    start = np.asarray(init, dtype=np.float64).reshape(-1)
    state = _initial_state(
        algo, np.tile(start, (n_chains, 1)), h, friction, rng
    )

    for k in range(n):
        if step_rule is not None:
            state = replace(state, step=step_rule(state.position))
        try:
            state = advance(algo, state, sp)
        except NonFiniteError as exc:
            raise NonFiniteError(
                f'{algo.name} ensemble (seed {seed}) diverged at step {k + 1}'
            ) from exc

    return EnsembleResult(
        algo=algo, positions=np.asarray(state.position),
        grad_evals=state.grad_evals, friction=friction,
    )
