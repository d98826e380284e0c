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
Chain states and random streams.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..arrays import FloatArray
from ..exceptions import DomainError, SizeMismatchError

StepSize = Union[float, FloatArray]


def make_stream(
    seed: int, chain_id: int, index: Optional[int] = None
) -> np.random.Generator:
    """
    Creates the counter-based random stream of a chain.

    The stream is fully determined by `(seed, chain_id)`, or by
    `(seed, chain_id, index)` for the members of an ensemble; within it draws
    are taken in a fixed per-step order documented by each kernel, so results
    do not depend on how chains are spread over workers.

    :param seed: Master seed
    :param chain_id: Identifier of the chain or ensemble
    :param index: Position of the chain within its ensemble
    """
    entropy = [seed, chain_id] if index is None else [seed, chain_id, index]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(
        entropy
    )))


class ChainStreams:
    """
    Streams of an ensemble, one per chain.

    Batched draws stack one row per chain, each taken from that chain's own
    stream, so the path of a chain does not depend on the number of chains
    run alongside it. Draws of shape `(N, ...)` mirror those of
    `numpy.random.Generator`.

    :param seed: Master seed
    :param chain_id: Identifier of the ensemble
    :param count: Number of chains
    """
    def __init__(self, seed: int, chain_id: int, count: int) -> None:
        if count < 1:
            raise DomainError(f'Number of chains must be positive: {count}')
        self._generators: List[np.random.Generator] = [
            make_stream(seed, chain_id, index) for index in range(count)
        ]

    def __len__(self) -> int:
        return len(self._generators)

    def _stack(
        self, size: Sequence[int],
        draw: Callable[[np.random.Generator, Tuple[int, ...]], FloatArray]
    ) -> FloatArray:
        shape = tuple(size)
        if not shape or shape[0] != len(self._generators):
            raise SizeMismatchError(
                f'Draws of shape {shape} do not match {len(self)} chains'
            )
        return np.stack([draw(gen, shape[1:]) for gen in self._generators])

    def random(self, size: Sequence[int]) -> FloatArray:
        """
        Uniform draws on `[0, 1)`, one row per chain.
        """
        return self._stack(size, lambda gen, rest: gen.random(rest))

    def standard_normal(self, size: Sequence[int]) -> FloatArray:
        """
        Standard normal draws, one row per chain.
        """
        return self._stack(size, lambda gen, rest: gen.standard_normal(rest))


RandomStream = Union[np.random.Generator, ChainStreams]


def _check_step(step: StepSize) -> None:
    if not np.all(np.asarray(step) > 0):
        raise DomainError(f'Step size must be positive: {step}')


@dataclass(frozen=True, eq=False)
class ChainState:
    """
    State of an overdamped chain, or of an ensemble when `position` is a
    batch of shape `(N, p)`; `step` is then a scalar or per-row array.

    `grad_evals` counts gradient evaluations per chain point, so an ensemble
    step adds its number of rows. A plain generator draws the whole batch at
    once, `ChainStreams` draw row by row.
    """
    position: FloatArray
    step: StepSize
    rng: RandomStream
    grad_evals: int = 0

    def __post_init__(self) -> None:
        _check_step(self.step)


@dataclass(frozen=True, eq=False)
class KineticState:
    """
    State of a kinetic chain (or ensemble) carrying a velocity.
    """
    position: FloatArray
    velocity: FloatArray
    friction: float
    step: StepSize
    rng: RandomStream
    grad_evals: int = 0

    def __post_init__(self) -> None:
        _check_step(self.step)
        if not self.friction > 0:
            raise DomainError(f'Friction must be positive: {self.friction}')
        if self.velocity.shape != self.position.shape:
            raise DomainError(
                f'Velocity of shape {self.velocity.shape} does not match'
                f' position of shape {self.position.shape}'
            )


State = Union[ChainState, KineticState]
