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
Runs the experiment grid of algorithms and seeds.
"""
from __future__ import annotations
import asyncio
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import logging
import statistics
import time
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..arrays import FloatArray
from ..callback import Callback, JobCallback
from ..const import Algorithm, KINETIC_FRICTION_FACTOR, GROUND_TRUTH_STREAM
from ..geometry import ConvexBody, Penalty, contains_rows
from ..metrics import EmpiricalMeasure, rejection_sample_target, wasserstein
from ..potential import Potential, SurrogatePotential
from ..samplers import make_stream, run_ensemble
from .config import RunConfig
from .outputs import write_outputs

_LOGGER = logging.getLogger(__name__)

# Stream of the sliced estimator, used only beyond the assignment size limit
METRIC_STREAM = GROUND_TRUTH_STREAM - 1


@dataclass(eq=False)
class RunResult:  # pylint: disable=too-many-instance-attributes
    """
    Outcome of one (algorithm, seed) job.
    """
    algo: Algorithm
    seed: int
    n: int
    N: int  # pylint: disable=invalid-name
    h: float
    lam: float
    w1: float
    w2: float
    grad_evals: int
    wall_ms: float
    samples: FloatArray

    def _asdict(self) -> Dict[str, Any]:
        return {
            'algo': self.algo.name,
            'seed': self.seed,
            'n': self.n,
            'N': self.N,
            'h': self.h,
            'lambda': self.lam,
            'w1': self.w1,
            'w2': self.w2,
            'grad_evals': self.grad_evals,
            'wall_ms': self.wall_ms,
        }


@dataclass(eq=False)
class ExperimentReport:
    """
    Results of the whole grid, ordered by algorithm and then by seed.
    """
    config: RunConfig
    results: List[RunResult]

    def for_algorithm(self, algo: Algorithm) -> List[RunResult]:
        """
        Results of one algorithm, in seed order.
        """
        return [result for result in self.results if result.algo == algo]

    def median(self, algo: Algorithm, attr: str) -> Optional[float]:
        """
        Median of a result attribute over the seeds of an algorithm.

        :param attr: One of `w1`, `w2`, `wall_ms`
        :return: The median, or None if the algorithm has no results
        """
        values = [getattr(r, attr) for r in self.for_algorithm(algo)]
        return float(statistics.median(values)) if values else None

    def not_worse(self, algo: Algorithm, baseline: Algorithm,
                  margin: float = 1.0) -> Optional[bool]:
        """
        Tells if the median W2 of `algo` is at most `margin` times that of
        `baseline`.

        :return: The comparison, or None if either has no results
        """
        value = self.median(algo, 'w2')
        reference = self.median(baseline, 'w2')
        if value is None or reference is None:
            return None
        return value <= margin * reference

    def aggregates(self) -> Dict[str, Any]:
        """
        Per-algorithm medians and the ordering flags.
        """
        medians: Dict[str, Dict[str, Optional[float]]] = {}
        for algo in self.config.algorithms:
            entry = {
                'median_w1': self.median(algo, 'w1'),
                'median_w2': self.median(algo, 'w2'),
            }
            if self.config.record_timing:
                entry['median_wall_ms'] = self.median(algo, 'wall_ms')
            medians[algo.name] = entry
        return {
            'medians': medians,
            'crlmc_le_clmc': self.not_worse(Algorithm.CRLMC, Algorithm.CLMC),
            'crklmc_le_cklmc': self.not_worse(
                Algorithm.CRKLMC, Algorithm.CKLMC
            ),
        }

    def _asdict(self) -> Dict[str, Any]:
        results = [r._asdict() for r in self.results]
        if not self.config.record_timing:
            for entry in results:
                entry['wall_ms'] = None
        return {
            'config': self.config._asdict(),
            'results': results,
            'aggregates': self.aggregates(),
        }


class InsideScaledStep:
    """
    Step rule scaling the step size of the chains currently inside the body.
    """
    def __init__(self, body: ConvexBody, h: float, scale: float) -> None:
        self._body = body
        self._h = h
        self._scale = scale

    def __call__(self, positions: FloatArray) -> FloatArray:
        return np.where(
            contains_rows(self._body, positions),
            self._h * self._scale, self._h
        )


class ExperimentRunner:
    """
    Runs one job per (algorithm, seed) on a pool of worker threads.

    Every job draws from streams keyed by its own seed, so the report does
    not depend on the number of workers or on completion order.

    :param cfg: Validated configuration
    :param on_job_done: Invoked with each finished `RunResult`, either a
      plain function or a coroutine function
    :param flush_partial: Write the outputs of the finished jobs before
      re-raising a job failure
    """
    def __init__(
        self, cfg: RunConfig, on_job_done: Callback = None,
        flush_partial: bool = True
    ) -> None:
        self._cfg = cfg
        self._on_job_done = on_job_done
        self._flush_partial = flush_partial
        self._body = cfg.body.build()
        self._potential: Potential = cfg.potential.build(self._body.dim)
        self._penalty: Penalty = cfg.penalty.build(self._body)
        self._report: Optional[ExperimentReport] = None
        self._callbacks: List[asyncio.Task[None]] = []

    @property
    def report(self) -> ExperimentReport:
        """
        The report, available once `process()` has completed.
        """
        if self._report is None:
            raise RuntimeError('Experiment has not been run yet')
        return self._report

    def surrogate(self, algo: Algorithm) -> SurrogatePotential:
        """
        Surrogate potential of an algorithm, under its penalty parameter.
        """
        lam = self._cfg.lambdas[algo]
        return SurrogatePotential(
            f=self._potential, penalty=self._penalty.with_lambda(lam),
            body=self._body,
        )

    def run_job(self, algo: Algorithm, seed: int) -> RunResult:
        """
        Runs the ensemble of one algorithm and scores it against exact
        samples of the target.
        """
        cfg = self._cfg
        sp = self.surrogate(algo)
        gamma = (
            KINETIC_FRICTION_FACTOR * sp.smoothness_bound()
            if algo.is_kinetic else None
        )
        step_rule = (
            None if cfg.inside_scale == 1
            else InsideScaledStep(self._body, cfg.h, cfg.inside_scale)
        )
        started = time.perf_counter()
        ensemble = run_ensemble(
            algo, sp, self._potential.minimizer, cfg.N, cfg.n, cfg.h,
            gamma=gamma, seed=seed, chain_id=int(algo), step_rule=step_rule,
        )
        wall_ms = (time.perf_counter() - started) * 1000.0

        truth = rejection_sample_target(
            self._potential, self._body, cfg.N,
            make_stream(seed, GROUND_TRUTH_STREAM)
        )
        samples = EmpiricalMeasure.from_points(ensemble.positions)
        w1 = wasserstein(1, samples, truth, make_stream(seed, METRIC_STREAM))
        w2 = wasserstein(2, samples, truth, make_stream(seed, METRIC_STREAM))
        _LOGGER.info(
            '%s (seed %s): W1 %.6g, W2 %.6g, %.1f ms', algo.name, seed, w1,
            w2, wall_ms
        )
        return RunResult(
            algo=algo, seed=seed, n=cfg.n, N=cfg.N, h=cfg.h,
            lam=sp.penalty.lam, w1=w1, w2=w2,
            grad_evals=ensemble.grad_evals, wall_ms=wall_ms,
            samples=ensemble.positions,
        )

    async def _track(
        self, job: Tuple[Algorithm, int], future: asyncio.Future[RunResult]
    ) -> RunResult:
        try:
            result = await future
        except Exception:
            _LOGGER.error('Job %s (seed %s) failed', job[0].name, job[1])
            raise
        task = JobCallback.invoke(self._on_job_done, result)
        if task is not None:
            self._callbacks.append(task)
        return result

    async def process(self) -> ExperimentRunner:
        """
        Runs the whole grid.

        :raises ConLMCError: The first failure among the jobs, after the
          results of the others have been flushed
        """
        cfg = self._cfg
        jobs = [(algo, seed) for algo in cfg.algorithms for seed in cfg.seeds]
        _LOGGER.info(
            'Running %s jobs (n=%s, N=%s) on %s workers', len(jobs), cfg.n,
            cfg.N, cfg.workers
        )
        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
            outcomes = await asyncio.gather(
                *(
                    self._track(job, loop.run_in_executor(
                        executor, self.run_job, *job
                    ))
                    for job in jobs
                ),
                return_exceptions=True
            )
        # Callbacks complete before the report is built, their failures are
        # logged by `JobCallback`
        await asyncio.gather(*self._callbacks, return_exceptions=True)
        self._callbacks.clear()

        results = [o for o in outcomes if isinstance(o, RunResult)]
        self._report = ExperimentReport(config=cfg, results=results)
        failures = [o for o in outcomes if isinstance(o, BaseException)]
        if failures:
            if self._flush_partial and results:
                write_outputs(self._report, cfg)
                _LOGGER.warning(
                    'Flushed %s of %s results before aborting', len(results),
                    len(jobs)
                )
            raise failures[0]
        _LOGGER.info('Experiment finished')
        return self


def run_experiment(
    cfg: RunConfig, on_job_done: Callback = None
) -> ExperimentReport:
    """
    Runs the experiment to completion.

    :param cfg: Validated configuration
    :param on_job_done: Progress callback, see `ExperimentRunner`
    :return: The report
    """
    runner = asyncio.run(ExperimentRunner(cfg, on_job_done).process())
    return runner.report
