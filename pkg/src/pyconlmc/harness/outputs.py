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
Writes experiment results: sample and metric tables, the JSON report and
scatter plots.
"""
from __future__ import annotations
import csv
import json
import logging
from pathlib import Path
from typing import List, Optional, Sequence, TYPE_CHECKING

from matplotlib.figure import Figure
from matplotlib.patches import Circle

from ..arrays import FloatArray
from ..exceptions import OutputError
from ..geometry import ConvexBody, boundary_segments
from .config import RunConfig

if TYPE_CHECKING:
    from .runner import ExperimentReport

_LOGGER = logging.getLogger(__name__)

METRICS_HEADER = [
    'algo', 'seed', 'n', 'N', 'h', 'lambda', 'w1', 'w2', 'grad_evals',
    'wall_ms',
]


def _fmt(value: float) -> str:
    """
    Shortest decimal representation that reads back to the same float.
    """
    return repr(float(value))


def write_samples(path: Path, samples: FloatArray) -> None:
    """
    Writes final positions, one row per chain.
    """
    with path.open('w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow([f'x{i + 1}' for i in range(samples.shape[1])])
        writer.writerows([_fmt(v) for v in row] for row in samples)


def write_metrics(
    path: Path, report: ExperimentReport, record_timing: bool
) -> None:
    """
    Writes one row per (algorithm, seed), the wall time column is left empty
    unless timing is recorded so that repeated runs produce identical files.
    """
    with path.open('w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(METRICS_HEADER)
        for r in report.results:
            writer.writerow([
                r.algo.name, r.seed, r.n, r.N, _fmt(r.h), _fmt(r.lam),
                _fmt(r.w1), _fmt(r.w2), r.grad_evals,
                _fmt(r.wall_ms) if record_timing else '',
            ])


def write_scatter(
    path: Path, body: ConvexBody, samples: FloatArray, title: str
) -> None:
    """
    Plots planar samples with the boundary of the body as a red dashed
    outline, each boundary piece under its own `boundary-<i>` id.
    """
    fig = Figure(figsize=(5, 5))
    ax = fig.add_subplot()
    ax.scatter(samples[:, 0], samples[:, 1], s=4, alpha=0.6)
    for i, segment in enumerate(boundary_segments(body)):
        if segment.shape == (3,):
            circle = Circle(
                (segment[0], segment[1]), segment[2], fill=False,
                edgecolor='red', linestyle='--'
            )
            circle.set_gid(f'boundary-{i}')
            ax.add_patch(circle)
        else:
            (line,) = ax.plot(
                segment[:, 0], segment[:, 1], color='red', linestyle='--'
            )
            line.set_gid(f'boundary-{i}')
    ax.set_aspect('equal')
    ax.set_title(title)
    fig.savefig(path, format='svg', metadata={'Date': None})


def _scatter_files(
    out: Path, report: ExperimentReport, body: ConvexBody
) -> List[Path]:
    if body.dim != 2:
        _LOGGER.warning(
            'Skipping scatter plots, the body is %s-dimensional', body.dim
        )
        return []
    paths = []
    for algo in report.config.algorithms:
        results = report.for_algorithm(algo)
        if not results:
            continue
        path = out / f'scatter_{algo.name}.svg'
        first = results[0]
        write_scatter(
            path, body, first.samples, f'{algo.name} (seed {first.seed})'
        )
        paths.append(path)
    return paths


def write_outputs(
    report: ExperimentReport, cfg: Optional[RunConfig] = None,
    out_dir: Optional[Path] = None
) -> Sequence[Path]:
    """
    Writes all outputs of the report.

    :param report: The experiment report
    :param cfg: Configuration, the one of the report if omitted
    :param out_dir: Output directory overriding the configured one
    :return: Paths of the written files
    :raises OutputError: A file could not be written
    """
    cfg = cfg or report.config
    out = Path(out_dir or cfg.outputs)
    paths: List[Path] = []
    try:
        out.mkdir(parents=True, exist_ok=True)
        for r in report.results:
            path = out / f'samples_{r.algo.name}_{r.seed}.csv'
            write_samples(path, r.samples)
            paths.append(path)

        path = out / 'metrics.csv'
        write_metrics(path, report, cfg.record_timing)
        paths.append(path)

        path = out / 'report.json'
        path.write_text(
            json.dumps(report._asdict(), indent=2) + '\n', encoding='utf-8'
        )
        paths.append(path)

        if cfg.emit_svg:
            paths.extend(_scatter_files(out, report, cfg.body.build()))
    except OSError as exc:
        raise OutputError(f'Cannot write outputs to {out}: {exc}') from exc

    _LOGGER.info('Wrote %s files to %s', len(paths), out)
    return paths

