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
Performs runtime configuration and exposes custom fixtures for Pytest.
"""
from __future__ import annotations
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict
import numpy as np
import pytest

from pyconlmc.geometry import ConvexBody
from pyconlmc.harness import RunConfig, preset_config
from pyconlmc.potential import Potential

SIMPLEX_NORMALS = [[-1.0, 0.0], [0.0, -1.0], [1.0, 1.0]]
SIMPLEX_OFFSETS = [0.3, 0.3, 0.6]


def pytest_configure(config: pytest.Config) -> None:
    """
    Configures `pytest`.
    """
    config.addinivalue_line("markers", "experiment")
    config.addinivalue_line("markers", "slow")


@pytest.fixture
def rng() -> np.random.Generator:
    """
    Seeded random generator.
    """
    return np.random.default_rng(20240917)


@pytest.fixture
def ball() -> ConvexBody:
    """
    Disc of radius 0.5 about the origin.
    """
    return ConvexBody.ball(0.5)


@pytest.fixture
def simplex() -> ConvexBody:
    """
    Triangle `x1, x2 >= -0.3, x1 + x2 <= 0.6`.
    """
    return ConvexBody.polytope(SIMPLEX_NORMALS, SIMPLEX_OFFSETS)


@pytest.fixture
def gaussian() -> Potential:
    """
    Standard planar Gaussian potential.
    """
    return Potential.standard_gaussian(2)


@pytest.fixture
def experiment_config(
    request: pytest.FixtureRequest, tmp_path: Path
) -> RunConfig:
    """
    Small-scale configuration of a built-in preset writing into a temporary
    directory.

    The fixture should be customized with the `experiment` mark, its
    `preset` keyword names the preset (`ball` by default) while the
    remaining keywords override configuration fields.
    """
    marker = getattr(
        request.node
        .get_closest_marker('experiment'),
        'kwargs', {}
    )
    overrides = dict(marker)
    cfg = preset_config(overrides.pop('preset', 'ball'))
    defaults: Dict[str, Any] = {
        'n': 20, 'N': 30, 'seeds': [0], 'outputs': tmp_path,
    }
    defaults.update(overrides)
    return replace(cfg, **defaults)
