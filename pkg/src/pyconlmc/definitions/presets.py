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
Built-in experiment presets, ready to be fed into the configuration loader.
"""
from typing import Any, Dict, List, NamedTuple, Optional


class ExperimentPreset(NamedTuple):
    """
    Holds an experiment preset.

    The ``algorithms`` field maps algorithm names onto the exponent ``e``
    used to derive the penalty parameter from the step size as
    ``lambda = h ** e``.
    """
    name: str
    description: str
    body: Dict[str, Any]
    penalty: Dict[str, Any]
    algorithms: Dict[str, float]
    h: float
    n: int
    N: int
    inside_scale: float

    def as_mapping(self) -> Dict[str, Any]:
        """
        Configuration mapping equivalent to the preset, in the same shape
        a YAML configuration file is parsed into.
        """
        return {
            'body': dict(self.body),
            'penalty': dict(self.penalty),
            'algorithms': {
                name: {'lambda_exponent': exponent}
                for name, exponent in self.algorithms.items()
            },
            'h': self.h,
            'n': self.n,
            'N': self.N,
            'inside_scale': self.inside_scale,
        }


# Exponents shared by all presets, CRLMC takes the one of its W1 schedule
_EXPONENTS = {
    'CLMC': 1 / 4,
    'CRLMC': 3 / 10,
    'CKLMC': 3 / 10,
    'CRKLMC': 3 / 8,
}

_BALL = {'kind': 'ball', 'radius': 0.5, 'center': [0.0, 0.0]}
_SIMPLEX = {
    'kind': 'polytope',
    'normals': [[-1.0, 0.0], [0.0, -1.0], [1.0, 1.0]],
    'offsets': [0.3, 0.3, 0.6],
}

PRESET_DEFINITIONS: List[ExperimentPreset] = [
    # Standard Gaussian truncated to a centered disc
    ExperimentPreset(
        name='ball',
        description='Standard Gaussian on the disc of radius 0.5',
        body=_BALL,
        penalty={'kind': 'euclidean'},
        algorithms=dict(_EXPONENTS),
        h=1e-3,
        n=1000,
        N=500,
        inside_scale=0.1,
    ),
    # Standard Gaussian truncated to a triangle, gauge penalty
    ExperimentPreset(
        name='simplex',
        description='Standard Gaussian on a triangle, gauge penalty',
        body=_SIMPLEX,
        penalty={'kind': 'gauge'},
        algorithms=dict(_EXPONENTS),
        h=1e-3,
        n=1000,
        N=500,
        inside_scale=0.1,
    ),
    # Longer chains and more samples of the same two settings
    ExperimentPreset(
        name='ball-long',
        description='Disc setting with 2000 steps and 1000 samples',
        body=_BALL,
        penalty={'kind': 'euclidean'},
        algorithms=dict(_EXPONENTS),
        h=1e-3,
        n=2000,
        N=1000,
        inside_scale=0.1,
    ),
    ExperimentPreset(
        name='simplex-long',
        description='Triangle setting with 2000 steps and 1000 samples',
        body=_SIMPLEX,
        penalty={'kind': 'gauge'},
        algorithms=dict(_EXPONENTS),
        h=1e-3,
        n=2000,
        N=1000,
        inside_scale=0.1,
    ),
]


def find_preset(name: str) -> Optional[ExperimentPreset]:
    """
    Looks a preset up by its name.

    :param name: Preset name
    :return: The preset, or None if there is no such one
    """
    for preset in PRESET_DEFINITIONS:
        if preset.name == name:
            return preset
    return None
