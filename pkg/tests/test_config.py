'''
Tests for the run configuration loader
'''
from pathlib import Path
from typing import Any, Dict
import pytest

from pyconlmc.const import Algorithm, PenaltyKind
from pyconlmc.exceptions import ConfigParseError, ConfigValidationError
from pyconlmc.harness import load_config, parse_config, preset_config
from pyconlmc.definitions import PRESET_DEFINITIONS, find_preset


def write(tmp_path: Path, text: str, name: str = 'run.yaml') -> Path:
    '''
    Writes the configuration text into a temporary file.
    '''
    path = tmp_path / name
    path.write_text(text, encoding='utf-8')
    return path


def test_minimal_file(tmp_path: Path) -> None:
    '''
    Verifies defaults are filled for a file naming the body only.
    '''
    cfg = load_config(write(tmp_path, 'body: {kind: ball, radius: 0.5}\n'))
    assert cfg.body.kind == 'ball'
    assert cfg.body.build().inner_radius == 0.5
    assert (cfg.h, cfg.n, cfg.N, cfg.inside_scale) == (1e-3, 1000, 500, 0.1)
    assert cfg.seeds == [0]
    assert cfg.outputs == Path('results')
    assert cfg.penalty.kind == PenaltyKind.EUCLIDEAN
    assert list(cfg.algorithms) == list(Algorithm)
    assert not cfg.emit_svg and not cfg.record_timing


def test_full_file(tmp_path: Path) -> None:
    '''
    Verifies every section of the configuration is honoured.
    '''
    cfg = load_config(write(tmp_path, '''
body:
  kind: box
  lower: [-1, -1]
  upper: [1, 2]
potential:
  kind: gaussian
  mean: [0.5, 0.0]
  precision: [[2, 0], [0, 1]]
penalty:
  kind: bregman
  q: [[1, 0], [0, 4]]
algorithms:
  CRKLMC: {lambda: 0.05}
  clmc: {lambda_exponent: 0.5}
h: 0.01
n: 10
N: 20
seeds: [3, 1]
outputs: out
emit_svg: true
workers: 2
'''))
    assert cfg.penalty.kind == PenaltyKind.BREGMAN
    assert list(cfg.algorithms) == [Algorithm.CLMC, Algorithm.CRKLMC]
    assert cfg.lambdas == {
        Algorithm.CLMC: pytest.approx(0.1),
        Algorithm.CRKLMC: 0.05,
    }
    assert cfg.potential.build(2).minimizer == pytest.approx([0.5, 0.0])
    assert cfg.seeds == [3, 1]
    assert cfg.outputs == Path('out')
    assert cfg.emit_svg and cfg.workers == 2


def test_json_file(tmp_path: Path) -> None:
    '''
    Verifies JSON documents are accepted.
    '''
    cfg = load_config(write(
        tmp_path,
        '{"body": {"kind": "polytope", "normals": [[-1, 0], [0, -1],'
        ' [1, 1]], "offsets": [0.3, 0.3, 0.6]}, "n": 5}',
        name='run.json',
    ))
    assert cfg.body.build().dim == 2
    assert cfg.n == 5


def test_negative_step(tmp_path: Path) -> None:
    '''
    Verifies an invalid field is named in the error.
    '''
    with pytest.raises(ConfigValidationError) as exc_info:
        load_config(write(tmp_path, 'body: {kind: ball, radius: 1}\nh: -1\n'))
    assert len(exc_info.value.violations) == 1
    assert exc_info.value.violations[0].startswith('h:')


def test_all_violations_listed() -> None:
    '''
    Verifies every violation of a document is reported at once.
    '''
    with pytest.raises(ConfigValidationError) as exc_info:
        parse_config({
            'body': {'kind': 'ball', 'radius': 1.0, 'colour': 'red'},
            'penalty': {'kind': 'bregman'},
            'algorithms': {
                'CLMC': {'lambda': 0.1, 'lambda_exponent': 0.2},
                'FOO': {'lambda': 0.1},
            },
            'n': 0,
            'N': 1.5,
            'seeds': [1, 1],
            'emit_svg': 'yes',
            'extra': True,
        })
    fields = {v.split(':')[0] for v in exc_info.value.violations}
    assert fields == {
        'extra', 'body.colour', 'penalty.q', 'algorithms.CLMC',
        'algorithms.FOO', 'n', 'N', 'seeds', 'emit_svg',
    }


@pytest.mark.parametrize('data,field', [
    ({}, 'body'),
    ({'body': {'kind': 'ellipse'}}, 'body.kind'),
    ({'body': {'kind': 'ball'}}, 'body.radius'),
    ({'body': {'kind': 'ball', 'radius': -1.0}}, 'body'),
    ({'body': {'kind': 'ball', 'radius': 1.0},
      'potential': {'precision': [[1, 0], [0, -1]]}}, 'potential'),
    ({'body': {'kind': 'ball', 'radius': 1.0},
      'penalty': {'kind': 'bregman', 'q': [[1.0]]}}, 'penalty.q'),
    ({'body': {'kind': 'ball', 'radius': 1.0}, 'algorithms': {}},
     'algorithms'),
    ({'body': {'kind': 'ball', 'radius': 1.0}, 'seeds': []}, 'seeds'),
    ({'body': {'kind': 'ball', 'radius': 1.0}, 'penalty': {'kind': 'l1'}},
     'penalty.kind'),
])
def test_invalid_documents(data: Dict[str, Any], field: str) -> None:
    '''
    Verifies invalid documents name the offending field.
    '''
    with pytest.raises(ConfigValidationError) as exc_info:
        parse_config(data)
    assert field in {v.split(':')[0] for v in exc_info.value.violations}


def test_parse_error_location(tmp_path: Path) -> None:
    '''
    Verifies malformed YAML reports the location of the problem.
    '''
    with pytest.raises(ConfigParseError) as exc_info:
        load_config(write(tmp_path, 'h: 0.1\n  n: 5\n'))
    assert exc_info.value.line == 2
    assert exc_info.value.column is not None
    assert 'line 2' in str(exc_info.value)


def test_unreadable_file(tmp_path: Path) -> None:
    '''
    Verifies a missing file is reported as parse error.
    '''
    with pytest.raises(ConfigParseError):
        load_config(tmp_path / 'missing.yaml')


def test_presets() -> None:
    '''
    Verifies the built-in presets and their derived penalty parameters.
    '''
    assert [p.name for p in PRESET_DEFINITIONS] == [
        'ball', 'simplex', 'ball-long', 'simplex-long',
    ]
    assert find_preset('nope') is None

    cfg = preset_config('ball')
    assert (cfg.n, cfg.N) == (1000, 500)
    assert cfg.lambdas == {
        Algorithm.CLMC: pytest.approx(0.1778, abs=1e-4),
        Algorithm.CKLMC: pytest.approx(0.1259, abs=1e-4),
        Algorithm.CRLMC: pytest.approx(0.1259, abs=1e-4),
        Algorithm.CRKLMC: pytest.approx(0.0750, abs=1e-4),
    }
    long_run = preset_config('simplex-long')
    assert (long_run.n, long_run.N) == (2000, 1000)
    assert long_run.lambdas == preset_config('simplex').lambdas
    assert preset_config('simplex').penalty.kind == PenaltyKind.GAUGE
    with pytest.raises(ConfigValidationError):
        preset_config('nope')


def test_config_as_dict() -> None:
    '''
    Verifies the dictionary form of a configuration parses back to itself.
    '''
    cfg = preset_config('simplex')
    assert parse_config(cfg._asdict())._asdict() == cfg._asdict()


def test_literal_lambda_rules() -> None:
    '''
    Verifies the tuning rules of the published disc experiment resolve to
    their penalty parameters when requested explicitly.
    '''
    cfg = parse_config({
        'body': {'kind': 'ball', 'radius': 0.5},
        'algorithms': {
            'CLMC': {'lambda_exponent': 1 / 4},
            'CRLMC': {'lambda_exponent': 1 / 4},
            'CKLMC': {'lambda_exponent': 3 / 10},
            'CRKLMC': {'lambda_exponent': 3 / 8},
        },
        'h': 1e-3,
    })
    assert [cfg.lambdas[algo] for algo in Algorithm] == pytest.approx(
        [0.1778, 0.1259, 0.1778, 0.0750], abs=1e-4
    )
