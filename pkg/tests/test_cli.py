'''
Tests for the command line interface
'''
import csv
from pathlib import Path
from typing import List
import pytest

from pyconlmc.cli import EXIT_CONFIG, EXIT_OK, main

SMALL_RUN = '''
body: {kind: ball, radius: 0.5}
n: 10
N: 20
'''


def test_schedule(capsys: pytest.CaptureFixture[str]) -> None:
    '''
    Verifies the schedule command prints the selected parameters.
    '''
    code = main([
        'schedule', '--algo', 'CLMC', '--metric', 'W1', '--epsilon', '0.5',
        '--dim', '2', '--m', '1', '--M', '1', '--M0', '1',
    ])
    assert code == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [
        'lambda = 0.5', 'h = 0.0625', 'n = 58',
    ]


def test_schedule_kinetic(capsys: pytest.CaptureFixture[str]) -> None:
    '''
    Verifies kinetic schedules print the friction as well.
    '''
    main([
        'schedule', '--algo', 'CKLMC', '--metric', 'W2', '--epsilon', '0.1',
        '--dim', '3', '--m', '1', '--M', '2', '--M0', '1',
    ])
    keys = [
        line.split(' = ')[0] for line in capsys.readouterr().out.splitlines()
    ]
    assert keys == ['lambda', 'h', 'n', 'gamma']


def test_invalid_schedule(caplog: pytest.LogCaptureFixture) -> None:
    '''
    Verifies out-of-domain schedule requests fail with the validation code.
    '''
    assert main([
        'schedule', '--algo', 'CLMC', '--metric', 'W2', '--epsilon', '2',
        '--dim', '2', '--m', '1', '--M', '1', '--M0', '1',
    ]) == EXIT_CONFIG
    assert 'epsilon must lie in (0, 1)' in caplog.text


def test_bad_config(tmp_path: Path) -> None:
    '''
    Verifies invalid configurations exit with the configuration code.
    '''
    path = tmp_path / 'run.yaml'
    path.write_text('body: {kind: ball, radius: 0.5}\nh: -1\n',
                    encoding='utf-8')
    assert main(['sample', '--config', str(path)]) == EXIT_CONFIG
    assert main(
        ['sample', '--config', str(tmp_path / 'missing.yaml')]
    ) == EXIT_CONFIG


@pytest.mark.parametrize('option', [
    ['--seed', '-1'],
    ['--seed', '1', '1'],
    ['--workers', '0'],
    ['--n', '-5'],
    ['--N', '0'],
])
def test_invalid_overrides(
    option: List[str], tmp_path: Path, caplog: pytest.LogCaptureFixture
) -> None:
    '''
    Verifies command line overrides are validated like the configuration.
    '''
    assert main(
        ['sample', '--preset', 'ball', '--out', str(tmp_path)] + option
    ) == EXIT_CONFIG
    assert 'Invalid configuration' in caplog.text
    assert not any(tmp_path.iterdir())


def test_missing_source() -> None:
    '''
    Verifies running without a configuration source is a usage error.
    '''
    with pytest.raises(SystemExit):
        main(['sample'])


def test_sample(tmp_path: Path) -> None:
    '''
    Verifies the sample command writes results where requested.
    '''
    path = tmp_path / 'run.yaml'
    path.write_text(SMALL_RUN, encoding='utf-8')
    out = tmp_path / 'out'
    assert main([
        'sample', '--config', str(path), '--out', str(out), '--seed', '1',
        '2', '--svg',
    ]) == EXIT_OK
    with (out / 'metrics.csv').open(encoding='utf-8') as handle:
        rows = list(csv.DictReader(handle))
    assert len(rows) == 8
    assert {row['seed'] for row in rows} == {'1', '2'}
    assert (out / 'scatter_CRKLMC.svg').exists()


def test_compare(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    '''
    Verifies the compare command records wall times and prints medians.
    '''
    path = tmp_path / 'run.yaml'
    path.write_text(SMALL_RUN, encoding='utf-8')
    out = tmp_path / 'out'
    assert main(['compare', '--config', str(path), '--out', str(out)]) == 0

    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == [
        'algo', 'median_w1', 'median_w2', 'median_wall_ms'
    ]
    assert [line.split()[0] for line in lines[1:]] == [
        'CLMC', 'CKLMC', 'CRLMC', 'CRKLMC'
    ]
    with (out / 'metrics.csv').open(encoding='utf-8') as handle:
        assert all(float(row['wall_ms']) > 0 for row in csv.DictReader(handle))


def test_size_overrides(tmp_path: Path) -> None:
    '''
    Verifies the step and chain counts can be set from the command line.
    '''
    out = tmp_path / 'out'
    assert main([
        'sample', '--preset', 'ball-long', '--out', str(out), '--n', '5',
        '--N', '12',
    ]) == EXIT_OK
    samples = (out / 'samples_CLMC_0.csv').read_text(encoding='utf-8')
    with (out / 'metrics.csv').open(encoding='utf-8') as handle:
        rows = list(csv.DictReader(handle))
    assert {(row['n'], row['N']) for row in rows} == {('5', '12')}
    assert len(samples.splitlines()) == 13
