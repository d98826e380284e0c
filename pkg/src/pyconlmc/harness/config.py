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
Run configuration: YAML (or JSON) loading and validation.
"""
from __future__ import annotations
from dataclasses import dataclass, field
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Union

import numpy as np
import yaml

from ..const import (
    Algorithm, PenaltyKind, DEFAULT_STEP, DEFAULT_INSIDE_SCALE,
    DEFAULT_ITERATIONS, DEFAULT_SAMPLES, DEFAULT_OUTPUTS,
)
from ..exceptions import (
    ConLMCError, ConfigParseError, ConfigValidationError, DomainError,
)
from ..definitions import PRESET_DEFINITIONS, find_preset
from ..geometry import ConvexBody, Penalty
from ..potential import Potential

_LOGGER = logging.getLogger(__name__)

_TOP_KEYS = {
    'body', 'potential', 'penalty', 'algorithms', 'h', 'inside_scale', 'n',
    'N', 'seeds', 'outputs', 'emit_svg', 'record_timing', 'workers',
}
_BODY_KEYS = {
    'ball': {'kind', 'radius', 'center'},
    'box': {'kind', 'lower', 'upper'},
    'polytope': {'kind', 'normals', 'offsets'},
}
_POTENTIAL_KEYS = {'kind', 'mean', 'precision'}
_PENALTY_KEYS = {'kind', 'q'}
_LAMBDA_KEYS = {'lambda', 'lambda_exponent'}
# Exponents of the step size giving the default penalty parameters
DEFAULT_LAMBDA_EXPONENTS = {
    Algorithm.CLMC: 1 / 4,
    Algorithm.CKLMC: 3 / 10,
    Algorithm.CRLMC: 3 / 10,
    Algorithm.CRKLMC: 3 / 8,
}


@dataclass(eq=False)
class BodySpec:
    """
    Describes the constraint set.
    """
    kind: str
    params: Dict[str, Any] = field(default_factory=dict)

    def build(self) -> ConvexBody:
        """
        Constructs the body.

        :raises InvalidBodyError: The parameters do not describe a valid body
        """
        if self.kind == 'ball':
            center = self.params.get('center')
            return ConvexBody.ball(
                float(self.params['radius']), center,
                dim=2 if center is None else len(center)
            )
        if self.kind == 'box':
            return ConvexBody.box(self.params['lower'], self.params['upper'])
        return ConvexBody.polytope(
            self.params['normals'], self.params['offsets']
        )

    def _asdict(self) -> Dict[str, Any]:
        return {'kind': self.kind, **self.params}


@dataclass(eq=False)
class PotentialSpec:
    """
    Describes the Gaussian potential, standard if neither the mean nor the
    precision is given.
    """
    mean: Optional[List[float]] = None
    precision: Optional[List[List[float]]] = None

    def build(self, dim: int) -> Potential:
        """
        Constructs the potential in the given dimension.
        """
        mean = np.zeros(dim) if self.mean is None else self.mean
        precision = np.eye(dim) if self.precision is None else self.precision
        return Potential.quadratic(mean, precision)

    def _asdict(self) -> Dict[str, Any]:
        return {
            'kind': 'gaussian', 'mean': self.mean, 'precision': self.precision
        }


@dataclass(eq=False)
class PenaltySpec:
    """
    Describes the penalty, the parameter lambda is resolved per algorithm.
    """
    kind: PenaltyKind = PenaltyKind.EUCLIDEAN
    q: Optional[List[List[float]]] = None

    def build(self, body: ConvexBody, lam: float = 1.0) -> Penalty:
        """
        Constructs the penalty for the body.
        """
        if self.kind == PenaltyKind.BREGMAN:
            if self.q is None:
                raise DomainError('Bregman penalty requires a metric q')
            return Penalty.bregman(self.q, lam)
        if self.kind == PenaltyKind.GAUGE:
            return Penalty.gauge(body, lam)
        return Penalty.euclidean(lam)

    def _asdict(self) -> Dict[str, Any]:
        return {'kind': self.kind.name.lower(), 'q': self.q}


@dataclass(frozen=True)
class LambdaRule:
    """
    Penalty parameter, either explicit or as a power of the step size.
    """
    value: Optional[float] = None
    exponent: Optional[float] = None

    def resolve(self, h: float) -> float:
        """
        Penalty parameter for the step size `h`.
        """
        if self.value is not None:
            return self.value
        return float(h ** (self.exponent or 0.0))

    def _asdict(self) -> Dict[str, Any]:
        if self.value is not None:
            return {'lambda': self.value}
        return {'lambda_exponent': self.exponent}


def default_algorithms() -> Dict[Algorithm, LambdaRule]:
    """
    All four algorithms with their default lambda rules.
    """
    return {
        algo: LambdaRule(exponent=exponent)
        for algo, exponent in DEFAULT_LAMBDA_EXPONENTS.items()
    }


@dataclass(eq=False)
class RunConfig:  # pylint: disable=too-many-instance-attributes
    """
    Validated experiment configuration.
    """
    body: BodySpec
    potential: PotentialSpec = field(default_factory=PotentialSpec)
    penalty: PenaltySpec = field(default_factory=PenaltySpec)
    algorithms: Dict[Algorithm, LambdaRule] = field(
        default_factory=default_algorithms
    )
    h: float = DEFAULT_STEP
    inside_scale: float = DEFAULT_INSIDE_SCALE
    n: int = DEFAULT_ITERATIONS
    N: int = DEFAULT_SAMPLES  # pylint: disable=invalid-name
    seeds: List[int] = field(default_factory=lambda: [0])
    outputs: Path = Path(DEFAULT_OUTPUTS)
    emit_svg: bool = False
    record_timing: bool = False
    workers: int = 1

    @property
    def lambdas(self) -> Dict[Algorithm, float]:
        """
        Resolved penalty parameter per algorithm.
        """
        return {
            algo: rule.resolve(self.h)
            for algo, rule in self.algorithms.items()
        }

    def _asdict(self) -> Dict[str, Any]:
        return {
            'body': self.body._asdict(),
            'potential': self.potential._asdict(),
            'penalty': self.penalty._asdict(),
            'algorithms': {
                algo.name: rule._asdict()
                for algo, rule in self.algorithms.items()
            },
            'h': self.h,
            'inside_scale': self.inside_scale,
            'n': self.n,
            'N': self.N,
            'seeds': list(self.seeds),
            'outputs': str(self.outputs),
            'emit_svg': self.emit_svg,
            'record_timing': self.record_timing,
            'workers': self.workers,
        }


class _Violations:
    """
    Collects configuration violations, so that all of them are reported at
    once.
    """
    def __init__(self) -> None:
        self.items: List[str] = []

    def add(self, name: str, message: str) -> None:
        """
        Records a violation of the named field.
        """
        self.items.append(f'{name}: {message}')

    def unknown(
        self, data: Mapping[str, Any], allowed: Any, prefix: str = ''
    ) -> None:
        """
        Records every key not in the allowed set.
        """
        for key in data:
            if key not in allowed:
                self.add(f'{prefix}{key}', 'unknown key')

    def number(
        self, data: Mapping[str, Any], name: str, default: float,
        check: Callable[[float], bool] = lambda v: v > 0,
        requirement: str = 'must be positive',
        label: Optional[str] = None,
    ) -> float:
        """
        Fetches a numeric field.
        """
        label = label or name
        value = data.get(name, default)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.add(label, f'must be a number, got {value!r}')
            return default
        if not check(float(value)):
            self.add(label, f'{requirement}, got {value!r}')
            return default
        return float(value)

    def integer(
        self, data: Mapping[str, Any], name: str, default: int,
        minimum: int = 1
    ) -> int:
        """
        Fetches an integer field with a lower bound.
        """
        value = data.get(name, default)
        if isinstance(value, bool) or not isinstance(value, int):
            self.add(name, f'must be an integer, got {value!r}')
            return default
        if value < minimum:
            self.add(name, f'must be at least {minimum}, got {value!r}')
            return default
        return value

    def flag(self, data: Mapping[str, Any], name: str) -> bool:
        """
        Fetches a boolean field, false by default.
        """
        value = data.get(name, False)
        if not isinstance(value, bool):
            self.add(name, f'must be a boolean, got {value!r}')
            return False
        return value

    def mapping(self, data: Any, name: str) -> Dict[str, Any]:
        """
        Checks the section is a mapping.
        """
        if not isinstance(data, dict):
            self.add(name, f'must be a mapping, got {data!r}')
            return {}
        return data


def _parse_body(data: Any, errors: _Violations) -> Optional[BodySpec]:
    section = errors.mapping(data, 'body')
    if not section:
        return None
    kind = section.get('kind')
    if kind not in _BODY_KEYS:
        errors.add('body.kind', f'must be one of {sorted(_BODY_KEYS)},'
                   f' got {kind!r}')
        return None
    errors.unknown(section, _BODY_KEYS[kind], 'body.')
    missing = sorted(_BODY_KEYS[kind] - {'kind', 'center'} - set(section))
    for key in missing:
        errors.add(f'body.{key}', 'is required')
    if missing:
        return None
    params = {key: value for key, value in section.items() if key != 'kind'}
    return BodySpec(kind=kind, params=params)


def _parse_potential(data: Any, errors: _Violations) -> PotentialSpec:
    section = errors.mapping(data, 'potential')
    errors.unknown(section, _POTENTIAL_KEYS, 'potential.')
    kind = section.get('kind', 'gaussian')
    if kind != 'gaussian':
        errors.add('potential.kind', f'must be gaussian, got {kind!r}')
    return PotentialSpec(
        mean=section.get('mean'), precision=section.get('precision')
    )


def _parse_penalty(data: Any, errors: _Violations) -> PenaltySpec:
    section = errors.mapping(data, 'penalty')
    errors.unknown(section, _PENALTY_KEYS, 'penalty.')
    name = str(section.get('kind', 'euclidean'))
    try:
        kind = PenaltyKind[name.upper()]
    except KeyError:
        errors.add('penalty.kind', f'unknown penalty {name!r}')
        return PenaltySpec()
    if kind == PenaltyKind.BREGMAN and section.get('q') is None:
        errors.add('penalty.q', 'is required for the bregman penalty')
    return PenaltySpec(kind=kind, q=section.get('q'))


def _parse_algorithms(
    data: Any, errors: _Violations
) -> Dict[Algorithm, LambdaRule]:
    section = errors.mapping(data, 'algorithms')
    rules: Dict[Algorithm, LambdaRule] = {}
    for name, rule in section.items():
        prefix = f'algorithms.{name}'
        try:
            algo = Algorithm[str(name).upper()]
        except KeyError:
            errors.add(prefix, 'unknown algorithm')
            continue
        body = errors.mapping(rule, prefix)
        errors.unknown(body, _LAMBDA_KEYS, f'{prefix}.')
        if len(set(body) & _LAMBDA_KEYS) != 1:
            errors.add(prefix, 'exactly one of lambda, lambda_exponent'
                       ' is required')
            continue
        if 'lambda' in body:
            rules[algo] = LambdaRule(value=errors.number(
                body, 'lambda', 1.0, label=f'{prefix}.lambda'
            ))
        else:
            rules[algo] = LambdaRule(exponent=errors.number(
                body, 'lambda_exponent', 1.0,
                label=f'{prefix}.lambda_exponent'
            ))
    if not rules and not errors.items:
        errors.add('algorithms', 'at least one algorithm is required')
    # Enum order, independent of the order in the document
    return dict(sorted(rules.items()))


def _parse_seeds(data: Any, errors: _Violations) -> List[int]:
    if not isinstance(data, list) or not data:
        errors.add('seeds', f'must be a non-empty list, got {data!r}')
        return [0]
    if not all(
        isinstance(seed, int) and not isinstance(seed, bool) and seed >= 0
        for seed in data
    ):
        errors.add('seeds', f'must be non-negative integers, got {data!r}')
        return [0]
    if len(set(data)) != len(data):
        errors.add('seeds', f'must be unique, got {data!r}')
    return list(data)


def parse_config(data: Any) -> RunConfig:
    """
    Validates the parsed configuration document.

    :param data: Mapping as produced by the YAML parser
    :return: The configuration with defaults filled
    :raises ConfigValidationError: Listing every violation found
    """
    errors = _Violations()
    doc = errors.mapping(data, 'configuration')
    errors.unknown(doc, _TOP_KEYS)
    if 'body' not in doc and isinstance(data, dict):
        errors.add('body', 'is required')

    body = _parse_body(doc['body'], errors) if 'body' in doc else None
    potential = _parse_potential(doc.get('potential', {}), errors)
    penalty = _parse_penalty(doc.get('penalty', {}), errors)
    algorithms: Dict[Algorithm, LambdaRule] = (
        _parse_algorithms(doc['algorithms'], errors)
        if 'algorithms' in doc
        else default_algorithms()
    )
    outputs = doc.get('outputs', DEFAULT_OUTPUTS)
    if not isinstance(outputs, str) or not outputs:
        errors.add('outputs', f'must be a directory name, got {outputs!r}')
        outputs = DEFAULT_OUTPUTS

    cfg = RunConfig(
        body=body or BodySpec('ball', {'radius': 1.0}),
        potential=potential,
        penalty=penalty,
        algorithms=algorithms,
        h=errors.number(doc, 'h', DEFAULT_STEP),
        inside_scale=errors.number(doc, 'inside_scale', DEFAULT_INSIDE_SCALE),
        n=errors.integer(doc, 'n', DEFAULT_ITERATIONS),
        N=errors.integer(doc, 'N', DEFAULT_SAMPLES),
        seeds=_parse_seeds(doc.get('seeds', [0]), errors),
        outputs=Path(outputs),
        emit_svg=errors.flag(doc, 'emit_svg'),
        record_timing=errors.flag(doc, 'record_timing'),
        workers=errors.integer(doc, 'workers', 1),
    )
    if body is not None:
        _check_semantics(cfg, errors)
    if errors.items:
        raise ConfigValidationError(errors.items)
    return cfg


def _check_semantics(cfg: RunConfig, errors: _Violations) -> None:
    """
    Builds the objects the configuration describes, recording whatever they
    reject.
    """
    try:
        body = cfg.body.build()
    except (ConLMCError, TypeError, ValueError) as exc:
        errors.add('body', str(exc))
        return
    try:
        potential = cfg.potential.build(body.dim)
        if potential.dim != body.dim:
            errors.add('potential', f'dimension {potential.dim} does not'
                       f' match the body dimension {body.dim}')
    except (ConLMCError, TypeError, ValueError) as exc:
        errors.add('potential', str(exc))
    if cfg.penalty.kind == PenaltyKind.BREGMAN and cfg.penalty.q is not None:
        try:
            penalty = cfg.penalty.build(body)
            if penalty.q is not None and penalty.q.shape[0] != body.dim:
                errors.add('penalty.q', 'does not match the body dimension')
        except (ConLMCError, TypeError, ValueError) as exc:
            errors.add('penalty.q', str(exc))
    for algo, lam in cfg.lambdas.items():
        if not np.isfinite(lam) or lam <= 0:
            errors.add(f'algorithms.{algo.name}',
                       f'lambda must resolve to a positive value, got {lam}')


def load_config(path: Union[str, Path]) -> RunConfig:
    """
    Loads the run configuration from a YAML or JSON file.

    :param path: Path to the file
    :raises ConfigParseError: The file could not be read or parsed
    :raises ConfigValidationError: The document violates the constraints
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise ConfigParseError(f'Cannot read {path}: {exc}') from exc
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise ConfigParseError(
            f'Malformed configuration {path}: {exc.problem}',
            None if mark is None else mark.line + 1,
            None if mark is None else mark.column + 1,
        ) from exc
    except yaml.YAMLError as exc:
        raise ConfigParseError(
            f'Malformed configuration {path}: {exc}'
        ) from exc
    _LOGGER.debug('Loaded configuration from %s', path)
    return parse_config(data if data is not None else {})


def preset_config(name: str) -> RunConfig:
    """
    Configuration of a built-in experiment preset.

    :param name: Preset name
    :raises ConfigValidationError: There is no such preset
    """
    preset = find_preset(name)
    if preset is None:
        known = ', '.join(p.name for p in PRESET_DEFINITIONS)
        raise ConfigValidationError(
            [f'preset: unknown preset {name!r}, expected one of {known}']
        )
    return parse_config(preset.as_mapping())


def override_config(
    cfg: RunConfig, overrides: Mapping[str, Any]
) -> RunConfig:
    """
    Replaces top-level fields of a configuration and validates the result as
    a whole, the way a document holding them would be.

    :param cfg: Configuration to start from
    :param overrides: Fields in the form a configuration document holds them
    :raises ConfigValidationError: The merged configuration is invalid
    """
    data = cfg._asdict()
    data.update(overrides)
    return parse_config(data)
