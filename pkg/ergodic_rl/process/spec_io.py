import logging
from pathlib import Path
from typing import Dict, Any, Tuple, Optional

import yaml
from numpy import asarray, ndarray

from ergodic_rl.compound_types import PathLike
from ergodic_rl.enums.policy_kind import POLICY_KIND
from ergodic_rl.exceptions import SpecParseError, ShapeError
from ergodic_rl.process.mdp_spec import MdpSpec
from ergodic_rl.process.policy_spec import PolicySpec

logger = logging.getLogger(__name__)

MDP_KEYS = ('n_states', 'n_actions', 'kernel', 'reward', 'initial_dist')


def load_yaml_with_lines(text: str) -> Tuple[Any, Dict[str, int]]:
    """
    Parse YAML text and return the data with the 1-based line of each
    top-level key.

    :raises SpecParseError: with the line number of any syntax error.
    """
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as error:
        mark = error.problem_mark or error.context_mark
        line = mark.line + 1 if mark is not None else None
        raise SpecParseError(str(error.problem or error), line=line)
    lines = {}
    if isinstance(node, yaml.MappingNode):
        for key_node, _ in node.value:
            lines[str(key_node.value)] = key_node.start_mark.line + 1
    return data, lines


def _read_text(file_path: PathLike) -> str:

    try:
        return Path(file_path).read_text()
    except OSError as error:
        raise SpecParseError(f'cannot read {file_path}: {error.strerror}')


def _as_array(value, shapes: Tuple[Tuple[int, ...], ...], key: str,
              line: Optional[int]) -> ndarray:
    """
    Return the value as an array of the first matching shape, accepting
    nested lists or a flat row-major list.
    """
    try:
        values = asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise SpecParseError(f'{key} must be numeric', line=line)
    for shape in shapes:
        if values.shape == shape:
            return values
    for shape in shapes:
        size = 1
        for dim in shape:
            size *= dim
        if values.ndim == 1 and values.size == size:
            return values.reshape(shape)
    raise SpecParseError(
        f'{key} has shape {values.shape}, expected one of {list(shapes)}',
        line=line
    )


def parse_mdp_spec(data: Any, lines: Dict[str, int]) -> MdpSpec:
    """
    Build an MdpSpec from a parsed spec document.
    """
    if not isinstance(data, dict):
        raise SpecParseError('MDP spec must be a mapping', line=1)
    for key in MDP_KEYS:
        if key not in data:
            raise SpecParseError(f'missing key {key!r}', line=1)
    n_states, n_actions = data['n_states'], data['n_actions']
    for key in ('n_states', 'n_actions'):
        if not isinstance(data[key], int) or data[key] < 1:
            raise SpecParseError(f'{key} must be a positive integer',
                                 line=lines.get(key))
    full = (n_states, n_actions, n_states)
    kernel = _as_array(data['kernel'], (full,), 'kernel', lines.get('kernel'))
    reward = _as_array(
        data['reward'], (full, (n_states, n_actions), (n_states,)),
        'reward', lines.get('reward')
    )
    kwargs = {}
    for key in ('initial_return', 'ruin_states', 'state_names',
                'action_names'):
        if data.get(key) is not None:
            value = data[key]
            kwargs[key] = tuple(value) if isinstance(value, list) else value
    try:
        return MdpSpec(kernel=kernel, reward=reward,
                       initial_dist=data['initial_dist'], **kwargs)
    except (ValueError, ShapeError, IndexError) as error:
        key = next((k for k in ('initial_dist', 'kernel', 'reward',
                                'ruin_states', 'state_names', 'action_names')
                    if k in str(error) or k.replace('_', ' ') in str(error)),
                   None)
        raise SpecParseError(str(error), line=lines.get(key))


def load_mdp_spec(file_path: PathLike) -> MdpSpec:
    """
    Load an MDP spec file with keys n_states, n_actions, kernel, reward and
    initial_dist, plus optional initial_return, ruin_states, state_names and
    action_names.
    """
    data, lines = load_yaml_with_lines(_read_text(file_path))
    mdp = parse_mdp_spec(data, lines)
    logger.debug(f'loaded {mdp.n_states}-state MDP from {file_path}')
    return mdp


def parse_policy_spec(data: Any, lines: Dict[str, int]) -> PolicySpec:

    if not isinstance(data, dict) or 'kind' not in data:
        raise SpecParseError('policy spec must be a mapping with a kind',
                             line=1)
    try:
        kind = POLICY_KIND.get_policy_kind(data['kind'])
        return PolicySpec(kind=kind, table=data.get('table'),
                          fraction=data.get('fraction'))
    except (ValueError, ShapeError) as error:
        key = 'table' if 'table' in data else 'kind'
        raise SpecParseError(str(error), line=lines.get(key))


def load_policy_spec(file_path: PathLike) -> PolicySpec:
    """
    Load a policy file with key kind and either table or fraction.
    """
    data, lines = load_yaml_with_lines(_read_text(file_path))
    return parse_policy_spec(data, lines)


def mdp_to_dict(mdp: MdpSpec) -> Dict[str, Any]:

    data = {
        'n_states': mdp.n_states,
        'n_actions': mdp.n_actions,
        'kernel': mdp.kernel.tolist(),
        'reward': mdp.reward.tolist(),
        'initial_dist': mdp.initial_dist.tolist(),
        'initial_return': mdp.initial_return,
    }
    if mdp.ruin_states:
        data['ruin_states'] = list(mdp.ruin_states)
    if mdp.state_names is not None:
        data['state_names'] = list(mdp.state_names)
    if mdp.action_names is not None:
        data['action_names'] = list(mdp.action_names)
    return data


def dump_mdp_spec(mdp: MdpSpec, file_path: PathLike):

    with open(file_path, 'w') as f:
        yaml.safe_dump(mdp_to_dict(mdp), f, sort_keys=False)
