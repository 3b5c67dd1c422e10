from copy import deepcopy
from typing import Dict, Any


def drop_none_values(items: dict) -> dict:
    """
    Return a copy of the dictionary without any keys or values where the value
    is None.
    """
    return {
        key: value for key, value in items.items()
        if value is not None
    }


def set_dotted(items: Dict[str, Any], path: str, value: Any) -> Dict[str, Any]:
    """
    Return a deep copy of a nested dict with the value at a dotted path
    replaced, creating intermediate dicts where needed.

    :param items: Nested dict e.g. a parsed experiment config.
    :param path: Dotted key path e.g. 'environment.params.p_loss'.
    :param value: The new value.
    """
    items = deepcopy(items)
    keys = path.split('.')
    node = items
    for key in keys[:-1]:
        if node.get(key) is None:
            node[key] = {}
        node = node[key]
    node[keys[-1]] = value
    return items
