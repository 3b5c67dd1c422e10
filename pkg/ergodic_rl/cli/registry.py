import logging
from typing import Callable, Dict, Generic, List, TypeVar

from ergodic_rl.compound_types import ConfigDict
from ergodic_rl.environments.bandit import BanditParams, MultiplicativeBandit
from ergodic_rl.environments.coin_toss import CoinTossParams, \
    CoinTossProcess, AdditiveCoinToss
from ergodic_rl.environments.delivery import DeliveryParams, delivery_mdp, \
    town_city_delivery_mdp
from ergodic_rl.exceptions import ConfigError, UnknownComponent, \
    SpecParseError
from ergodic_rl.process.spec_io import load_mdp_spec
from ergodic_rl.settings import ADDITIVE_INITIAL_RETURN

logger = logging.getLogger(__name__)

T = TypeVar('T')


class Registry(Generic[T]):
    """
    Named components of one kind, registered with a decorator.
    """
    def __init__(self, kind: str):

        self.kind: str = kind
        self._items: Dict[str, T] = {}

    def register(self, name: str) -> Callable[[T], T]:

        def decorator(item: T) -> T:
            if name in self._items:
                raise ValueError(f'{self.kind} {name!r} already registered')
            self._items[name] = item
            return item

        return decorator

    def get(self, name: str) -> T:
        """
        Return the component registered under name.

        :raises UnknownComponent: listing the registered names.
        """
        try:
            return self._items[name]
        except KeyError:
            raise UnknownComponent(self.kind, name, self._items)

    @property
    def names(self) -> List[str]:

        return sorted(self._items)

    def __contains__(self, name: str) -> bool:

        return name in self._items


ENVIRONMENTS: Registry[Callable[[ConfigDict], object]] = Registry(
    'environment'
)


def build_environment(name: str, params: ConfigDict):
    """
    Build a registered environment from its keyword parameters.

    :raises UnknownComponent: for an unregistered name.
    :raises ConfigError: for parameters the environment rejects.
    """
    factory = ENVIRONMENTS.get(name)
    try:
        return factory(dict(params))
    except ConfigError:
        raise
    except (TypeError, ValueError) as error:
        raise ConfigError(f'invalid params for environment {name!r}: {error}')


@ENVIRONMENTS.register('coin_toss')
def _coin_toss(params: ConfigDict) -> CoinTossProcess:

    return CoinTossProcess(CoinTossParams(**params))


@ENVIRONMENTS.register('additive_coin_toss')
def _additive_coin_toss(params: ConfigDict) -> AdditiveCoinToss:

    stake = params.pop('stake', None)
    params.setdefault('initial_return', ADDITIVE_INITIAL_RETURN)
    process_params = CoinTossParams(**params)
    if stake is None:
        return AdditiveCoinToss(process_params)
    return AdditiveCoinToss(process_params, stake=stake)


@ENVIRONMENTS.register('multiplicative_bandit')
def _multiplicative_bandit(params: ConfigDict) -> MultiplicativeBandit:

    initial_return = params.pop('initial_return', 1.0)
    return MultiplicativeBandit(BanditParams(**params),
                                initial_return=initial_return)


@ENVIRONMENTS.register('delivery')
def _delivery(params: ConfigDict):

    return delivery_mdp(DeliveryParams(**params))


@ENVIRONMENTS.register('town_city_delivery')
def _town_city_delivery(params: ConfigDict):

    return town_city_delivery_mdp(DeliveryParams(**params))


@ENVIRONMENTS.register('mdp_file')
def _mdp_file(params: ConfigDict):

    if set(params) != {'path'}:
        raise ConfigError('mdp_file takes a single param: path')
    try:
        return load_mdp_spec(params['path'])
    except SpecParseError as error:
        raise ConfigError(f'{params["path"]}: {error}')
