from typing_extensions import Literal   # can't use typing.Literal for Python < 3.8

BASELINE = Literal['none', 'mean']
X_SCALE = Literal['auto', 'linear', 'log']
EVALUATION_MODE = Literal['fixed', 'recursive']
WEALTH_OBJECTIVE = Literal['growth', 'expected']
BANDIT_ACTION = Literal['safe', 'risk']
BANDIT_OUTCOME = Literal['safe', 'win', 'loss']
AXIS_SCALE = Literal['log', 'linear', 'symlog', 'logit']
PLOT_KIND = Literal['returns', 'gap', 'preference', 'transformation',
                    'learning']
