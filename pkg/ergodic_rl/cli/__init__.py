from ergodic_rl.cli.commands import cmd_analyze_chain, cmd_run, cmd_sweep, \
    cmd_plot, cmd_list
from ergodic_rl.cli.config import ExperimentConfig, load_config, \
    parse_config, config_hash
from ergodic_rl.cli.main import main
