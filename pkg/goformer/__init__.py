from . import utils
from . import goboard
from . import features
from . import tensor
from . import models
from . import search
from . import harness
from . import gtp

import argparse, os
from goformer.configManager import init_config
from goformer.logger import warn, init_logging
from pkg_resources import get_distribution, DistributionNotFound

try:
    __version__ = get_distribution('goformer').version  ## set software version
except DistributionNotFound:
    __version__ = "0.1.0"


###### Initialize Config
def configure(argv=None):
    """
    Loads the global configuration named by `--config` (default
    `json_files/config.json`) and initializes logging from it. Other command
    line arguments are ignored here.
    """
    parser = argparse.ArgumentParser(description='goformer configuration', add_help=False)
    parser.add_argument("--config", type=str, help='location of config.json file')

    ## only the --config argument matters here
    args, unknown = parser.parse_known_args(argv)
    config_path = args.config

    if config_path is None:
        config_path = "json_files/config.json"

    if not os.path.isfile(config_path):
        warn("Missing configuration file. Attempted to locate file at \"" + str(config_path) +
             "\". Default Config will be used.")
    else:
        init_config(config_path)
    init_logging()
