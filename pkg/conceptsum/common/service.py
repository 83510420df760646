from oslo_log import log

from conceptsum import PROJECT_NAME
from conceptsum.common import config
from conceptsum.conf import CONF
from conceptsum.conf import opts


def prepare_service(argv=None, default_config_files=None):
    """Parse configuration and set up logging for a command invocation."""
    argv = [] if argv is None else argv
    log.register_options(CONF)
    opts.update_opt_defaults()
    config.parse_args(argv, default_config_files=default_config_files)
    # NOTE(vdrok): We need to setup logging after argv was parsed, otherwise
    # it does not properly parse the options from config file and uses defaults
    # from oslo_log
    log.setup(CONF, PROJECT_NAME)
