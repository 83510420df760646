from itertools import chain

from oslo_config import cfg

GROUP = "DEFAULT"

exc_log_opts = [
    cfg.BoolOpt(
        "fatal_exception_format_errors",
        default=False,
        help=(
            "Used if there is a formatting error when generating "
            "an exception message (a programming error). If True, "
            "raise an exception; if False, use the unformatted "
            "message."
        ),
    ),
]

driver_opts = [
    cfg.ListOpt(
        "enabled_tokenizers",
        default=["unicode", "pretokenized"],
        help=(
            "Tokenizer drivers that may be selected with [tokenizer]driver. "
            "Drivers are loaded from the 'conceptsum.tokenizer' entry point "
            "namespace."
        ),
    ),
]

opts = list(chain(*[exc_log_opts, driver_opts]))
