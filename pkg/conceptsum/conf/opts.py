from oslo_log import log

import conceptsum.conf

_opts = [
    (conf.GROUP, conf.opts)
    for conf in [
        conceptsum.conf.default,
        conceptsum.conf.tokenizer,
        conceptsum.conf.summarizer,
        conceptsum.conf.corpus,
        conceptsum.conf.rouge,
    ]
]


def list_opts():
    """Return a list of oslo.config options available in conceptsum.

    The function is discoverable via the 'conceptsum' entry point under the
    'oslo.config.opts' namespace, and is used by the sample config file
    generator.

    Returns:
        list[(str,?)]: A list of (group, options) tuples
    """
    return _opts


def update_opt_defaults():
    log.set_defaults(
        default_log_levels=[
            "stevedore=WARNING",
            "futurist=WARNING",
            "oslo_concurrency.lockutils=WARNING",
        ]
    )
