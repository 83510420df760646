from oslo_config import cfg

from conceptsum.conf import corpus
from conceptsum.conf import default
from conceptsum.conf import rouge
from conceptsum.conf import summarizer
from conceptsum.conf import tokenizer

CONF = cfg.CONF

CONF.register_opts(default.opts)
CONF.register_opts(tokenizer.opts, group=tokenizer.GROUP)
CONF.register_opts(summarizer.opts, group=summarizer.GROUP)
CONF.register_opts(corpus.opts, group=corpus.GROUP)
CONF.register_opts(rouge.opts, group=rouge.GROUP)
