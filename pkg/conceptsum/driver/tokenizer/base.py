import abc
import typing

from conceptsum import textprep

if typing.TYPE_CHECKING:
    from oslo_config.cfg import ConfigOpts

    from conceptsum.textprep import Token, TokenizerConfig


class BaseTokenizer(abc.ABC):
    """A named way of cutting text into words and sentences.

    A tokenizer driver only decides the :class:`TokenizerConfig`; the
    splitting itself is shared. Corpus statistics record the fingerprint of
    that config, so documents must be tokenized by a driver that yields the
    same config as the one the statistics were built with.

    Attributes:
        name (str): The entry point name the driver is registered under.
    """

    name: str = ""

    @abc.abstractmethod
    def config(self, conf: "ConfigOpts") -> "TokenizerConfig":
        """The tokenizer config this driver applies under ``conf``."""

    def tokenize(self, text, conf: "ConfigOpts") -> "list[Token]":
        return textprep.tokenize_words(text, self.config(conf))
