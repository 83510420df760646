from conceptsum.driver.tokenizer.base import BaseTokenizer
from conceptsum.textprep import TokenizerConfig


class UnicodeTokenizer(BaseTokenizer):
    """Split on Unicode character classes, as set in the [tokenizer] group."""

    name = "unicode"

    def config(self, conf) -> TokenizerConfig:
        return TokenizerConfig.from_conf(conf)
