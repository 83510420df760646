from conceptsum.driver.tokenizer.base import BaseTokenizer
from conceptsum.textprep import TokenizerConfig

WHITESPACE_CLASSES = frozenset(["Zs", "Zl", "Zp", "Cc"])
LINE_FEED = "U+000A"


class PretokenizedTokenizer(BaseTokenizer):
    """Text already cut by an external tokenizer.

    Input holds one sentence per line with tokens separated by whitespace;
    punctuation is kept as whatever tokens the external tool emitted. Case
    folding and normalization still follow the [tokenizer] group.
    """

    name = "pretokenized"

    def config(self, conf) -> TokenizerConfig:
        return TokenizerConfig(
            separator_classes=WHITESPACE_CLASSES,
            sentence_terminators=frozenset([LINE_FEED]),
            case_fold=conf.tokenizer.case_fold,
            normalize_form=conf.tokenizer.normalize_form,
        )
