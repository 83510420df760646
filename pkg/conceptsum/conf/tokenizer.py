from oslo_config import cfg

GROUP = "tokenizer"

opts = [
    cfg.StrOpt(
        "driver",
        default="unicode",
        help=(
            "Tokenizer driver used for corpus scans, documents and ROUGE "
            "evaluation. 'unicode' splits on the configured separator "
            "classes; 'pretokenized' expects one sentence per line with "
            "tokens separated by whitespace, as produced by an external "
            "tokenizer."
        ),
    ),
    cfg.ListOpt(
        "separator_classes",
        default=["Zs", "Zl", "Zp", "Cc", "P"],
        help=(
            "Characters treated as word breaks. Entries are Unicode general "
            "categories (two letters, e.g. 'Zs'), major classes (one letter, "
            "e.g. 'P' for all punctuation) or single codepoints written as "
            "'U+XXXX'."
        ),
    ),
    cfg.ListOpt(
        "sentence_terminators",
        default=["U+002E", "U+0021", "U+003F", "U+061F", "U+06D4", "U+000A"],
        help=(
            "Codepoints, written as 'U+XXXX', that end a sentence. A run of "
            "consecutive terminators ends a single sentence."
        ),
    ),
    cfg.BoolOpt(
        "case_fold",
        default=True,
        help="Case-fold tokens, stopwords and embedding keys before lookup.",
    ),
    cfg.StrOpt(
        "normalize_form",
        default="NFC",
        choices=["NFC", "NFD", "NFKC", "NFKD", "none"],
        help="Unicode normalization form applied before case folding.",
    ),
]
