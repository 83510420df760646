from oslo_config import cfg

GROUP = "corpus"

opts = [
    cfg.StrOpt(
        "document_pattern",
        default="*.txt",
        help="Glob matched against files in the corpus directory.",
    ),
    cfg.IntOpt(
        "scan_workers",
        default=1,
        min=1,
        help=(
            "Number of threads scanning corpus documents. Partial statistics "
            "are merged in document order, so the result does not depend "
            "on this value."
        ),
    ),
    cfg.IntOpt(
        "chunk_size",
        default=64,
        min=1,
        help="Number of documents handed to a scan thread at a time.",
    ),
    cfg.IntOpt(
        "stopword_candidates",
        default=100,
        min=1,
        help=(
            "How many of the corpus' most frequent words 'conceptsum "
            "stopwords' proposes as stopwords."
        ),
    ),
]
