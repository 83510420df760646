from oslo_config import cfg

GROUP = "summarizer"

path_opts = [
    cfg.StrOpt(
        "stats_path",
        help="Corpus statistics file written by 'conceptsum build-stats'.",
    ),
    cfg.StrOpt(
        "embeddings_path",
        help="Word embedding table in the word2vec text vector format.",
    ),
    cfg.StrOpt(
        "stopwords_path",
        help=(
            "Stopword list, one word per line. Lines starting with '#' are "
            "ignored. If unset, no stopwords are removed."
        ),
    ),
    cfg.IntOpt(
        "expected_dim",
        default=300,
        min=0,
        help=(
            "Dimension the embedding table must have. Set to 0 to accept "
            "whatever dimension the file declares."
        ),
    ),
]

clustering_opts = [
    cfg.IntOpt(
        "k",
        default=10,
        min=1,
        help=(
            "Number of keywords used as initial cluster centers, and hence "
            "the maximum number of concepts."
        ),
    ),
    cfg.IntOpt(
        "max_iters",
        default=100,
        min=1,
        help="Maximum number of k-means iterations.",
    ),
    cfg.FloatOpt(
        "tol",
        default=1e-6,
        min=0.0,
        help="Relative centroid movement below which k-means stops.",
    ),
    cfg.IntOpt(
        "seed",
        default=0,
        help="Seed for tie-breaking when an empty cluster is reseeded.",
    ),
]

selection_opts = [
    cfg.FloatOpt(
        "ratio",
        default=0.25,
        min=0.0,
        max=1.0,
        help="Compression ratio of the summary, in (0, 1].",
    ),
    cfg.StrOpt(
        "count_mode",
        default="content",
        choices=[
            ("content", "divide by the number of concept-assigned tokens"),
            ("all", "divide by the number of tokens in the sentence"),
        ],
        help="Which tokens count towards a sentence's length when scoring.",
    ),
    cfg.StrOpt(
        "budget_mode",
        default="words",
        choices=[
            ("words", "budget is a share of the document's tokens"),
            ("sentences", "budget is a share of the document's sentences"),
        ],
        help="Unit the compression ratio is applied to.",
    ),
]

opts = path_opts + clustering_opts + selection_opts
