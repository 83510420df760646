"""
Command-line entry point: build corpus resources, summarize and evaluate.
"""

import glob
import pathlib
import sys

from oslo_config import cfg
from oslo_log import log

from conceptsum import concepts
from conceptsum import corpus_stats
from conceptsum import keywords
from conceptsum import pipeline
from conceptsum import ranking
from conceptsum import rouge
from conceptsum import textprep
from conceptsum.common import driver_factory
from conceptsum.common import exception
from conceptsum.common import service
from conceptsum.conf import CONF
from conceptsum.conf import corpus as corpus_conf
from conceptsum.conf import rouge as rouge_conf
from conceptsum.conf import summarizer as summarizer_conf

LOG = log.getLogger(__name__)


def _default(opts, name):
    return next(o.default for o in opts if o.name == name)


def _given(value, default):
    return default if value is None else value


def _write(path, content):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(content)


def _corpus_files(directory, pattern) -> "list[pathlib.Path]":
    directory = pathlib.Path(directory)
    if not directory.is_dir():
        raise exception.ResourceNotFound(resource="Directory", path=directory)
    return sorted(p for p in directory.glob(pattern) if p.is_file())


class SummarizerCommand(object):
    """Subcommand implementations. Each returns the process exit status."""

    def __init__(self, out=None):
        self._out = out

    @property
    def out(self):
        return self._out or sys.stdout

    def _tokenizer_config(self) -> "textprep.TokenizerConfig":
        return driver_factory.get_tokenizer().config(CONF)

    def _summarizer(self) -> "pipeline.ConceptSummarizer":
        args = CONF.command
        config = pipeline.PipelineConfig.from_conf(
            CONF,
            stats_path=args.stats_path,
            embeddings_path=args.embeddings_path,
            stopwords_path=args.stopwords_path,
            k=args.k,
            seed=args.seed,
            **{
                name: getattr(args, name, None)
                for name in ("ratio", "count_mode", "budget_mode")
            },
        )
        return pipeline.ConceptSummarizer(config)

    def build_stats(self):
        args = CONF.command
        pattern = args.pattern or CONF.corpus.document_pattern
        files = _corpus_files(args.corpus_dir, pattern)
        LOG.info("Scanning %d files in %s", len(files), args.corpus_dir)
        stats = corpus_stats.build_stats(
            (textprep.read_document(path) for path in files),
            self._tokenizer_config(),
            workers=_given(args.workers, CONF.corpus.scan_workers),
            chunk_size=CONF.corpus.chunk_size,
        )
        corpus_stats.save_stats(stats, args.out_path)
        print(
            f"{stats.doc_count} documents, {stats.vocabulary_size} words",
            file=self.out,
        )
        return exception.EXIT_OK

    def stopwords(self):
        args = CONF.command
        stats_path = args.stats_path or CONF.summarizer.stats_path
        if not stats_path:
            raise exception.MissingParameterValue(
                msg="A corpus statistics file is required (--stats)"
            )
        config = self._tokenizer_config()
        stats = corpus_stats.load_stats(stats_path)
        corpus_stats.check_compatible(stats, config.fingerprint)
        extra = [textprep.load_stopwords(path, config) for path in args.extra]
        words = corpus_stats.build_stopword_list(
            stats, _given(args.candidates, CONF.corpus.stopword_candidates), extra
        )
        header = [f"Stopwords for {stats.tokenizer_fingerprint}"]
        if args.out_path:
            textprep.write_stopwords(args.out_path, words, header=header)
        else:
            self.out.write(textprep.format_stopwords(words, header=header))
        return exception.EXIT_OK

    def keywords(self):
        args = CONF.command
        summarizer = self._summarizer()
        text = textprep.read_document(args.document)
        scores = summarizer.keywords(text, document=args.document)
        if not args.all:
            scores = scores[: summarizer.config.k]
        self.out.write(keywords.format_keywords(scores))
        return exception.EXIT_OK

    def concepts(self):
        args = CONF.command
        summarizer = self._summarizer()
        text = textprep.read_document(args.document)
        analysis = summarizer.analyze(text, document=args.document, summarize=False)
        self.out.write(
            concepts.format_concepts(
                analysis.concepts, analysis.points, as_json=args.json
            )
        )
        return exception.EXIT_OK

    def summarize(self):
        args = CONF.command
        summarizer = self._summarizer()
        text = textprep.read_document(args.document)
        analysis = summarizer.analyze(text, document=args.document)
        self.out.write(ranking.render_summary(analysis.summary, analysis.text))
        if args.trace:
            _write(args.trace, ranking.format_trace(analysis.ranked))
        if args.explain:
            _write(
                args.explain,
                concepts.format_concepts(
                    analysis.concepts, analysis.points, as_json=True
                ),
            )
        return exception.EXIT_OK

    def evaluate(self):
        args = CONF.command
        tokenizer = driver_factory.get_tokenizer()
        pattern = args.pattern or CONF.corpus.document_pattern
        systems = _corpus_files(args.system_dir, pattern)
        refs_dir = pathlib.Path(args.refs_dir)
        if not refs_dir.is_dir():
            raise exception.ResourceNotFound(resource="Directory", path=refs_dir)

        def _tokens(path):
            text = textprep.read_document(path)
            return [t.surface for t in tokenizer.tokenize(text, CONF)]

        pairs = []
        missing = []
        for system in systems:
            stem = glob.escape(system.stem)
            references = sorted(refs_dir.glob(f"{stem}.ref*{system.suffix}"))
            if not references:
                missing.append(system.name)
                continue
            pairs.append((_tokens(system), [_tokens(r) for r in references]))
        if missing:
            raise exception.MissingReferences(documents=", ".join(missing))

        report = rouge.evaluate_corpus(
            pairs,
            n_values=args.n or CONF.rouge.n_values,
            agg=args.agg or CONF.rouge.agg,
            workers=_given(args.workers, CONF.rouge.workers),
        )
        self.out.write(rouge.format_report(report))
        return exception.EXIT_OK


def _add_resource_args(parser):
    parser.add_argument(
        "--stats",
        dest="stats_path",
        help="Corpus statistics file. Defaults to [summarizer]stats_path.",
    )
    parser.add_argument(
        "--embeddings",
        dest="embeddings_path",
        help="Embedding table. Defaults to [summarizer]embeddings_path.",
    )
    parser.add_argument(
        "--stopwords",
        dest="stopwords_path",
        help="Stopword list. Defaults to [summarizer]stopwords_path.",
    )
    parser.add_argument(
        "-k",
        type=int,
        help=(
            "Number of keywords seeding the concepts (default: %s)."
            % _default(summarizer_conf.opts, "k")
        ),
    )
    parser.add_argument(
        "--seed",
        type=int,
        help=(
            "Seed for k-means tie-breaking (default: %s)."
            % _default(summarizer_conf.opts, "seed")
        ),
    )
    parser.add_argument("document", help="UTF-8 document to analyze.")


def add_command_parsers(subparsers):
    command_object = SummarizerCommand()

    parser = subparsers.add_parser(
        "build-stats",
        help=(
            "Scan a directory of UTF-8 documents and write the corpus "
            "statistics file used for idf."
        ),
    )
    parser.add_argument("corpus_dir", help="Directory holding the corpus.")
    parser.add_argument("out_path", help="Statistics file to write.")
    parser.add_argument(
        "--pattern",
        help=(
            "Glob selecting the documents (default: %s)."
            % _default(corpus_conf.opts, "document_pattern")
        ),
    )
    parser.add_argument(
        "--workers",
        type=int,
        help=(
            "Number of scanning threads (default: %s)."
            % _default(corpus_conf.opts, "scan_workers")
        ),
    )
    parser.set_defaults(func=command_object.build_stats)

    parser = subparsers.add_parser(
        "stopwords",
        help=(
            "Propose a stopword list from the corpus' most frequent words, "
            "optionally merged with existing lists."
        ),
    )
    parser.add_argument(
        "--stats",
        dest="stats_path",
        help="Corpus statistics file. Defaults to [summarizer]stats_path.",
    )
    parser.add_argument(
        "--candidates",
        type=int,
        help=(
            "Number of frequent words to include (default: %s)."
            % _default(corpus_conf.opts, "stopword_candidates")
        ),
    )
    parser.add_argument(
        "--extra",
        action="append",
        default=[],
        help="Existing stopword list to merge in; may be repeated.",
    )
    parser.add_argument(
        "out_path",
        nargs="?",
        help="File to write. The list goes to standard output if omitted.",
    )
    parser.set_defaults(func=command_object.stopwords)

    parser = subparsers.add_parser(
        "keywords", help="Print the TF-IDF keywords of a document."
    )
    _add_resource_args(parser)
    parser.add_argument(
        "--all",
        action="store_true",
        help="Print every scoreable term instead of the top k.",
    )
    parser.set_defaults(func=command_object.keywords)

    parser = subparsers.add_parser(
        "concepts", help="Print the concepts a document's terms cluster into."
    )
    _add_resource_args(parser)
    parser.add_argument(
        "--json", action="store_true", help="Print JSON instead of TSV."
    )
    parser.set_defaults(func=command_object.concepts)

    parser = subparsers.add_parser(
        "summarize",
        help=(
            "Print the summary of a document, one sentence per line. Returns "
            "2 if the document has no sentence or no scoreable term."
        ),
    )
    _add_resource_args(parser)
    parser.add_argument(
        "--ratio",
        type=float,
        help=(
            "Compression ratio in (0, 1] (default: %s)."
            % _default(summarizer_conf.opts, "ratio")
        ),
    )
    parser.add_argument(
        "--count-mode",
        dest="count_mode",
        choices=ranking.COUNT_MODES,
        help=(
            "Tokens counting towards sentence length (default: %s)."
            % _default(summarizer_conf.opts, "count_mode")
        ),
    )
    parser.add_argument(
        "--budget-mode",
        dest="budget_mode",
        choices=ranking.BUDGET_MODES,
        help=(
            "Unit the ratio applies to (default: %s)."
            % _default(summarizer_conf.opts, "budget_mode")
        ),
    )
    parser.add_argument(
        "--trace", help="Write the sentence ranking as TSV to this file."
    )
    parser.add_argument(
        "--explain", help="Write the concepts as JSON to this file."
    )
    parser.set_defaults(func=command_object.summarize)

    parser = subparsers.add_parser(
        "evaluate",
        help=(
            "Score system summaries against references with ROUGE-N. The "
            "references of X.txt are the files X.ref*.txt."
        ),
    )
    parser.add_argument(
        "--system", dest="system_dir", required=True, help="System summaries."
    )
    parser.add_argument(
        "--refs", dest="refs_dir", required=True, help="Reference summaries."
    )
    parser.add_argument(
        "--n",
        type=int,
        action="append",
        help=(
            "N-gram order; may be repeated (default: %s)."
            % ",".join(str(n) for n in _default(rouge_conf.opts, "n_values"))
        ),
    )
    parser.add_argument(
        "--agg",
        choices=rouge.AGGREGATIONS,
        help=(
            "Combining several references (default: %s)."
            % _default(rouge_conf.opts, "agg")
        ),
    )
    parser.add_argument(
        "--pattern",
        help=(
            "Glob selecting the system summaries (default: %s)."
            % _default(corpus_conf.opts, "document_pattern")
        ),
    )
    parser.add_argument(
        "--workers",
        type=int,
        help=(
            "Number of scoring threads (default: %s)."
            % _default(rouge_conf.opts, "workers")
        ),
    )
    parser.set_defaults(func=command_object.evaluate)


def main(argv=None):
    command_opt = cfg.SubCommandOpt(
        "command",
        title="Command",
        help=("Available commands"),
        handler=add_command_parsers,
    )

    CONF.register_cli_opt(command_opt)

    service.prepare_service(sys.argv if argv is None else argv)
    try:
        return CONF.command.func()
    except exception.SummarizerException as exc:
        LOG.debug("%s failed", CONF.command.name, exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exception.EXIT_RESOURCE_ERROR
