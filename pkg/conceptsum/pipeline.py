"""End-to-end summarization: resources in, ranked sentences out."""

import dataclasses
import itertools
from typing import TYPE_CHECKING

from oslo_log import log

from conceptsum import concepts as concepts_mod
from conceptsum import corpus_stats
from conceptsum import embeddings
from conceptsum import keywords as keywords_mod
from conceptsum import ranking
from conceptsum import textprep
from conceptsum.common import args
from conceptsum.common import driver_factory
from conceptsum.common import exception

if TYPE_CHECKING:
    from typing import Optional

    from oslo_config.cfg import ConfigOpts

    from conceptsum.concepts import Concept
    from conceptsum.corpus_stats import CorpusStats
    from conceptsum.embeddings import EmbeddingTable
    from conceptsum.keywords import KeywordScore
    from conceptsum.ranking import SentenceScore, Summary
    from conceptsum.textprep import SentenceSpan, StopwordSet

LOG = log.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class PipelineConfig:
    """Everything a summarization run depends on besides the document.

    Attributes:
        stats_path (str): Corpus statistics file.
        embeddings_path (str): Embedding table file.
        stopwords_path (str): Stopword list, or None for no stopwords.
        k (int): Number of seed keywords and maximum number of concepts.
        ratio (float): Compression ratio in (0, 1].
        count_mode (str): ``content`` or ``all``; see
            :func:`conceptsum.ranking.score_sentence`.
        budget_mode (str): ``words`` or ``sentences``.
        seed (int): k-means reseeding seed.
        max_iters (int): k-means iteration limit.
        tol (float): k-means relative movement threshold.
        expected_dim (int): Required embedding dimension, 0 to accept any.
        tokenizer (TokenizerConfig): How documents are tokenized.
    """

    stats_path: "Optional[str]" = None
    embeddings_path: "Optional[str]" = None
    stopwords_path: "Optional[str]" = None
    k: int = keywords_mod.DEFAULT_KEYWORDS
    ratio: float = 0.25
    count_mode: str = "content"
    budget_mode: str = "words"
    seed: int = 0
    max_iters: int = 100
    tol: float = 1e-6
    expected_dim: int = embeddings.DEFAULT_DIM
    tokenizer: "textprep.TokenizerConfig" = dataclasses.field(
        default_factory=textprep.TokenizerConfig
    )

    def __post_init__(self):
        args.positive_int("k", self.k)
        object.__setattr__(self, "ratio", args.ratio("ratio", self.ratio))
        args.choice(*ranking.COUNT_MODES)("count_mode", self.count_mode)
        args.choice(*ranking.BUDGET_MODES)("budget_mode", self.budget_mode)
        if self.expected_dim < 0:
            raise exception.InvalidParameterValue(
                msg=f"expected_dim must be >= 0, got {self.expected_dim}"
            )

    @classmethod
    def from_conf(cls, conf: "ConfigOpts", **overrides) -> "PipelineConfig":
        """Build a config from the [summarizer] group.

        Args:
            conf: The parsed configuration.
            **overrides: Field values taking precedence over ``conf``, as given
                on the command line. None means "not given".

        Raises:
            InvalidParameterValue: on an unknown field or an invalid value.
            DriverNotFound: if the [tokenizer] driver is not enabled.
        """
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(overrides) - names
        if unknown:
            raise exception.InvalidParameterValue(
                msg=f"Unknown settings: {', '.join(sorted(unknown))}"
            )
        values = {
            name: getattr(conf.summarizer, name)
            for name in names
            if name != "tokenizer"
        }
        values["tokenizer"] = driver_factory.get_tokenizer().config(conf)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @property
    def kmeans(self) -> "concepts_mod.KMeansConfig":
        return concepts_mod.KMeansConfig(
            k=self.k, max_iters=self.max_iters, tol=self.tol, seed=self.seed
        )


@dataclasses.dataclass(frozen=True)
class Analysis:
    """Intermediate results of one document's run through the pipeline."""

    document: str
    text: str
    sentences: "list[SentenceSpan]"
    scores: "list[KeywordScore]"
    keywords: "list[str]"
    concepts: "list[Concept]"
    ranked: "list[SentenceScore]" = dataclasses.field(default_factory=list)
    summary: "Optional[Summary]" = None

    @property
    def points(self) -> "dict[str, float]":
        return keywords_mod.points(self.scores)


class ConceptSummarizer(object):
    """Summarize documents against one set of corpus resources.

    Resources are loaded once, when the summarizer is created, unless they
    are passed in directly.

    Raises:
        MissingParameterValue: if a required resource has neither a path nor
            a value.
        IncompatibleStats: if the statistics were built with a different
            tokenizer config.
    """

    def __init__(
        self,
        config: PipelineConfig,
        stats: "Optional[CorpusStats]" = None,
        table: "Optional[EmbeddingTable]" = None,
        stopwords: "Optional[StopwordSet]" = None,
    ):
        self.config = config
        tok = config.tokenizer

        if stats is None:
            if not config.stats_path:
                raise exception.MissingParameterValue(
                    msg="A corpus statistics file is required (stats_path)"
                )
            stats = corpus_stats.load_stats(config.stats_path)
        corpus_stats.check_compatible(stats, tok.fingerprint)
        self.stats = stats

        if table is None:
            if not config.embeddings_path:
                raise exception.MissingParameterValue(
                    msg="An embedding table is required (embeddings_path)"
                )
            table = embeddings.load_embeddings(
                config.embeddings_path,
                expected_dim=config.expected_dim or None,
                config=tok,
            )
        self.table = embeddings.normalize(table)

        if stopwords is None:
            if config.stopwords_path:
                stopwords = textprep.load_stopwords(config.stopwords_path, tok)
            else:
                stopwords = textprep.StopwordSet()
        self.stopwords = stopwords

    def _score(self, text, document):
        text = textprep.ensure_text(text, source=document)
        sentences = textprep.split_sentences(text, self.config.tokenizer)
        if not sentences:
            raise exception.EmptyDocument(document=document)
        tokens = list(itertools.chain.from_iterable(s.tokens for s in sentences))
        scores = keywords_mod.score_words(
            tokens,
            self.stats,
            self.table,
            self.stopwords,
            tokenizer_fingerprint=self.config.tokenizer.fingerprint,
            document=document,
        )
        return text, sentences, scores

    def analyze(self, text, document="<input>", summarize=True) -> Analysis:
        """Run the pipeline over one document.

        Args:
            text (str|bytes): The document.
            document (str): Name used in messages.
            summarize (bool): Whether to rank sentences and select a summary,
                or stop after concept building.

        Raises:
            DecodingError: if the text is not valid UTF-8.
            EmptyDocument: if the text holds no sentence.
            NoScoreableTerms: if no term survives filtering.
        """
        text, sentences, scores = self._score(text, document)
        keywords = keywords_mod.top_keywords(scores, self.config.k)
        concepts = concepts_mod.build_concepts(
            scores, self.table, keywords, self.config.kmeans
        )
        analysis = Analysis(
            document=document,
            text=text,
            sentences=sentences,
            scores=scores,
            keywords=keywords,
            concepts=concepts,
        )
        if not summarize:
            return analysis

        ranked = ranking.rank_sentences(
            sentences,
            concepts_mod.concept_index(concepts),
            self.config.count_mode,
        )
        summary = ranking.select_summary(
            ranked, self.config.ratio, self.config.budget_mode
        )
        LOG.info(
            "%s: %d sentences, %d scoreable terms, %d concepts, %d selected",
            document,
            len(sentences),
            len(scores),
            len(concepts),
            len(summary.selected),
        )
        return dataclasses.replace(analysis, ranked=ranked, summary=summary)

    def keywords(self, text, document="<input>") -> "list[KeywordScore]":
        """Every scoreable term of the document, best first."""
        return self._score(text, document)[2]

    def concepts(self, text, document="<input>") -> "list[Concept]":
        return self.analyze(text, document, summarize=False).concepts

    def summarize(self, text, document="<input>") -> "Summary":
        return self.analyze(text, document).summary
