"""TF-IDF scoring of a document's terms and keyword selection."""

import dataclasses
from typing import TYPE_CHECKING

from oslo_log import log

from conceptsum import corpus_stats
from conceptsum import textprep
from conceptsum.common import args
from conceptsum.common import exception

if TYPE_CHECKING:
    from typing import Iterable, Optional

    from conceptsum.corpus_stats import CorpusStats
    from conceptsum.embeddings import EmbeddingTable
    from conceptsum.textprep import StopwordSet, Token

LOG = log.getLogger(__name__)

DEFAULT_KEYWORDS = 10


@dataclasses.dataclass(frozen=True)
class TermStats:
    term: str
    raw_freq: int
    first_pos: int


@dataclasses.dataclass(frozen=True)
class KeywordScore:
    """The score of one document term: ``point = tf * idf``."""

    term: str
    tf: float
    idf: float
    point: float
    raw_freq: int = 1
    first_pos: int = 0


def term_frequencies(tokens: "Iterable[Token]") -> "dict[str, TermStats]":
    """Count term occurrences, remembering where each term first appears.

    Args:
        tokens: Content tokens, already stopword-filtered.

    Returns:
        term -> TermStats, in order of first occurrence.
    """
    counts = {}
    first = {}
    for pos, token in enumerate(tokens):
        term = token.surface
        if term not in counts:
            counts[term] = 0
            first[term] = pos
        counts[term] += 1
    return {
        term: TermStats(term=term, raw_freq=count, first_pos=first[term])
        for term, count in counts.items()
    }


def tf(term_stats: TermStats, max_freq: int) -> float:
    """Frequency normalized by the document's highest term frequency.

    Raises:
        ContractViolation: if ``max_freq`` is below the term's frequency.
    """
    if term_stats.raw_freq < 1 or max_freq < term_stats.raw_freq:
        raise exception.ContractViolation(
            msg=(
                f"max_freq {max_freq} must be >= raw_freq {term_stats.raw_freq} "
                "and raw_freq >= 1"
            )
        )
    return term_stats.raw_freq / max_freq


def score_words(
    doc_tokens: "Iterable[Token]",
    stats: "CorpusStats",
    table: "EmbeddingTable",
    stops: "StopwordSet",
    tokenizer_fingerprint: "Optional[str]" = None,
    document="<input>",
) -> "list[KeywordScore]":
    """Score every distinct scoreable term of a document.

    A term is scoreable when it is not a stopword, occurs in the corpus
    statistics and has a vector in the embedding table; every other term
    leaves the pipeline here. The highest frequency used to normalize tf is
    taken over scoreable terms only.

    Args:
        doc_tokens: The document's tokens.
        stats: Corpus statistics providing idf.
        table: Embedding table; terms without a vector are dropped.
        stops: Stopwords to drop.
        tokenizer_fingerprint (str): If given, the fingerprint of the
            tokenizer ``doc_tokens`` came from; it must match ``stats``.
        document (str): Name used in error messages.

    Returns:
        Scores sorted by point descending, then first occurrence, then term.

    Raises:
        IncompatibleStats: if the fingerprints differ.
        NoScoreableTerms: if no term survives.
    """
    if tokenizer_fingerprint is not None:
        corpus_stats.check_compatible(stats, tokenizer_fingerprint)

    content = textprep.filter_stopwords(doc_tokens, stops)
    survivors = []
    for term_stats in term_frequencies(content).values():
        term_idf = corpus_stats.idf(stats, term_stats.term)
        if term_idf is None or term_stats.term not in table:
            continue
        survivors.append((term_stats, term_idf))

    if not survivors:
        raise exception.NoScoreableTerms(document=document)

    max_freq = max(ts.raw_freq for ts, _ in survivors)
    scores = []
    for term_stats, term_idf in survivors:
        term_tf = tf(term_stats, max_freq)
        scores.append(
            KeywordScore(
                term=term_stats.term,
                tf=term_tf,
                idf=term_idf,
                point=term_tf * term_idf,
                raw_freq=term_stats.raw_freq,
                first_pos=term_stats.first_pos,
            )
        )
    scores.sort(key=lambda s: (-s.point, s.first_pos, s.term))
    LOG.debug(
        "%s: scored %d of %d distinct content terms",
        document,
        len(scores),
        len(set(t.surface for t in content)),
    )
    return scores


@args.validate(k=args.positive_int)
def top_keywords(scores: "list[KeywordScore]", k=DEFAULT_KEYWORDS) -> "list[str]":
    """The first ``k`` terms of a :func:`score_words` ranking."""
    return [s.term for s in scores[:k]]


def points(scores: "Iterable[KeywordScore]") -> "dict[str, float]":
    """term -> point map of a scoring."""
    return {s.term: s.point for s in scores}


def format_keywords(scores: "list[KeywordScore]") -> str:
    """TSV of rank, term, tf, idf and point."""
    lines = ["rank\tterm\ttf\tidf\tpoint"]
    for rank, s in enumerate(scores, start=1):
        lines.append(f"{rank}\t{s.term}\t{s.tf:.6f}\t{s.idf:.6f}\t{s.point:.6f}")
    return "\n".join(lines) + "\n"
