"""Corpus-level dictionary: document count, document and collection frequencies."""

import collections
import dataclasses
import json
import math
from typing import TYPE_CHECKING

import futurist
import jsonschema
from futurist import waiters
from oslo_log import log

from conceptsum import textprep
from conceptsum.common import args
from conceptsum.common import exception

if TYPE_CHECKING:
    from typing import Iterable, Mapping, Optional

    from conceptsum.textprep import TokenizerConfig

LOG = log.getLogger(__name__)

STATS_FORMAT_VERSION = 1

STATS_SCHEMA = {
    "type": "object",
    "properties": {
        "version": args.enum([STATS_FORMAT_VERSION], type="integer"),
        "doc_count": args.NON_NEGATIVE_INTEGER,
        "tokenizer_fingerprint": args.STRING,
        "entries": args.array(
            {
                "type": "array",
                "items": [
                    args.NON_EMPTY_STRING,
                    args.POSITIVE_INTEGER,
                    args.POSITIVE_INTEGER,
                ],
                "minItems": 3,
                "maxItems": 3,
            }
        ),
    },
    "required": ["version", "doc_count", "tokenizer_fingerprint", "entries"],
    "additionalProperties": False,
}


@dataclasses.dataclass(frozen=True)
class CorpusStats:
    """Document count and per-word frequencies of a corpus.

    Attributes:
        doc_count (int): Number of documents scanned.
        doc_freq (dict): word -> number of documents containing it.
        coll_freq (dict): word -> total number of occurrences.
        tokenizer_fingerprint (str): Fingerprint of the tokenizer config the
            corpus was scanned with.
    """

    doc_count: int
    doc_freq: "Mapping[str, int]"
    coll_freq: "Mapping[str, int]"
    tokenizer_fingerprint: str

    @classmethod
    def empty(cls, tokenizer_fingerprint: str) -> "CorpusStats":
        return cls(0, {}, {}, tokenizer_fingerprint)

    @property
    def vocabulary_size(self) -> int:
        return len(self.doc_freq)

    def __contains__(self, word):
        return word in self.doc_freq


def _scan_documents(
    documents: "Iterable[str]", config: "TokenizerConfig"
) -> CorpusStats:
    doc_count = 0
    doc_freq = collections.Counter()
    coll_freq = collections.Counter()
    for document in documents:
        doc_count += 1
        counts = collections.Counter(
            t.surface for t in textprep.tokenize_words(document, config)
        )
        coll_freq.update(counts)
        doc_freq.update(counts.keys())
    return CorpusStats(doc_count, dict(doc_freq), dict(coll_freq), config.fingerprint)


def _chunks(iterable, chunk_size):
    """Break an iterable into lists of at most size chunk_size."""
    chunk = []
    for item in iterable:
        chunk.append(item)
        if len(chunk) == chunk_size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


@args.validate(workers=args.positive_int, chunk_size=args.positive_int)
def build_stats(
    documents: "Iterable[str]",
    config: "TokenizerConfig",
    workers=1,
    chunk_size=64,
) -> CorpusStats:
    """Count document and collection frequencies over a corpus.

    Args:
        documents: The corpus. Each item is one document's text; whatever
            unit is passed in is what ``doc_count`` counts.
        config: Tokenizer config the documents are split with.
        workers (int): Number of threads scanning chunks of documents.
        chunk_size (int): Number of documents per chunk.

    Returns:
        The corpus statistics. The result does not depend on ``workers``.

    Raises:
        EmptyCorpus: if ``documents`` is empty.
        InvalidParameterValue: if ``workers`` or ``chunk_size`` is below 1.
    """
    chunks = _chunks(documents, chunk_size)
    if workers == 1:
        partials = [_scan_documents(chunk, config) for chunk in chunks]
    else:
        with futurist.ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [
                executor.submit(_scan_documents, chunk, config) for chunk in chunks
            ]
            waiters.wait_for_all(futures)
            partials = [f.result() for f in futures]

    if not partials:
        raise exception.EmptyCorpus()

    stats = CorpusStats.empty(config.fingerprint)
    for partial in partials:
        stats = merge_stats(stats, partial)
    LOG.info(
        "Scanned %d documents, vocabulary of %d words",
        stats.doc_count,
        stats.vocabulary_size,
    )
    return stats


def merge_stats(a: CorpusStats, b: CorpusStats) -> CorpusStats:
    """Sum two statistics scanned with the same tokenizer.

    Raises:
        IncompatibleStats: if the tokenizer fingerprints differ.
    """
    check_compatible(b, a.tokenizer_fingerprint)
    doc_freq = collections.Counter(a.doc_freq)
    doc_freq.update(b.doc_freq)
    coll_freq = collections.Counter(a.coll_freq)
    coll_freq.update(b.coll_freq)
    return CorpusStats(
        a.doc_count + b.doc_count,
        dict(doc_freq),
        dict(coll_freq),
        a.tokenizer_fingerprint,
    )


def check_compatible(stats: CorpusStats, tokenizer_fingerprint: str):
    """Ensure stats were built with the tokenizer identified by the fingerprint.

    Raises:
        IncompatibleStats: if the fingerprints differ.
    """
    if stats.tokenizer_fingerprint != tokenizer_fingerprint:
        raise exception.IncompatibleStats(
            expected=tokenizer_fingerprint, actual=stats.tokenizer_fingerprint
        )


def idf(stats: CorpusStats, word: str) -> "Optional[float]":
    """Inverse document frequency, ``log2(doc_count / doc_freq[word])``.

    Returns:
        The idf, or None if the word never occurs in the corpus.
    """
    df = stats.doc_freq.get(word)
    if not df or not stats.doc_count:
        return None
    return math.log2(stats.doc_count / df)


@args.validate(k=args.positive_int)
def top_frequent(stats: CorpusStats, k) -> "list[str]":
    """The k words of highest collection frequency, ties broken lexicographically."""
    ranked = sorted(stats.coll_freq.items(), key=lambda item: (-item[1], item[0]))
    return [word for word, _ in ranked[:k]]


def build_stopword_list(
    stats: CorpusStats,
    k,
    extra_lists: "Iterable[textprep.StopwordSet]" = (),
) -> "list[str]":
    """Propose stopwords: the corpus' most frequent words plus existing lists."""
    words = set(top_frequent(stats, k))
    for extra in extra_lists:
        words.update(extra.words)
    return sorted(words)


def dump_stats(stats: CorpusStats) -> str:
    """Serialize stats canonically: equal stats give byte-identical text."""

    def _json(value):
        return json.dumps(value, ensure_ascii=False)

    entries = [
        "    " + _json([word, stats.doc_freq[word], stats.coll_freq[word]])
        for word in sorted(stats.doc_freq)
    ]
    lines = [
        "{",
        f'  "version": {STATS_FORMAT_VERSION},',
        f'  "doc_count": {stats.doc_count},',
        f'  "tokenizer_fingerprint": {_json(stats.tokenizer_fingerprint)},',
    ]
    if entries:
        lines.append('  "entries": [')
        lines.append(",\n".join(entries))
        lines.append("  ]")
    else:
        lines.append('  "entries": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_stats(content: str, path="<string>") -> CorpusStats:
    """Parse and validate the text written by :func:`dump_stats`.

    Raises:
        StatsParseError: on syntax errors, schema violations or entries that
            break the frequency invariants.
    """
    try:
        doc = json.loads(content)
    except json.JSONDecodeError as exc:
        raise exception.StatsParseError(
            path=path, where=f"line {exc.lineno} column {exc.colno}", reason=exc.msg
        )

    try:
        jsonschema.validate(doc, STATS_SCHEMA, cls=jsonschema.Draft7Validator)
    except jsonschema.exceptions.ValidationError as exc:
        field = "/".join(str(p) for p in exc.absolute_path) or "document"
        raise exception.StatsParseError(
            path=path, where=f"field '{field}'", reason=exc.message
        )

    doc_count = doc["doc_count"]
    doc_freq = {}
    coll_freq = {}
    for i, (word, df, cf) in enumerate(doc["entries"]):
        where = f"entry {i} ('{word}')"
        if word in doc_freq:
            raise exception.StatsParseError(
                path=path, where=where, reason="duplicate word"
            )
        if df > doc_count:
            raise exception.StatsParseError(
                path=path, where=where, reason="doc_freq exceeds doc_count"
            )
        if cf < df:
            raise exception.StatsParseError(
                path=path, where=where, reason="coll_freq is below doc_freq"
            )
        doc_freq[word] = df
        coll_freq[word] = cf
    return CorpusStats(doc_count, doc_freq, coll_freq, doc["tokenizer_fingerprint"])


def save_stats(stats: CorpusStats, path):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dump_stats(stats))
    LOG.info("Wrote statistics for %d words to %s", stats.vocabulary_size, path)


def load_stats(path) -> CorpusStats:
    """Load statistics written by :func:`save_stats`.

    Raises:
        ResourceNotFound: if the file does not exist.
        DecodingError: if the file is not UTF-8.
        StatsParseError: if the file is malformed.
    """
    try:
        with open(path, "rb") as f:
            data = f.read()
    except FileNotFoundError:
        raise exception.ResourceNotFound(resource="Statistics file", path=path)
    stats = parse_stats(textprep.ensure_text(data, source=str(path)), path=path)
    LOG.debug(
        "Loaded statistics for %d documents, %d words from %s",
        stats.doc_count,
        stats.vocabulary_size,
        path,
    )
    return stats
