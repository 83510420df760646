"""ROUGE-N scoring of system summaries against human references.

Scores are computed over the tokens produced by the same tokenizer the
summarizer uses, without stemming or stopword removal.
"""

import collections
import dataclasses
import math
from typing import TYPE_CHECKING

import futurist
from futurist import waiters
from oslo_log import log

from conceptsum.common import args
from conceptsum.common import exception

if TYPE_CHECKING:
    from typing import Iterable, Sequence

LOG = log.getLogger(__name__)

AGGREGATIONS = ("mean", "max")


@dataclasses.dataclass(frozen=True)
class NGramMultiset:
    n: int
    counts: "collections.Counter"

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, gram):
        return self.counts[gram]


@dataclasses.dataclass(frozen=True)
class RougeScore:
    recall: float
    precision: float
    f1: float

    def __post_init__(self):
        for name in ("recall", "precision", "f1"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise exception.ContractViolation(
                    msg=f"{name} must be in [0, 1], got {value}"
                )

    @classmethod
    def from_pr(cls, precision: float, recall: float) -> "RougeScore":
        total = precision + recall
        f1 = 2 * precision * recall / total if total > 0 else 0.0
        return cls(recall=recall, precision=precision, f1=min(f1, 1.0))


@dataclasses.dataclass(frozen=True)
class ReportRow:
    n: int
    avg_recall: float
    avg_precision: float
    avg_f1: float
    documents: int


@args.validate(n=args.positive_int)
def ngrams(tokens: "Sequence[str]", n) -> NGramMultiset:
    """All contiguous n-grams of ``tokens``, with multiplicity."""
    tokens = tuple(tokens)
    grams = (tokens[i : i + n] for i in range(len(tokens) - n + 1))
    return NGramMultiset(n=n, counts=collections.Counter(grams))


@args.validate(n=args.positive_int)
def rouge_n(system: "Sequence[str]", reference: "Sequence[str]", n) -> RougeScore:
    """ROUGE-N of one system summary against one reference.

    Matches are clipped: an n-gram counts at most as often as it occurs in
    the side where it is rarer. An empty side scores 0.
    """
    sys_grams = ngrams(system, n)
    ref_grams = ngrams(reference, n)
    match = sum((sys_grams.counts & ref_grams.counts).values())
    recall = match / ref_grams.total if ref_grams.total else 0.0
    precision = match / sys_grams.total if sys_grams.total else 0.0
    return RougeScore.from_pr(precision=precision, recall=recall)


@args.validate(agg=args.choice(*AGGREGATIONS))
def rouge_n_multi(
    system: "Sequence[str]",
    references: "Sequence[Sequence[str]]",
    n,
    agg="mean",
) -> RougeScore:
    """Combine the scores against several references.

    With ``mean`` each component is averaged over the references; with
    ``max`` each component takes its best value independently.

    Raises:
        MissingParameterValue: if there are no references.
    """
    if not references:
        raise exception.MissingParameterValue(msg="At least one reference is required")
    scores = [rouge_n(system, reference, n) for reference in references]
    if agg == "max":
        combine = max
    else:

        def combine(values):
            return math.fsum(values) / len(values)

    return RougeScore(
        recall=combine([s.recall for s in scores]),
        precision=combine([s.precision for s in scores]),
        f1=combine([s.f1 for s in scores]),
    )


def _score_document(system, references, n_values, agg):
    return [rouge_n_multi(system, references, n, agg) for n in n_values]


def evaluate_corpus(
    pairs: "Iterable[tuple[Sequence[str], Sequence[Sequence[str]]]]",
    n_values: "Sequence[int]" = (1, 2, 3),
    agg="mean",
    workers=1,
) -> "list[ReportRow]":
    """Average ROUGE-N over a collection of summarized documents.

    Args:
        pairs: (system tokens, list of reference token lists) per document.
        n_values: N-gram orders; one report row is produced per order.
        agg (str): How each document's references are combined.
        workers (int): Number of threads scoring documents.

    Returns:
        One row per n, in the order of ``n_values``, holding the unweighted
        mean over documents.

    Raises:
        InvalidParameterValue: if an order, ``agg`` or ``workers`` is invalid.
        MissingParameterValue: if there are no pairs or a document has no
            references.
    """
    pairs = list(pairs)
    if not pairs:
        raise exception.MissingParameterValue(msg="No documents to evaluate")
    n_values = [args.positive_int("n", n) for n in n_values]
    args.choice(*AGGREGATIONS)("agg", agg)
    args.positive_int("workers", workers)

    if workers == 1:
        per_doc = [_score_document(s, refs, n_values, agg) for s, refs in pairs]
    else:
        with futurist.ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [
                executor.submit(_score_document, s, refs, n_values, agg)
                for s, refs in pairs
            ]
            waiters.wait_for_all(futures)
            per_doc = [f.result() for f in futures]

    report = []
    for i, n in enumerate(n_values):
        scores = [doc[i] for doc in per_doc]
        report.append(
            ReportRow(
                n=n,
                avg_recall=math.fsum(s.recall for s in scores) / len(scores),
                avg_precision=math.fsum(s.precision for s in scores) / len(scores),
                avg_f1=math.fsum(s.f1 for s in scores) / len(scores),
                documents=len(scores),
            )
        )
    LOG.info("Evaluated %d documents for n=%s", len(pairs), n_values)
    return report


def format_report(report: "Sequence[ReportRow]") -> str:
    lines = ["n\tavg_recall\tavg_precision\tavg_f1"]
    for row in report:
        lines.append(
            f"{row.n}\t{row.avg_recall:.4f}\t{row.avg_precision:.4f}\t{row.avg_f1:.4f}"
        )
    return "\n".join(lines) + "\n"
