"""Sentence scoring and summary selection."""

import collections
import dataclasses
import math
import re
from typing import TYPE_CHECKING

from oslo_log import log

from conceptsum.common import args
from conceptsum.common import exception

if TYPE_CHECKING:
    from typing import Mapping, Sequence

    from conceptsum.concepts import Concept
    from conceptsum.textprep import SentenceSpan

LOG = log.getLogger(__name__)

COUNT_MODES = ("content", "all")
LINE_BREAK = re.compile("\r\n|[\n\r\u2028\u2029]")
BUDGET_MODES = ("words", "sentences")


@dataclasses.dataclass(frozen=True)
class SentenceScore:
    """The score of one sentence: ``raw_sum / word_count``.

    Attributes:
        sentence (SentenceSpan): The scored sentence.
        word_count (int): Length the raw sum is divided by.
        raw_sum (float): Sum of the concept scores of the sentence's tokens.
        score (float): Length-normalized score.
    """

    sentence: "SentenceSpan"
    word_count: int
    raw_sum: float
    score: float

    @property
    def index(self) -> int:
        return self.sentence.index


@dataclasses.dataclass(frozen=True)
class Summary:
    """Selected sentences, in document order.

    Attributes:
        selected (tuple[SentenceSpan]): Chosen sentences sorted by index.
        total_words (int): Number of tokens in the selected sentences.
        ratio_achieved (float): Selected share of the document, in the
            budget's unit.
        ranking_trace (tuple[tuple[int, float]]): (sentence index, score) of
            every sentence in rank order.
        budget (int): Budget the selection was made against.
    """

    selected: "tuple[SentenceSpan, ...]"
    total_words: int
    ratio_achieved: float
    ranking_trace: "tuple[tuple[int, float], ...]"
    budget: int = 0

    @property
    def indexes(self) -> "list[int]":
        return [s.index for s in self.selected]


@args.validate(mode=args.choice(*COUNT_MODES))
def score_sentence(
    sentence: "SentenceSpan", concept_of: "Mapping[str, Concept]", mode="content"
) -> SentenceScore:
    """Score a sentence by the concepts its tokens express.

    Every token assigned to a concept contributes that concept's score, so a
    term repeated inside a sentence counts each time. In ``content`` mode the
    sum is divided by the number of assigned tokens, in ``all`` mode by the
    number of tokens. A sentence without assigned tokens scores 0.
    """
    counts = collections.Counter()
    for token in sentence.tokens:
        concept = concept_of.get(token.surface)
        if concept is not None:
            counts[concept.id] += 1
    scores = {
        concept.id: concept.score
        for concept in concept_of.values()
        if concept.id in counts
    }
    assigned = sum(counts.values())
    if mode == "content":
        word_count = assigned
    else:
        word_count = len(sentence.tokens)
    word_count = max(word_count, 1)

    raw_sum = math.fsum(scores[cid] * n for cid, n in counts.items())
    # Each concept contributes its score times its share of the sentence,
    # so a sentence drawn from a single concept scores exactly that concept.
    score = math.fsum(scores[cid] * (n / word_count) for cid, n in counts.items())
    return SentenceScore(
        sentence=sentence, word_count=word_count, raw_sum=raw_sum, score=score
    )


def rank_sentences(
    doc: "Sequence[SentenceSpan]",
    concept_of: "Mapping[str, Concept]",
    mode="content",
) -> "list[SentenceScore]":
    """Score every sentence and sort by score, earlier sentences first on ties."""
    scored = [score_sentence(sentence, concept_of, mode) for sentence in doc]
    scored.sort(key=lambda s: (-s.score, s.index))
    return scored


def _size(sentence: "SentenceSpan", budget_mode: str) -> int:
    return len(sentence.tokens) if budget_mode == "words" else 1


@args.validate(ratio=args.ratio, budget_mode=args.choice(*BUDGET_MODES))
def select_summary(
    ranked: "Sequence[SentenceScore]", ratio=0.25, budget_mode="words"
) -> Summary:
    """Pick sentences in rank order until the budget is spent.

    The budget is ``ceil(ratio * document size)`` in words or sentences. A
    sentence is added when it fits what is left of the budget; the
    top-ranked sentence is always added, even when it alone exceeds it.

    Raises:
        InvalidParameterValue: if ``ratio`` is outside (0, 1].
        EmptyDocument: if there is nothing to select from.
    """
    if not ranked:
        raise exception.EmptyDocument(document="<input>")

    total = sum(_size(s.sentence, budget_mode) for s in ranked)
    # Rounding first keeps e.g. 0.3 * 40 from landing just above 12.
    budget = math.ceil(round(ratio * total, 9))
    remaining = budget
    chosen = []
    for rank, scored in enumerate(ranked):
        size = _size(scored.sentence, budget_mode)
        if size <= remaining or rank == 0:
            chosen.append(scored.sentence)
            remaining -= size
    chosen.sort(key=lambda s: s.index)

    used = sum(_size(s, budget_mode) for s in chosen)
    summary = Summary(
        selected=tuple(chosen),
        total_words=sum(len(s.tokens) for s in chosen),
        ratio_achieved=used / total if total else 0.0,
        ranking_trace=tuple((s.index, s.score) for s in ranked),
        budget=budget,
    )
    LOG.debug(
        "Selected %d of %d sentences (%d of %d %s, budget %d)",
        len(chosen),
        len(ranked),
        used,
        total,
        budget_mode,
        budget,
    )
    return summary


def render_summary(summary: Summary, text: str) -> str:
    """The selected sentences as they appear in ``text``, one per line.

    Line breaks inside a sentence become single spaces; all other characters
    of the source slice are kept.
    """
    lines = []
    for sentence in summary.selected:
        start, end = sentence.char_span
        lines.append(LINE_BREAK.sub(" ", text[start:end]))
    return "".join(f"{line}\n" for line in lines)


def format_trace(ranked: "Sequence[SentenceScore]") -> str:
    """TSV of rank, sentence index, score and word count."""
    lines = ["rank\tsentence_index\tscore\tword_count"]
    for rank, s in enumerate(ranked, start=1):
        lines.append(f"{rank}\t{s.index}\t{s.score:.6f}\t{s.word_count}")
    return "\n".join(lines) + "\n"
