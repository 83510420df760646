import random

import numpy as np
import pytest

from conceptsum import concepts
from conceptsum import ranking
from conceptsum import textprep
from conceptsum.common import exception


@pytest.fixture
def config():
    return textprep.TokenizerConfig()


def _concept(cid, members, score):
    return concepts.Concept(
        id=cid,
        members=tuple(members),
        centroid=np.zeros(2),
        criterion_word=members[0],
        nearness={m: 1.0 for m in members},
        score=score,
    )


def _index(*concept_list):
    return concepts.concept_index(concept_list)


def _sentence(text, config, index=0):
    tokens = tuple(textprep.tokenize_words(text, config))
    return textprep.SentenceSpan(
        index=index, tokens=tokens, char_span=(0, len(text))
    )


def _scored(index, score, length=1):
    sentence = textprep.SentenceSpan(
        index=index,
        tokens=tuple(
            textprep.Token(surface=f"w{i}", char_span=(i, i + 1)) for i in range(length)
        ),
        char_span=(0, length),
    )
    return ranking.SentenceScore(
        sentence=sentence, word_count=length, raw_sum=score * length, score=score
    )


def test_score_sentence_single_concept(config):
    concept_of = _index(_concept(0, ["w"], 2.5))
    scored = ranking.score_sentence(_sentence("w w w w", config), concept_of)
    assert scored.raw_sum == 10.0
    assert scored.word_count == 4
    assert scored.score == 2.5


def test_score_sentence_two_concepts(config):
    concept_of = _index(_concept(0, ["x"], 2.0), _concept(1, ["y"], 4.0))
    assert ranking.score_sentence(_sentence("x y", config), concept_of).score == 3.0


def test_score_sentence_nothing_assigned(config):
    concept_of = _index(_concept(0, ["x"], 2.0))
    for mode in ranking.COUNT_MODES:
        scored = ranking.score_sentence(_sentence("the of", config), concept_of, mode)
        assert scored.score == 0.0
        assert scored.word_count >= 1


def test_score_sentence_all_mode(config):
    concept_of = _index(_concept(0, ["x"], 3.0))
    sentence = _sentence("x x unknown", config)
    assert ranking.score_sentence(sentence, concept_of, "content").score == 3.0
    scored = ranking.score_sentence(sentence, concept_of, "all")
    assert scored.word_count == 3
    assert scored.score == pytest.approx(2.0)


def test_score_sentence_invalid_mode(config):
    with pytest.raises(exception.InvalidParameterValue):
        ranking.score_sentence(_sentence("x", config), {}, mode="nope")


@pytest.mark.parametrize("point", [0.1, 1.0 / 3.0, 2.5, 7.123456789])
def test_score_is_length_independent_for_one_concept(config, point):
    concept_of = _index(_concept(0, ["p", "q", "r"], point))
    rng = random.Random(11)
    for length in range(1, 51):
        words = [rng.choice("pqr") for _ in range(length)]
        scored = ranking.score_sentence(_sentence(" ".join(words), config), concept_of)
        assert scored.score == point


@pytest.mark.parametrize("mode", ranking.COUNT_MODES)
def test_score_unchanged_by_doubling(config, mode):
    concept_of = _index(
        _concept(0, ["a", "b"], 1.7), _concept(1, ["c"], 0.4), _concept(2, ["d"], 3.3)
    )
    rng = random.Random(5)
    for _ in range(100):
        words = [rng.choice("abcdxy") for _ in range(rng.randint(1, 20))]
        sentence = _sentence(" ".join(words), config)
        once = ranking.score_sentence(sentence, concept_of, mode)
        twice = ranking.score_sentence(
            _sentence(" ".join(words * 2), config), concept_of, mode
        )
        assert twice.score == pytest.approx(once.score, rel=1e-9, abs=1e-12)
        assert once.score == pytest.approx(once.raw_sum / once.word_count, rel=1e-9)


def _random_concepts(rng, vocabulary):
    words = list(vocabulary)
    rng.shuffle(words)
    cuts = sorted(rng.sample(range(1, len(words)), rng.randint(0, 4)))
    groups = [words[i:j] for i, j in zip([0, *cuts], [*cuts, len(words)])]
    return [
        _concept(cid, group, rng.uniform(0.0, 5.0)) for cid, group in enumerate(groups)
    ]


@pytest.mark.parametrize("mode", ranking.COUNT_MODES)
def test_score_sentence_matches_recomputation(config, mode):
    rng = random.Random(23)
    vocabulary = [f"w{i}" for i in range(8)]
    for _ in range(200):
        concept_list = _random_concepts(rng, vocabulary)
        score_of = {m: c.score for c in concept_list for m in c.members}
        words = [
            rng.choice(vocabulary + ["oov", "other"])
            for _ in range(rng.randint(1, 25))
        ]
        contributions = [score_of[w] for w in words if w in score_of]
        if mode == "content":
            denominator = len(contributions)
        else:
            denominator = len(words)
        expected = sum(contributions) / denominator if contributions else 0.0

        scored = ranking.score_sentence(
            _sentence(" ".join(words), config), _index(*concept_list), mode
        )
        assert scored.score == pytest.approx(expected, rel=1e-9, abs=1e-12)
        assert scored.raw_sum == pytest.approx(sum(contributions), rel=1e-9)


def test_rank_sentences(config):
    concept_of = _index(
        _concept(0, ["a"], 1.0), _concept(1, ["b"], 3.0), _concept(2, ["c"], 2.0)
    )
    doc = textprep.split_sentences("a. b. c.", config)
    ranked = ranking.rank_sentences(doc, concept_of)
    assert [s.index for s in ranked] == [1, 2, 0]


def test_rank_sentences_ties_keep_document_order(config):
    concept_of = _index(_concept(0, ["a"], 1.0))
    doc = textprep.split_sentences("a. a a. a a a. b.", config)
    ranked = ranking.rank_sentences(doc, concept_of)
    assert [s.index for s in ranked] == [0, 1, 2, 3]


def test_rank_single_sentence(config):
    doc = textprep.split_sentences("a b", config)
    ranked = ranking.rank_sentences(doc, _index(_concept(0, ["a"], 1.0)))
    assert [s.sentence for s in ranked] == doc


def test_select_summary_everything():
    ranked = [_scored(2, 3.0, 2), _scored(0, 2.0, 3), _scored(1, 1.0, 4)]
    summary = ranking.select_summary(ranked, ratio=1.0)
    assert summary.indexes == [0, 1, 2]
    assert summary.total_words == 9
    assert summary.ratio_achieved == 1.0


def test_select_summary_quarter_of_equal_sentences():
    ranked = [_scored(i, 1.0, 5) for i in (3, 1, 0, 2)]
    summary = ranking.select_summary(ranked, ratio=0.25, budget_mode="words")
    assert summary.budget == 5
    assert summary.indexes == [3]


def test_select_summary_giant_sentence():
    ranked = [_scored(0, 9.0, 100), _scored(1, 1.0, 5), _scored(2, 0.5, 5)]
    summary = ranking.select_summary(ranked, ratio=0.1)
    assert summary.budget == 11
    assert summary.indexes == [0]


def test_select_summary_skips_what_does_not_fit():
    ranked = [_scored(4, 5.0, 3), _scored(0, 4.0, 6), _scored(2, 3.0, 1)]
    # total 10, budget 5: the 6-word sentence is skipped, the 1-word one fits.
    summary = ranking.select_summary(ranked, ratio=0.5)
    assert summary.indexes == [2, 4]
    assert summary.total_words == 4


def test_select_summary_budget_rounding():
    ranked = [_scored(i, 1.0, 4) for i in range(10)]
    summary = ranking.select_summary(ranked, ratio=0.3)
    assert summary.budget == 12
    assert summary.indexes == [0, 1, 2]


def test_select_summary_sentences_mode():
    ranked = [_scored(i, 10.0 - i, i + 1) for i in range(8)]
    summary = ranking.select_summary(ranked, ratio=0.25, budget_mode="sentences")
    assert summary.budget == 2
    assert summary.indexes == [0, 1]


def test_select_summary_never_empty_and_within_budget():
    rng = random.Random(17)
    for _ in range(200):
        n = rng.randint(1, 15)
        indexes = list(range(n))
        rng.shuffle(indexes)
        ranked = [_scored(i, rng.random(), rng.randint(1, 30)) for i in indexes]
        ratio = rng.choice([0.05, 0.1, 0.25, 0.5, 0.9, 1.0])
        summary = ranking.select_summary(ranked, ratio=ratio)
        assert summary.selected
        assert summary.indexes == sorted(summary.indexes)
        assert ranked[0].index in summary.indexes
        if len(summary.selected) > 1:
            assert summary.total_words <= summary.budget


@pytest.mark.parametrize("ratio", [0.0, -0.1, 1.5, "half"])
def test_select_summary_invalid_ratio(ratio):
    with pytest.raises(exception.InvalidParameterValue):
        ranking.select_summary([_scored(0, 1.0)], ratio=ratio)


def test_select_summary_empty():
    with pytest.raises(exception.EmptyDocument):
        ranking.select_summary([], ratio=0.5)


def test_render_summary(config):
    text = "First   one.\nSecond\tline here. Third."
    doc = textprep.split_sentences(text, config)
    ranked = ranking.rank_sentences(doc, _index(_concept(0, ["second"], 1.0)))
    summary = ranking.select_summary(ranked, ratio=0.5)
    assert summary.indexes == [1]
    assert ranking.render_summary(summary, text) == "Second\tline here.\n"


def test_render_summary_keeps_source_spacing():
    config = textprep.TokenizerConfig(sentence_terminators=frozenset(["."]))
    text = "alpha\t\tbeta  gamma. delta\r\nepsilon zeta\nend."
    doc = textprep.split_sentences(text, config)
    ranked = ranking.rank_sentences(doc, {})
    summary = ranking.select_summary(ranked, ratio=1.0)
    assert ranking.render_summary(summary, text) == (
        "alpha\t\tbeta  gamma.\ndelta epsilon zeta end.\n"
    )


def test_format_trace():
    ranked = [_scored(3, 2.5, 4), _scored(0, 1.0 / 3.0, 2)]
    assert ranking.format_trace(ranked) == (
        "rank\tsentence_index\tscore\tword_count\n"
        "1\t3\t2.500000\t4\n"
        "2\t0\t0.333333\t2\n"
    )
