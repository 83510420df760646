import collections
import math

import numpy as np
import pytest

from conceptsum import pipeline
from conceptsum import ranking
from conceptsum import textprep
from conceptsum.common import exception
from conceptsum.conf import CONF
from conceptsum.tests.unit import utils


@pytest.fixture
def planted():
    return utils.planted_topic()


def _summarizer(fixture, **kwargs):
    kwargs.setdefault("k", 2)
    kwargs.setdefault("ratio", 0.3)
    config = pipeline.PipelineConfig(expected_dim=0, **kwargs)
    return pipeline.ConceptSummarizer(
        config, stats=fixture.stats, table=fixture.table
    )


def _oracle_scores(fixture, analysis):
    """Score every sentence straight from the formulas, given the clusters.

    Only the partition into concepts and each concept's criterion word are
    taken from ``analysis``; frequencies, idf, nearness, concept scores and
    sentence scores are recomputed here.
    """
    words = [w for sentence in fixture.sentences for w in sentence]
    counts = collections.Counter(words)
    max_freq = max(counts.values())
    stats = fixture.stats
    point = {
        w: (n / max_freq) * math.log2(stats.doc_count / stats.doc_freq[w])
        for w, n in counts.items()
    }

    def cos(u, v):
        u = np.asarray(fixture.vectors[u])
        v = np.asarray(fixture.vectors[v])
        return float(u @ v / (np.linalg.norm(u) * np.linalg.norm(v)))

    concept_of = {}
    concept_point = {}
    for concept in analysis.concepts:
        concept_point[concept.id] = sum(
            point[w] * max(0.0, cos(w, concept.criterion_word))
            for w in concept.members
        )
        for w in concept.members:
            concept_of[w] = concept.id

    scores = []
    for sentence in fixture.sentences:
        assigned = [w for w in sentence if w in concept_of]
        total = sum(concept_point[concept_of[w]] for w in assigned)
        scores.append(total / len(assigned) if assigned else 0.0)
    return scores


def _oracle_selection(fixture, scores, ratio):
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    total = sum(len(s) for s in fixture.sentences)
    remaining = math.ceil(round(ratio * total, 9))
    chosen = []
    for rank, i in enumerate(order):
        size = len(fixture.sentences[i])
        if size <= remaining or rank == 0:
            chosen.append(i)
            remaining -= size
    return sorted(chosen)


def test_planted_topic_summary(planted):
    analysis = _summarizer(planted).analyze(planted.text)

    assert analysis.keywords == ["a0", "b0"]
    assert [set(c.members) for c in analysis.concepts] == [
        set(planted.group_a),
        {"b0", "b1", "b2", "b3"},
    ]
    assert analysis.summary.indexes == [0, 1, 3]
    assert set(analysis.summary.indexes) <= set(planted.a_sentences)


def test_planted_topic_matches_oracle(planted):
    analysis = _summarizer(planted).analyze(planted.text)
    expected = _oracle_scores(planted, analysis)

    by_index = {s.index: s.score for s in analysis.ranked}
    for index, score in enumerate(expected):
        assert by_index[index] == pytest.approx(score, rel=1e-9, abs=1e-12)
    assert analysis.summary.indexes == _oracle_selection(planted, expected, 0.3)


def test_planted_topic_sentences_mode(planted):
    summary = _summarizer(planted, budget_mode="sentences").summarize(planted.text)
    # ceil(0.3 * 10) = 3 sentences, all from group A.
    assert summary.indexes == [0, 1, 3]


def test_full_ratio_keeps_everything(planted):
    summarizer = _summarizer(planted, ratio=1.0)
    summary = summarizer.summarize(planted.text)
    assert summary.indexes == list(range(len(planted.sentences)))
    rendered = ranking.render_summary(summary, planted.text)
    assert rendered.splitlines() == [" ".join(s) + "." for s in planted.sentences]


def test_summarize_is_deterministic(planted):
    first = _summarizer(planted).analyze(planted.text)
    second = _summarizer(planted).analyze(planted.text)
    assert ranking.render_summary(first.summary, first.text) == (
        ranking.render_summary(second.summary, second.text)
    )
    assert ranking.format_trace(first.ranked) == ranking.format_trace(second.ranked)


def test_fewer_terms_than_keywords(planted):
    summarizer = _summarizer(planted, k=10)
    analysis = summarizer.analyze("a0 a1. b0.")
    assert len(analysis.concepts) <= 3
    assert analysis.summary.selected


def test_single_sentence(planted):
    summary = _summarizer(planted).summarize("a0 a1 b0 a2")
    assert summary.indexes == [0]


def test_all_oov(planted):
    with pytest.raises(exception.NoScoreableTerms) as exc_info:
        _summarizer(planted).summarize("zz yy. xx.", document="oov.txt")
    assert exc_info.value.exit_code == exception.EXIT_EMPTY_RESULT
    assert "oov.txt" in str(exc_info.value)


@pytest.mark.parametrize("text", ["", "...", "  \n "])
def test_empty_document(planted, text):
    with pytest.raises(exception.EmptyDocument) as exc_info:
        _summarizer(planted).summarize(text)
    assert exc_info.value.exit_code == exception.EXIT_EMPTY_RESULT


def test_stopwords_are_not_scored(planted):
    summarizer = pipeline.ConceptSummarizer(
        pipeline.PipelineConfig(k=2, expected_dim=0),
        stats=planted.stats,
        table=planted.table,
        stopwords=textprep.StopwordSet.from_words(["a0"]),
    )
    terms = [s.term for s in summarizer.keywords(planted.text)]
    assert "a0" not in terms
    assert terms[0] == "b0"


def test_incompatible_stats(planted):
    config = pipeline.PipelineConfig(
        expected_dim=0, tokenizer=textprep.TokenizerConfig(case_fold=False)
    )
    with pytest.raises(exception.IncompatibleStats):
        pipeline.ConceptSummarizer(config, stats=planted.stats, table=planted.table)


def test_missing_resources(planted):
    with pytest.raises(exception.MissingParameterValue):
        pipeline.ConceptSummarizer(pipeline.PipelineConfig(), table=planted.table)
    with pytest.raises(exception.MissingParameterValue):
        pipeline.ConceptSummarizer(pipeline.PipelineConfig(), stats=planted.stats)


def test_loads_resources_from_paths(tmp_path, planted):
    from conceptsum import corpus_stats

    stats_path = tmp_path / "stats.json"
    vectors_path = tmp_path / "vectors.txt"
    stop_path = tmp_path / "stop.txt"
    corpus_stats.save_stats(planted.stats, stats_path)
    utils.write_embeddings(vectors_path, planted.vectors)
    textprep.write_stopwords(stop_path, ["b3"])
    config = pipeline.PipelineConfig(
        stats_path=str(stats_path),
        embeddings_path=str(vectors_path),
        stopwords_path=str(stop_path),
        expected_dim=utils.PLANTED_DIM,
        k=2,
        ratio=0.3,
    )
    summarizer = pipeline.ConceptSummarizer(config)
    assert "b3" in summarizer.stopwords
    assert summarizer.summarize(planted.text).indexes == [0, 1, 3]


def test_embedding_dimension_checked(tmp_path, planted):
    vectors_path = tmp_path / "vectors.txt"
    utils.write_embeddings(vectors_path, planted.vectors)
    config = pipeline.PipelineConfig(embeddings_path=str(vectors_path))
    with pytest.raises(exception.DimensionMismatch):
        pipeline.ConceptSummarizer(config, stats=planted.stats)


def test_concepts_without_summary(planted):
    analysis = _summarizer(planted).analyze(planted.text, summarize=False)
    assert analysis.summary is None
    assert analysis.ranked == []
    assert analysis.points["a0"] == pytest.approx(4 / 3)


@pytest.mark.parametrize(
    "kwargs",
    [
        pytest.param({"k": 0}, id="k"),
        pytest.param({"ratio": 0.0}, id="ratio_zero"),
        pytest.param({"ratio": 1.01}, id="ratio_above_one"),
        pytest.param({"count_mode": "tokens"}, id="count_mode"),
        pytest.param({"budget_mode": "bytes"}, id="budget_mode"),
        pytest.param({"expected_dim": -1}, id="expected_dim"),
    ],
)
def test_pipeline_config_invalid(kwargs):
    with pytest.raises(exception.InvalidParameterValue):
        pipeline.PipelineConfig(**kwargs)


def test_pipeline_config_from_conf(set_config):
    set_config(k=5, ratio=0.5, seed=3, group="summarizer")
    set_config(case_fold=False, group="tokenizer")
    config = pipeline.PipelineConfig.from_conf(CONF, ratio=0.4, k=None)
    assert config.k == 5
    assert config.ratio == 0.4
    assert config.seed == 3
    assert config.kmeans.seed == 3
    assert config.tokenizer.case_fold is False


def test_pipeline_config_from_conf_pretokenized(set_config):
    set_config(driver="pretokenized", group="tokenizer")
    config = pipeline.PipelineConfig.from_conf(CONF)
    assert config.tokenizer.sentence_terminators == frozenset("\n")


def test_pipeline_config_from_conf_unknown_override():
    with pytest.raises(exception.InvalidParameterValue):
        pipeline.PipelineConfig.from_conf(CONF, clusters=4)
