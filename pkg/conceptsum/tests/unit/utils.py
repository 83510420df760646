"""conceptsum test utilities."""

import dataclasses
from typing import TYPE_CHECKING

import numpy as np
from stevedore import extension, named

from conceptsum import corpus_stats
from conceptsum import embeddings
from conceptsum import textprep
from conceptsum.common import driver_factory
from conceptsum.driver.tokenizer.pretokenized import PretokenizedTokenizer
from conceptsum.driver.tokenizer.unicode import UnicodeTokenizer

if TYPE_CHECKING:
    from pytest_mock import MockerFixture


TOKENIZER_NAMESPACE = "conceptsum.tokenizer"
TOKENIZER_DRIVERS = {
    TOKENIZER_NAMESPACE: {
        "unicode": UnicodeTokenizer,
        "pretokenized": PretokenizedTokenizer,
    }
}


def basis(dim, i, scale=1.0) -> "np.ndarray":
    vector = np.zeros(dim)
    vector[i] = scale
    return vector


def get_test_table(vectors: dict, normalized=False) -> "embeddings.EmbeddingTable":
    return embeddings.EmbeddingTable.from_vectors(vectors, normalized=normalized)


def get_test_stats(
    doc_freq: dict, doc_count=None, coll_freq=None, config=None
) -> "corpus_stats.CorpusStats":
    """Build corpus statistics directly from frequencies.

    ``doc_count`` defaults to the highest document frequency and
    ``coll_freq`` to ``doc_freq``.
    """
    config = config or textprep.TokenizerConfig()
    if doc_count is None:
        doc_count = max(doc_freq.values(), default=0)
    return corpus_stats.CorpusStats(
        doc_count=doc_count,
        doc_freq=dict(doc_freq),
        coll_freq=dict(coll_freq or doc_freq),
        tokenizer_fingerprint=config.fingerprint,
    )


def write_embeddings(path, vectors: dict, header=True):
    """Write vectors in the word2vec text format."""
    dim = len(next(iter(vectors.values())))
    lines = [f"{len(vectors)} {dim}"] if header else []
    for word, vector in vectors.items():
        lines.append(" ".join([word] + [repr(float(v)) for v in vector]))
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


@dataclasses.dataclass
class PlantedTopic:
    """A document written from two unrelated groups of words.

    Group A words are rarer in the corpus (idf 2) than group B words (idf 1),
    so sentences written from group A should make up the summary.
    """

    vectors: dict
    stats: "corpus_stats.CorpusStats"
    sentences: "list[list[str]]"
    group_a: "list[str]"
    group_b: "list[str]"

    @property
    def table(self) -> "embeddings.EmbeddingTable":
        return get_test_table(self.vectors)

    @property
    def text(self) -> str:
        return " ".join(" ".join(words) + "." for words in self.sentences)

    @property
    def a_sentences(self) -> "list[int]":
        return [
            i
            for i, words in enumerate(self.sentences)
            if set(words) <= set(self.group_a)
        ]


PLANTED_DIM = 18
PLANTED_SENTENCES = [
    "a0 a0 a0 a0",
    "a0 a0 a1 a1",
    "b0 b0 b0 b1",
    "a1 a1 a2 a2",
    "a2 a3 a3 a3",
    "b0 b0 b0 b2",
    "a4 a4 a4 a5",
    "a5 a5 a6 a6",
    "b0 b0 b0 b3",
    "a6 a7 a7 a7",
]


def planted_topic(config=None) -> PlantedTopic:
    """Two orthogonal 8-word groups; 7 sentences use A and 3 use B."""
    group_a = [f"a{i}" for i in range(8)]
    group_b = [f"b{i}" for i in range(8)]
    vectors = {}
    for i, word in enumerate(group_a):
        vectors[word] = basis(PLANTED_DIM, 0) + basis(
            PLANTED_DIM, 2 + i, 0.05 + 0.01 * i
        )
    for i, word in enumerate(group_b):
        vectors[word] = basis(PLANTED_DIM, 1) + basis(
            PLANTED_DIM, 10 + i, 0.05 + 0.01 * i
        )
    # log2(4 / 1) = 2 and log2(4 / 2) = 1
    doc_freq = {w: 1 for w in group_a}
    doc_freq.update({w: 2 for w in group_b})
    stats = get_test_stats(doc_freq, doc_count=4, config=config)
    return PlantedTopic(
        vectors=vectors,
        stats=stats,
        sentences=[s.split() for s in PLANTED_SENTENCES],
        group_a=group_a,
        group_b=group_b,
    )


def mock_drivers(mocker: "MockerFixture", namespaces: dict = None):
    """Mock out drivers dynamically included via entry_points.

    This can be used to create one-off test drivers for tokenizers in unit
    tests.

    This works by mocking ``_create_extension_manager`` under the hood.

    Args:
        namespaces (dict): A mapping of entry_point namespaces to the
            drivers that should be mocked under that entry_point. These drivers
            will replace any drivers already configured. The drivers should
            be a mapping of driver name to the implementation class, e.g.::

                {
                    "my-driver": MyDriver,
                    "my-other-driver": MyOtherDriver,
                }
    """
    orig_create_extension_manager = driver_factory._create_extension_manager

    def _create_extension_manager(_namespace, names, **kwargs):
        if _namespace not in namespaces:
            return orig_create_extension_manager(_namespace, names, **kwargs)

        drivers = namespaces[_namespace]
        extensions = [
            extension.Extension(name, entry_point=None, plugin=driver_class, obj=None)
            for name, driver_class in drivers.items()
            # The caller will specify an allowlist of names to add to the
            # extension manager; ensure we respect this.
            if name in names
        ]
        on_load_failure_callback = kwargs["on_load_failure_callback"]
        em = named.NamedExtensionManager.make_test_instance(
            extensions, _namespace, on_load_failure_callback=on_load_failure_callback
        )
        # NOTE(jason): ``make_test_instance`` doesn't actually do anything with
        # the on_load_failure_callback, nor does it attempt to invoke the
        # entrypoints. So, we do a kludgy mimicry of this here.
        for ext in extensions:
            try:
                ext.obj = ext.plugin()
            except Exception as exc:
                on_load_failure_callback(em, ext, exc)
        return em

    (
        mocker.patch(
            "conceptsum.common.driver_factory._create_extension_manager"
        ).side_effect
    ) = _create_extension_manager
