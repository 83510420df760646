"""Pretrained word embedding tables and similarity queries.

Tables are read from the word2vec text format: an optional header line
``vocab_size dim`` followed by one ``word v1 ... v_dim`` row per word. Training
is left to whichever external tool produced the file.
"""

import dataclasses
from typing import TYPE_CHECKING

import numpy as np
from oslo_log import log

from conceptsum import textprep
from conceptsum.common import exception

if TYPE_CHECKING:
    from typing import Iterable, Mapping, Optional, Sequence

    from conceptsum.textprep import TokenizerConfig

LOG = log.getLogger(__name__)

# Dimension of the vectors the method was designed around.
DEFAULT_DIM = 300
UNIT_NORM_TOLERANCE = 1e-6


@dataclasses.dataclass(frozen=True)
class WordVector:
    word: str
    components: "np.ndarray"


@dataclasses.dataclass(frozen=True, eq=False)
class EmbeddingTable:
    """An immutable word -> vector map.

    Attributes:
        dim (int): Length of every vector.
        words (tuple[str]): Vocabulary, in row order of ``matrix``.
        matrix (np.ndarray): ``len(words) x dim`` float64 matrix (read-only).
        normalized (bool): Whether every row has unit L2 norm.
        duplicates (int): Rows dropped at load time because a later row had
            the same word.
        removed (int): Zero vectors dropped by :func:`normalize`.
    """

    dim: int
    words: "tuple[str, ...]"
    matrix: "np.ndarray"
    normalized: bool = False
    duplicates: int = 0
    removed: int = 0

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.float64, copy=True)
        if matrix.ndim != 2:
            matrix = matrix.reshape(len(self.words), self.dim)
        if matrix.shape != (len(self.words), self.dim):
            raise exception.DimensionMismatch(
                expected=self.dim, actual=matrix.shape[-1], where="table matrix"
            )
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "words", tuple(self.words))
        index = {word: i for i, word in enumerate(self.words)}
        if len(index) != len(self.words):
            raise exception.InvalidParameterValue(msg="Duplicate words in table")
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_vectors(
        cls, vectors: "Mapping[str, Sequence[float]]", normalized=False
    ) -> "EmbeddingTable":
        words = list(vectors)
        if not words:
            raise exception.InvalidParameterValue(msg="No vectors given")
        matrix = np.array([np.asarray(vectors[w], dtype=np.float64) for w in words])
        return cls(
            dim=matrix.shape[1], words=words, matrix=matrix, normalized=normalized
        )

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return word in self._index

    def row(self, word: str) -> "Optional[np.ndarray]":
        i = self._index.get(word)
        return None if i is None else self.matrix[i]

    @property
    def vectors(self) -> "dict[str, np.ndarray]":
        return {word: self.matrix[i] for word, i in self._index.items()}


def _parse_header(fields) -> "Optional[tuple[int, int]]":
    if len(fields) != 2:
        return None
    try:
        return int(fields[0]), int(fields[1])
    except ValueError:
        return None


def load_embeddings(
    path,
    expected_dim: "Optional[int]" = None,
    config: "Optional[TokenizerConfig]" = None,
) -> EmbeddingTable:
    """Load a table in the word2vec text vector format.

    Args:
        path: The vector file.
        expected_dim (int): If given, the dimension the table must have.
        config (TokenizerConfig): If given, words are folded with it so they
            match tokens produced by the same config.

    Returns:
        The table. When a word occurs twice the last row wins; the number of
        dropped rows is logged and kept in ``duplicates``.

    Raises:
        ResourceNotFound: if the file does not exist.
        EmbeddingParseError: on a malformed row, with its line number.
        DimensionMismatch: if the table's dimension is not ``expected_dim``.
    """
    dim = None
    declared_size = None
    rows = {}
    duplicates = 0
    lineno = 0
    try:
        f = open(path, "r", encoding="utf-8", errors="strict", newline="\n")
    except FileNotFoundError:
        raise exception.ResourceNotFound(resource="Embedding file", path=path)
    with f:
        try:
            for lineno, line in enumerate(f, start=1):
                fields = line.rstrip().split(" ")
                if fields == [""]:
                    continue
                if lineno == 1:
                    header = _parse_header(fields)
                    if header:
                        declared_size, dim = header
                        if dim < 1:
                            raise exception.EmbeddingParseError(
                                path=path, line=lineno, reason="dimension must be >= 1"
                            )
                        continue
                word, values = fields[0], fields[1:]
                if dim is None:
                    dim = len(values)
                    if dim < 1:
                        raise exception.EmbeddingParseError(
                            path=path, line=lineno, reason="row has no components"
                        )
                if len(values) != dim:
                    raise exception.EmbeddingParseError(
                        path=path,
                        line=lineno,
                        reason=f"expected {dim} components, found {len(values)}",
                    )
                try:
                    vector = np.array([float(v) for v in values], dtype=np.float64)
                except ValueError as exc:
                    raise exception.EmbeddingParseError(
                        path=path, line=lineno, reason=exc
                    )
                if not np.all(np.isfinite(vector)):
                    raise exception.EmbeddingParseError(
                        path=path, line=lineno, reason="non-finite component"
                    )
                if config is not None:
                    word = textprep.fold(word, config)
                if word in rows:
                    duplicates += 1
                    del rows[word]
                rows[word] = vector
        except UnicodeDecodeError as exc:
            raise exception.EmbeddingParseError(
                path=path, line=lineno + 1, reason=f"invalid UTF-8 ({exc.reason})"
            )

    if dim is None:
        raise exception.EmbeddingParseError(path=path, line=lineno, reason="no vectors")
    if expected_dim and dim != expected_dim:
        raise exception.DimensionMismatch(
            expected=expected_dim, actual=dim, where=str(path)
        )
    if declared_size is not None and declared_size != len(rows) + duplicates:
        LOG.warning(
            "%s declares %d words but holds %d rows",
            path,
            declared_size,
            len(rows) + duplicates,
        )
    if duplicates:
        LOG.warning(
            "%s: %d duplicate words, kept the last occurrence", path, duplicates
        )

    matrix = np.array(list(rows.values())) if rows else np.empty((0, dim))
    table = EmbeddingTable(
        dim=dim, words=tuple(rows), matrix=matrix, duplicates=duplicates
    )
    LOG.info("Loaded %d %d-dimensional vectors from %s", len(table), dim, path)
    return table


def vector_of(
    table: EmbeddingTable, word: str, config: "Optional[TokenizerConfig]" = None
) -> "Optional[WordVector]":
    """Look a word up, folding it with ``config`` first if given."""
    if config is not None:
        word = textprep.fold(word, config)
    row = table.row(word)
    if row is None:
        return None
    return WordVector(word=word, components=row)


def cosine(u, v) -> float:
    """Cosine similarity of two vectors, clamped into [-1, 1].

    Raises:
        DimensionMismatch: if the vectors differ in length.
        UndefinedSimilarity: if either vector is zero.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise exception.DimensionMismatch(
            expected=u.shape[-1], actual=v.shape[-1], where="cosine"
        )
    norm = np.linalg.norm(u) * np.linalg.norm(v)
    if norm == 0.0:
        raise exception.UndefinedSimilarity()
    return float(min(1.0, max(-1.0, np.dot(u, v) / norm)))


def nearest_word(
    table: EmbeddingTable, query, candidates: "Optional[Iterable[str]]" = None
) -> str:
    """The candidate whose vector has the highest cosine with ``query``.

    Ties go to the lexicographically smallest word.

    Args:
        table: The embedding table.
        query: The query vector.
        candidates: Words to choose from; defaults to the whole vocabulary.

    Raises:
        EmptyCandidates: if there is nothing to choose from.
        NotFound: if a candidate is not in the table.
        UndefinedSimilarity: if the query vector is zero.
    """
    words = sorted(set(table.words if candidates is None else candidates))
    if not words:
        raise exception.EmptyCandidates()
    missing = [w for w in words if w not in table]
    if missing:
        raise exception.NotFound(f"Words not in the embedding table: {missing}")

    query = np.asarray(query, dtype=np.float64)
    if query.shape != (table.dim,):
        raise exception.DimensionMismatch(
            expected=table.dim, actual=query.shape[-1], where="nearest_word query"
        )
    query_norm = np.linalg.norm(query)
    if query_norm == 0.0:
        raise exception.UndefinedSimilarity()

    rows = np.array([table.row(w) for w in words])
    norms = np.linalg.norm(rows, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        sims = (rows @ query) / (norms * query_norm)
    # Zero vectors have no direction and can never be nearest.
    sims = np.where(norms > 0.0, sims, -np.inf)
    if np.all(np.isneginf(sims)):
        raise exception.UndefinedSimilarity()
    # argmax returns the first maximum, i.e. the smallest word.
    return words[int(np.argmax(sims))]


def normalize(table: EmbeddingTable) -> EmbeddingTable:
    """Scale every vector to unit L2 norm, dropping zero vectors."""
    if table.normalized:
        return table
    norms = np.linalg.norm(table.matrix, axis=1)
    keep = norms > 0.0
    removed = int(np.count_nonzero(~keep))
    if removed:
        LOG.warning("Dropped %d zero vectors while normalizing", removed)
    words = tuple(w for w, k in zip(table.words, keep) if k)
    matrix = table.matrix[keep] / norms[keep][:, np.newaxis]
    return EmbeddingTable(
        dim=table.dim,
        words=words,
        matrix=matrix,
        normalized=True,
        duplicates=table.duplicates,
        removed=table.removed + removed,
    )
