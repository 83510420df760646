"""Concept clustering of a document's terms.

The document's scoreable terms are placed on the unit sphere and clustered
with Lloyd's k-means, seeded at the top keywords. Each cluster is a concept;
the member closest to the converged centroid is its criterion word, and the
concept's score sums each member's point weighted by its nearness to that
criterion word.
"""

import dataclasses
import json
import math
import random
from typing import TYPE_CHECKING

import numpy as np
from oslo_log import log

from conceptsum import embeddings
from conceptsum.common import exception

if TYPE_CHECKING:
    from typing import Mapping, Sequence

    from conceptsum.embeddings import EmbeddingTable
    from conceptsum.keywords import KeywordScore

LOG = log.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class KMeansConfig:
    k: int = 10
    max_iters: int = 100
    tol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise exception.InvalidParameterValue(msg=f"k must be >= 1, got {self.k}")
        if self.max_iters < 1:
            raise exception.InvalidParameterValue(
                msg=f"max_iters must be >= 1, got {self.max_iters}"
            )
        if not self.tol >= 0:
            raise exception.InvalidParameterValue(
                msg=f"tol must be >= 0, got {self.tol}"
            )


@dataclasses.dataclass(frozen=True)
class KMeansResult:
    """Outcome of :func:`kmeans`.

    Attributes:
        assignments (dict): term -> cluster id.
        centroids (np.ndarray): ``k x dim`` centroids; ``assignments`` is the
            nearest-centroid partition for exactly these centroids.
        objectives (list[float]): Sum of squared distances after each
            assignment step, first entry for the initial centers.
        iterations (int): Number of update steps performed.
        converged (bool): Whether the stop criterion was met before
            ``max_iters``.
    """

    assignments: "dict[str, int]"
    centroids: "np.ndarray"
    objectives: "list[float]"
    iterations: int
    converged: bool

    def __iter__(self):
        return iter((self.assignments, self.centroids))


@dataclasses.dataclass(frozen=True)
class Concept:
    """One cluster of document terms.

    Attributes:
        id (int): Cluster id, the index of the keyword that seeded it.
        members (tuple[str]): Member terms, in document ranking order.
        centroid (np.ndarray): Converged cluster center.
        criterion_word (str): Member nearest to the centroid.
        nearness (dict): term -> closeness to the criterion word, in [0, 1].
        score (float): Sum of ``point(w) * nearness(w)`` over members.
        seed_keyword (str): The keyword the cluster was seeded with.
    """

    id: int
    members: "tuple[str, ...]"
    centroid: "np.ndarray" = dataclasses.field(compare=False)
    criterion_word: str
    nearness: "dict[str, float]" = dataclasses.field(default_factory=dict)
    score: float = 0.0
    seed_keyword: str = ""

    def __contains__(self, term):
        return term in self.members


def squared_distances(points: "np.ndarray", centroids: "np.ndarray") -> "np.ndarray":
    """``n x k`` matrix of squared Euclidean distances."""
    diff = points[:, np.newaxis, :] - centroids[np.newaxis, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _assign(points, centroids):
    d2 = squared_distances(points, centroids)
    # argmin keeps the lowest cluster id on ties.
    labels = np.argmin(d2, axis=1)
    objective = math.fsum(d2[np.arange(len(points)), labels])
    return labels, objective


def _reseed_empty(points, terms, labels, centroids, rng):
    """Move the farthest points into empty clusters.

    A point is only taken from a cluster it does not hold alone. Candidates
    are ordered by distance to their centroid descending, then by term; the
    seeded generator only breaks exact ties between equal terms.
    """
    k = len(centroids)
    sizes = np.bincount(labels, minlength=k)
    empty = [j for j in range(k) if sizes[j] == 0]
    if not empty:
        return labels, centroids

    labels = labels.copy()
    centroids = centroids.copy()
    d2 = squared_distances(points, centroids)[np.arange(len(points)), labels]
    order = sorted(
        range(len(points)), key=lambda i: (-d2[i], terms[i], rng.random())
    )
    taken = set()
    for j in empty:
        for i in order:
            if i in taken or sizes[labels[i]] < 2:
                continue
            LOG.debug("Reseeding empty cluster %d with '%s'", j, terms[i])
            sizes[labels[i]] -= 1
            sizes[j] += 1
            labels[i] = j
            centroids[j] = points[i]
            taken.add(i)
            break
    return labels, centroids


def _means(points, labels, centroids):
    updated = centroids.copy()
    for j in range(len(centroids)):
        # Boolean indexing keeps rows in point order, so the summation
        # order is fixed.
        members = points[labels == j]
        if len(members):
            updated[j] = members.sum(axis=0) / len(members)
    return updated


def kmeans(
    points: "Sequence[tuple[str, Sequence[float]]]",
    initial_centers: "Sequence[Sequence[float]]",
    config: KMeansConfig,
) -> KMeansResult:
    """Lloyd's k-means under squared Euclidean distance.

    Args:
        points: (term, unit vector) pairs.
        initial_centers: One starting centroid per cluster.
        config: Iteration limits and the reseeding seed.

    Returns:
        The final partition and centroids. The objective never increases
        from one iteration to the next.

    Raises:
        TooFewPoints: if there are more centers than points.
        DimensionMismatch: if vectors differ in length.
    """
    terms = [term for term, _ in points]
    if not initial_centers:
        raise exception.InvalidParameterValue(msg="At least one center is required")
    if len(initial_centers) > len(points):
        raise exception.TooFewPoints(centers=len(initial_centers), points=len(points))
    try:
        X = np.array([np.asarray(v, dtype=np.float64) for _, v in points])
        C = np.array([np.asarray(c, dtype=np.float64) for c in initial_centers])
    except ValueError:
        raise exception.DimensionMismatch(
            expected="equal", actual="ragged", where="k-means input"
        )
    if X.ndim != 2 or C.ndim != 2 or X.shape[1] != C.shape[1]:
        raise exception.DimensionMismatch(
            expected=X.shape[-1], actual=C.shape[-1], where="k-means centers"
        )

    rng = random.Random(config.seed)
    labels, objective = _assign(X, C)
    objectives = [objective]
    converged = False
    iterations = 0
    for iterations in range(1, config.max_iters + 1):
        labels, C_seeded = _reseed_empty(X, terms, labels, C, rng)
        C_next = _means(X, labels, C_seeded)
        next_labels, objective = _assign(X, C_next)
        objectives.append(objective)

        scale = np.linalg.norm(C)
        shift = np.linalg.norm(C_next - C)
        moved = shift / scale if scale > 0.0 else shift
        stable = np.array_equal(next_labels, labels)
        C, labels = C_next, next_labels
        if stable or moved < config.tol:
            converged = True
            break

    LOG.debug(
        "k-means with %d clusters over %d points: %d iterations, "
        "objective %.6g, converged=%s",
        len(C),
        len(X),
        iterations,
        objectives[-1],
        converged,
    )
    return KMeansResult(
        assignments={term: int(label) for term, label in zip(terms, labels)},
        centroids=C,
        objectives=objectives,
        iterations=iterations,
        converged=converged,
    )


def _unit(table: "EmbeddingTable", term: str) -> "np.ndarray":
    vector = table.row(term)
    if vector is None:
        raise exception.ContractViolation(
            msg=f"'{term}' has no vector in the embedding table"
        )
    norm = np.linalg.norm(vector)
    if norm == 0.0:
        raise exception.UndefinedSimilarity()
    return vector / norm


def nearness(term: str, concept: Concept, table: "EmbeddingTable") -> float:
    """Closeness of a member to its concept's criterion word.

    Realized as the cosine between the two vectors, floored at 0.

    Raises:
        ContractViolation: if ``term`` is not a member of ``concept``.
    """
    if term not in concept.members:
        raise exception.ContractViolation(
            msg=f"'{term}' is not a member of concept {concept.id}"
        )
    if term == concept.criterion_word:
        return 1.0
    return max(
        0.0,
        embeddings.cosine(table.row(term), table.row(concept.criterion_word)),
    )


def concept_score(concept: Concept, keyword_scores: "Mapping[str, float]") -> float:
    """Sum of ``point(w) * nearness(w)`` over the concept's distinct members.

    Raises:
        ContractViolation: if a member has no point.
    """
    missing = [w for w in concept.members if w not in keyword_scores]
    if missing:
        raise exception.ContractViolation(
            msg=f"No point for members of concept {concept.id}: {missing}"
        )
    return math.fsum(
        keyword_scores[w] * concept.nearness[w] for w in dict.fromkeys(concept.members)
    )


def _criterion_word(table, members, centroid) -> str:
    if np.linalg.norm(centroid) == 0.0:
        # Members cancel out; every member is equally near.
        return min(members)
    return embeddings.nearest_word(table, centroid, candidates=members)


def build_concepts(
    doc_terms: "Sequence[KeywordScore]",
    table: "EmbeddingTable",
    keywords: "Sequence[str]",
    config: KMeansConfig,
) -> "list[Concept]":
    """Cluster a document's scored terms into concepts.

    Args:
        doc_terms: The document's scored terms, as returned by
            :func:`conceptsum.keywords.score_words`.
        table: Embedding table holding every term.
        keywords: Keywords in rank order; the first ``k`` seed the clusters.
        config: Clustering parameters.

    Returns:
        One concept per non-empty cluster, ordered by cluster id.

    Raises:
        NoScoreableTerms: if ``doc_terms`` is empty.
        ContractViolation: if a keyword is not among ``doc_terms``.
    """
    if not doc_terms:
        raise exception.NoScoreableTerms(document="<input>")
    terms = list(dict.fromkeys(s.term for s in doc_terms))
    known = set(terms)
    unknown = [w for w in keywords if w not in known]
    if unknown:
        raise exception.ContractViolation(
            msg=f"Keywords missing from the document terms: {unknown}"
        )
    k = min(config.k, len(keywords), len(terms))
    if k < config.k:
        LOG.info("Only %d concepts can be formed (k=%d requested)", k, config.k)
    if k < 1:
        raise exception.InvalidParameterValue(msg="No keywords to seed clusters with")

    points = [(term, _unit(table, term)) for term in terms]
    vectors = dict(points)
    seeds = list(keywords[:k])
    result = kmeans(points, [vectors[w] for w in seeds], config)

    point_of = {s.term: s.point for s in doc_terms}
    concepts = []
    for cluster_id in range(k):
        members = tuple(t for t in terms if result.assignments[t] == cluster_id)
        if not members:
            continue
        centroid = result.centroids[cluster_id]
        concept = Concept(
            id=cluster_id,
            members=members,
            centroid=centroid,
            criterion_word=_criterion_word(table, members, centroid),
            seed_keyword=seeds[cluster_id],
        )
        for term in members:
            concept.nearness[term] = nearness(term, concept, table)
        concept = dataclasses.replace(concept, score=concept_score(concept, point_of))
        concepts.append(concept)
    LOG.debug("Built %d concepts from %d terms", len(concepts), len(terms))
    return concepts


def concept_index(concepts: "Sequence[Concept]") -> "dict[str, Concept]":
    """term -> the concept it belongs to."""
    return {term: concept for concept in concepts for term in concept.members}


def format_concepts(
    concepts: "Sequence[Concept]",
    keyword_scores: "Mapping[str, float]",
    as_json=False,
) -> str:
    """Describe concepts for inspection.

    Args:
        concepts: The concepts, as returned by :func:`build_concepts`.
        keyword_scores: term -> point.
        as_json (bool): Emit a JSON document instead of TSV rows.

    Returns:
        Either one TSV row per member, with columns id, criterion,
        concept_score, term, point and nearness, or a JSON list of concepts.
    """
    if as_json:
        doc = [
            {
                "id": c.id,
                "criterion_word": c.criterion_word,
                "seed_keyword": c.seed_keyword,
                "score": c.score,
                "members": [
                    {
                        "term": term,
                        "point": keyword_scores[term],
                        "nearness": c.nearness[term],
                    }
                    for term in c.members
                ],
            }
            for c in concepts
        ]
        return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"

    lines = ["id\tcriterion\tconcept_score\tterm\tpoint\tnearness"]
    for c in concepts:
        for term in c.members:
            lines.append(
                f"{c.id}\t{c.criterion_word}\t{c.score:.6f}\t{term}\t"
                f"{keyword_scores[term]:.6f}\t{c.nearness[term]:.6f}"
            )
    return "\n".join(lines) + "\n"
