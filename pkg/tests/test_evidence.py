import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from healthfc.evidence import (
    EvidenceRanking,
    HashedTfidfBackend,
    cosine,
    rank_evidence,
    segment_sentences,
)


class TestSegmentation:
    def test_two_sentences(self):
        assert segment_sentences("A man lost his wife. He spoke Tuesday.") == [
            "A man lost his wife.",
            "He spoke Tuesday.",
        ]

    def test_abbreviation_guard(self):
        text = "Families tell U.S. lawmakers of heparin deaths."
        assert segment_sentences(text) == [text]

    def test_abbreviation_before_uppercase(self):
        text = "The U.S. Government issued guidance. Hospitals complied."
        assert segment_sentences(text) == [
            "The U.S. Government issued guidance.",
            "Hospitals complied.",
        ]

    def test_honorific(self):
        text = "Dr. Smith spoke to Mr. Jones. Both agreed."
        assert segment_sentences(text) == ["Dr. Smith spoke to Mr. Jones.", "Both agreed."]

    def test_empty(self):
        assert segment_sentences("") == []
        assert segment_sentences("   ") == []

    def test_exclamation_and_question(self):
        assert segment_sentences("It spread fast! Officials reacted? They did.") == [
            "It spread fast!",
            "Officials reacted?",
            "They did.",
        ]

    def test_lowercase_continuation_not_split(self):
        assert segment_sentences("He cited p. 4 of the report.") == [
            "He cited p. 4 of the report."
        ]

    def test_no_terminal_punctuation(self):
        assert segment_sentences("a bare fragment") == ["a bare fragment"]

    def test_indices_are_positions(self):
        sents = segment_sentences("One. Two. Three.")
        assert list(enumerate(sents)) == [(0, "One."), (1, "Two."), (2, "Three.")]

    def test_no_empty_sentences(self):
        assert all(s for s in segment_sentences("Edge. . Case."))


class TestCosine:
    def test_identity(self):
        v = [1.0, 2.0, 3.0]
        assert cosine(v, v) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal(self):
        assert cosine([1, 0], [0, 1]) == pytest.approx(0.0, abs=1e-12)

    def test_hand_value(self):
        assert cosine([1, 0], [1, 1]) == pytest.approx(1 / np.sqrt(2), abs=1e-12)

    def test_antiparallel(self):
        assert cosine([2, 0], [-3, 0]) == pytest.approx(-1.0, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            cosine([1, 2], [1, 2, 3])

    def test_zero_vector(self):
        with pytest.raises(ValueError):
            cosine([0, 0], [1, 2])


class TestHashedBackend:
    def test_rows_are_unit_norm(self):
        backend = HashedTfidfBackend()
        mat = backend.embed(["the flu vaccine is safe", "bananas are yellow", "flu"])
        norms = np.sqrt(np.asarray(mat.multiply(mat).sum(axis=1)).ravel())
        np.testing.assert_allclose(norms, 1.0, rtol=0, atol=1e-12)

    def test_deterministic_across_calls(self):
        backend = HashedTfidfBackend()
        a = backend.embed(["some claim", "other text"]).toarray()
        b = backend.embed(["some claim", "other text"]).toarray()
        np.testing.assert_array_equal(a, b)

    def test_cosine_equals_dot_for_unit_rows(self):
        backend = HashedTfidfBackend()
        mat = backend.embed(["flu shots protect patients", "flu shots are common"]).toarray()
        dot = float(mat[0] @ mat[1])
        assert cosine(mat[0], mat[1]) == pytest.approx(dot, abs=1e-12)


class StubBackend:
    """Deterministic dense embeddings derived from a seed and the text hash."""

    def __init__(self, seed: int, dim: int = 16):
        self.seed = seed
        self.dim = dim

    def embed(self, texts):
        rows = []
        for text in texts:
            rng = np.random.default_rng([self.seed, abs(hash(text)) % 2**32])
            rows.append(rng.normal(size=self.dim))
        return np.stack(rows)


class TestRankEvidence:
    BACKEND = HashedTfidfBackend()

    def test_identical_sentence_ranks_first(self):
        claim = "The flu vaccine is safe for children."
        sentences = ["Bananas are yellow.", claim, "Weather was mild."]
        ranking = rank_evidence(claim, sentences, self.BACKEND)
        assert ranking.ranked[0][0] == 1
        assert ranking.ranked[0][1] == pytest.approx(1.0, abs=1e-9)

    def test_k_clamp(self):
        claim = "flu vaccine safety"
        sentences = ["The flu vaccine is safe.", "Bananas are yellow.", "It rained."]
        ranking = rank_evidence(claim, sentences, self.BACKEND, k=5)
        assert len(ranking.k_selected) == 3

    def test_tfidf_relevance_ordering(self):
        ranking = rank_evidence(
            "flu vaccine safety",
            ["The flu vaccine is safe.", "Bananas are yellow."],
            self.BACKEND,
        )
        assert [i for i, _ in ranking.ranked] == [0, 1]
        assert ranking.ranked[0][1] > ranking.ranked[1][1]

    def test_empty_sentences_empty_ranking(self):
        ranking = rank_evidence("claim", [], self.BACKEND)
        assert ranking.ranked == [] and ranking.k_selected == []

    def test_k_below_one_rejected(self):
        with pytest.raises(ValueError):
            rank_evidence("claim", ["a sentence"], self.BACKEND, k=0)

    @settings(max_examples=60, deadline=None)
    @given(
        seed=st.integers(0, 2**31),
        n_sentences=st.integers(1, 12),
        k=st.integers(1, 8),
    )
    def test_ranking_is_a_permutation_with_monotone_scores(self, seed, n_sentences, k):
        backend = StubBackend(seed)
        sentences = [f"sentence number {i}" for i in range(n_sentences)]
        ranking = rank_evidence("the claim text", sentences, backend, k=k)
        indices = [i for i, _ in ranking.ranked]
        assert sorted(indices) == list(range(n_sentences))
        scores = [s for _, s in ranking.ranked]
        assert all(a >= b for a, b in zip(scores, scores[1:]))
        assert len(ranking.k_selected) == min(k, n_sentences)
        assert all(-1.0 <= s <= 1.0 for s in scores)

    def test_ties_break_by_document_index(self):
        class ConstantBackend:
            def embed(self, texts):
                return np.ones((len(texts), 4))

        ranking = rank_evidence("claim", ["a", "b", "c"], ConstantBackend())
        assert [i for i, _ in ranking.ranked] == [0, 1, 2]

    def test_serialization(self):
        ranking = EvidenceRanking(claim_id="x", ranked=[(1, 0.5), (0, 0.25)], k=5)
        d = ranking.to_dict()
        assert d == {"claim_id": "x", "indices": [1, 0], "scores": [0.5, 0.25], "k": 5}
