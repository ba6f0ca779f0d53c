"""Sentence segmentation, embedding backends and evidence ranking.

Articles are split into sentences, the claim and all sentences are
embedded in one batched backend call, and sentences are ranked by cosine
similarity to the claim. The top k (default 5) become the evidence fed
to veracity prediction.
"""

import re
import zlib
from dataclasses import dataclass
from importlib import resources
from typing import Protocol, Sequence

import numpy as np
from scipy import sparse

from ._text import tokenize

DEFAULT_TOP_K = 5

_PUNCT_RUN = re.compile(r"[.!?]+")


def _load_abbreviations() -> frozenset[str]:
    text = resources.files("healthfc").joinpath("data", "abbreviations.txt").read_text("utf-8")
    abbrevs = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            abbrevs.add(line.lower())
    return frozenset(abbrevs)


_ABBREVIATIONS = _load_abbreviations()


def segment_sentences(text: str, abbreviations: frozenset[str] | None = None) -> list[str]:
    """Deterministically split text into sentences.

    A split happens after a run of sentence-terminal punctuation (. ! ?)
    followed by whitespace and an uppercase letter, or at end of text.
    A trailing word matching the bundled abbreviation list ("U.S.",
    "Dr.", ...) suppresses the split. Sentences are whitespace-trimmed
    and empties dropped; sentence index equals list position.
    """
    if abbreviations is None:
        abbreviations = _ABBREVIATIONS
    sentences: list[str] = []
    start = 0
    for m in _PUNCT_RUN.finditer(text):
        end = m.end()
        if end < len(text):
            ws = re.match(r"\s+", text[end:])
            if not ws:
                continue
            follow = text[end + ws.end() : end + ws.end() + 1]
            if follow and not (follow.isalpha() and follow.isupper()):
                continue
        if m.group() == ".":
            # The whole whitespace-delimited word ending at this period,
            # e.g. "U.S." when the match is its final dot.
            word_match = re.search(r"\S+$", text[:end])
            if word_match and word_match.group().lower() in abbreviations:
                continue
        piece = text[start:end].strip()
        if piece:
            sentences.append(piece)
        start = end
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def cosine(u, v) -> float:
    """Cosine similarity dot(u, v) / (|u| |v|), in [-1, 1].

    Raises ``ValueError`` on dimension mismatch or a zero vector.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine undefined for zero vector")
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


class EmbeddingBackend(Protocol):
    """Anything that maps a batch of texts to equal-dimension real vectors.

    ``embed`` must be deterministic for a fixed configuration and return
    one row per input text, as a dense ndarray or a scipy sparse matrix.
    """

    def embed(self, texts: Sequence[str]): ...


class HashedTfidfBackend:
    """Native embedding backend: hashed unigram+bigram TF-IDF vectors.

    Token n-grams are hashed into a fixed-dimension space (CRC32, stable
    across processes), weighted by TF-IDF with IDF computed over the
    batch, and L2-normalized so cosine reduces to a dot product. Runs
    with no model service; a served sentence encoder can be swapped in
    behind the same interface.
    """

    def __init__(self, dim: int = 2**18):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim

    def _feature_ids(self, text: str) -> list[int]:
        toks = tokenize(text)
        feats = list(toks)
        feats.extend(" ".join(pair) for pair in zip(toks, toks[1:]))
        return [zlib.crc32(f.encode("utf-8")) % self.dim for f in feats]

    def embed(self, texts: Sequence[str]) -> sparse.csr_matrix:
        n = len(texts)
        rows, cols, counts = [], [], []
        df: dict[int, int] = {}
        for i, text in enumerate(texts):
            tf: dict[int, int] = {}
            for fid in self._feature_ids(text):
                tf[fid] = tf.get(fid, 0) + 1
            for fid, c in tf.items():
                rows.append(i)
                cols.append(fid)
                counts.append(c)
                df[fid] = df.get(fid, 0) + 1
        idf = {fid: np.log((1.0 + n) / (1.0 + d)) + 1.0 for fid, d in df.items()}
        data = [c * idf[fid] for c, fid in zip(counts, cols)]
        mat = sparse.csr_matrix((data, (rows, cols)), shape=(n, self.dim), dtype=float)
        norms = _row_norms(mat)
        norms[norms == 0.0] = 1.0
        inv = sparse.diags(1.0 / norms)
        return (inv @ mat).tocsr()


@dataclass
class EvidenceRanking:
    """Scored, ordered evidence sentences for one claim."""

    claim_id: str
    ranked: list[tuple[int, float]]
    k: int

    @property
    def k_selected(self) -> list[tuple[int, float]]:
        return self.ranked[: min(self.k, len(self.ranked))]

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "indices": [i for i, _ in self.ranked],
            "scores": [s for _, s in self.ranked],
            "k": self.k,
        }


def _row_norms(matrix) -> np.ndarray:
    return np.sqrt(np.asarray(matrix.multiply(matrix).sum(axis=1)).ravel())


def _similarity_to_first(matrix) -> np.ndarray:
    """Cosine of every row after the first against row 0."""
    if sparse.issparse(matrix):
        norms = _row_norms(matrix)
        sims = np.asarray((matrix[1:] @ matrix[0].T).todense()).ravel()
    else:
        matrix = np.asarray(matrix, dtype=float)
        norms = np.linalg.norm(matrix, axis=1)
        sims = matrix[1:] @ matrix[0]
    denom = norms[1:] * norms[0]
    zero = denom == 0.0
    denom[zero] = 1.0
    sims = sims / denom
    sims[zero] = 0.0  # zero vectors carry no signal, score 0
    return np.clip(sims, -1.0, 1.0)


def rank_evidence(
    claim: str,
    sentences: Sequence[str],
    backend: EmbeddingBackend,
    k: int = DEFAULT_TOP_K,
    claim_id: str = "",
) -> EvidenceRanking:
    """Rank article sentences by cosine similarity to the claim.

    The claim and all sentences go to the backend in a single batch.
    Ties break by ascending document index, which favors earlier
    sentences. ``k_selected`` holds the first min(k, n) entries.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not sentences:
        return EvidenceRanking(claim_id=claim_id, ranked=[], k=k)
    matrix = backend.embed([claim, *sentences])
    n_rows = matrix.shape[0]
    if n_rows != len(sentences) + 1:
        raise ValueError(f"backend returned {n_rows} rows for {len(sentences) + 1} texts")
    sims = _similarity_to_first(matrix)
    order = sorted(range(len(sentences)), key=lambda i: (-sims[i], i))
    ranked = [(i, float(sims[i])) for i in order]
    return EvidenceRanking(claim_id=claim_id, ranked=ranked, k=k)
