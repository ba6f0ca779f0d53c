"""Deterministic model heads served by the API.

Each head is a small, dependency-light stand-in with a stable checkpoint
id, so the service contract can be exercised end to end on any machine.
Heavier pretrained models can replace any head as long as they keep the
same call shape; every head must be deterministic for fixed inputs and
must treat batch items independently (no cross-item state), which is
what makes batch and singleton calls equivalent.
"""

import re
import zlib

import numpy as np

_TOKEN_RE = re.compile(r"[0-9a-z]+")


def _tokens(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


class HashEmbedder:
    """Hashed unigram+bigram term-frequency embeddings, L2 normalized.

    Per-text computation only: no corpus statistics, so a text embeds to
    the same vector regardless of what else is in the batch.
    """

    checkpoint = "hashed-ngram-tf/v1"

    def __init__(self, dim: int = 256):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim

    def embed_one(self, text: str) -> list[float]:
        toks = _tokens(text)
        feats = list(toks) + [" ".join(p) for p in zip(toks, toks[1:])]
        vec = np.zeros(self.dim)
        for f in feats:
            vec[zlib.crc32(f.encode("utf-8")) % self.dim] += 1.0
        norm = float(np.linalg.norm(vec))
        if norm > 0.0:
            vec /= norm
        return [float(x) for x in vec]

    def embed(self, texts: list[str]) -> list[list[float]]:
        return [self.embed_one(t) for t in texts]


class LexicalNli:
    """Token-overlap NLI head with negation-cue contradiction detection.

    Emits a probability triple over the model's own class names; the
    mapping to canonical relation strings lives in service config.
    """

    checkpoint = "lexical-overlap-nli/v1"
    class_names = ("entailment", "contradiction", "neutral")
    _NEGATION = frozenset({"not", "no", "never", "none", "nothing", "false"})

    def __init__(self, threshold: float = 0.5):
        self.threshold = threshold

    def probs_one(self, premise: str, hypothesis: str) -> list[float]:
        p, h = set(_tokens(premise)), set(_tokens(hypothesis))
        overlap = len(p & h) / len(h) if h else 0.0
        negation_flip = (p & self._NEGATION) != (h & self._NEGATION)
        if overlap > self.threshold:
            confident = 0.5 + 0.5 * overlap  # in (0.75, 1.0]
            rest = (1.0 - confident) / 2.0
            if negation_flip:
                triple = [rest, confident, rest]
            else:
                triple = [confident, rest, rest]
        else:
            spread = 0.5 + 0.5 * (1.0 - overlap)
            rest = (1.0 - spread) / 2.0
            triple = [rest, rest, spread]
        total = sum(triple)
        return [x / total for x in triple]

    def predict(self, pairs: list[tuple[str, str]]) -> list[list[float]]:
        return [self.probs_one(p, h) for p, h in pairs]


class CueClassifier:
    """Keyword-cue 4-way veracity scorer over claim plus evidence text.

    A trained transformer normally sits here; the cue head keeps the
    endpoint deterministic and content-sensitive without model weights.
    """

    checkpoint = "lexical-cues-classifier/v1"
    class_names = ("true", "false", "mixture", "unproven")
    _CUES = {
        "true": {"confirmed", "verified", "official", "correct", "genuine", "accurate"},
        "false": {"hoax", "fake", "fabricated", "myth", "debunked", "no", "not", "never"},
        "mixture": {"partly", "partially", "mixed", "half", "some", "overstates"},
        "unproven": {"unproven", "unverified", "unclear", "unknown", "pending", "alleged"},
    }

    def probs_one(self, claim: str, evidence: list[str]) -> list[float]:
        toks = set(_tokens(claim + " " + " ".join(evidence)))
        logits = np.array(
            [len(toks & self._CUES[name]) for name in self.class_names], dtype=float
        )
        e = np.exp(logits - logits.max())
        probs = e / e.sum()
        return [float(x) for x in probs]

    def predict(self, items: list[tuple[str, list[str]]]) -> list[list[float]]:
        return [self.probs_one(claim, evidence) for claim, evidence in items]


class LeadSummarizer:
    """Extract the first sentences of the article as the summary."""

    checkpoint = "lead-sentences/v1"

    def __init__(self, n_sentences: int = 3):
        if n_sentences < 1:
            raise ValueError("n_sentences must be >= 1")
        self.n_sentences = n_sentences

    def summarize_one(self, claim: str, sentences: list[str]) -> list[str]:
        return list(sentences[: self.n_sentences])

    def summarize(self, items: list[tuple[str, list[str]]]) -> list[list[str]]:
        return [self.summarize_one(claim, sentences) for claim, sentences in items]
