"""Explanation generation baselines and overlap-based scoring.

Explanations come from four methods: the journalist-written gold text,
a lead-3 baseline (first three article sentences), a greedy extractive
upper bound that picks article sentences maximizing unigram+bigram
overlap F1 with the gold text, and an abstractive summarizer behind a
service boundary. Scoring uses natively implemented ROUGE-1/2/L F1.

Tokenization for scoring is lowercase, split on non-alphanumeric runs,
no stemming and no stopword removal; absolute scores are therefore
comparable across methods here but only qualitatively against other
ROUGE configurations.
"""

from dataclasses import dataclass
from typing import NamedTuple, Protocol, Sequence

from collections import Counter

from ._text import ngrams, tokenize

GENERATION_METHODS = ("gold", "lead3", "oracle", "abstractive")

DEFAULT_LEAD_SENTENCES = 3
DEFAULT_ORACLE_SENTENCES = 3


@dataclass
class Explanation:
    """An ordered list of explanation sentences for one claim."""

    claim_id: str
    sentences: list[str]
    method: str

    @property
    def text(self) -> str:
        return " ".join(self.sentences)

    def to_dict(self) -> dict:
        return {"claim_id": self.claim_id, "method": self.method, "sentences": self.sentences}

    @classmethod
    def from_dict(cls, d: dict) -> "Explanation":
        return cls(claim_id=d["claim_id"], sentences=list(d["sentences"]), method=d["method"])


class OverlapScore(NamedTuple):
    precision: float
    recall: float
    f1: float


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def rouge_n(candidate: str, reference: str, n: int = 1) -> OverlapScore:
    """Clipped n-gram overlap: recall against the reference n-gram
    multiset, precision against the candidate's, F1 their harmonic mean.
    Degenerate inputs (either side without n-grams) score zero.
    """
    if n < 1:
        raise ValueError("n-gram order must be >= 1")
    cand = Counter(ngrams(tokenize(candidate), n))
    ref = Counter(ngrams(tokenize(reference), n))
    n_cand = sum(cand.values())
    n_ref = sum(ref.values())
    if n_cand == 0 or n_ref == 0:
        return OverlapScore(0.0, 0.0, 0.0)
    matched = sum((cand & ref).values())
    precision = matched / n_cand
    recall = matched / n_ref
    return OverlapScore(precision, recall, _f1(precision, recall))


def _lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    # Quadratic DP over token sequences, two-row memory.
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(candidate: str, reference: str) -> OverlapScore:
    """Longest-common-subsequence overlap over token sequences."""
    cand = tokenize(candidate)
    ref = tokenize(reference)
    if not cand or not ref:
        return OverlapScore(0.0, 0.0, 0.0)
    lcs = _lcs_length(cand, ref)
    precision = lcs / len(cand)
    recall = lcs / len(ref)
    return OverlapScore(precision, recall, _f1(precision, recall))


@dataclass
class RougeScore:
    """F1 bundle for unigram, bigram and LCS overlap."""

    r1_f: float
    r2_f: float
    rl_f: float

    def to_dict(self) -> dict:
        return {"rouge1_f": self.r1_f, "rouge2_f": self.r2_f, "rougeL_f": self.rl_f}


def score_pair(candidate: str, reference: str) -> RougeScore:
    return RougeScore(
        r1_f=rouge_n(candidate, reference, 1).f1,
        r2_f=rouge_n(candidate, reference, 2).f1,
        rl_f=rouge_l(candidate, reference).f1,
    )


class SummarizerBackend(Protocol):
    """Service-side abstractive summarizer; output nonempty for nonempty input."""

    def summarize(self, claim: str, article_sentences: Sequence[str]) -> list[str]: ...


def lead3(
    article_sentences: Sequence[str], claim_id: str = "", n: int = DEFAULT_LEAD_SENTENCES
) -> Explanation:
    """Baseline explanation: the first min(n, len) article sentences."""
    if not article_sentences:
        raise ValueError("lead baseline needs a nonempty article")
    return Explanation(
        claim_id=claim_id, sentences=list(article_sentences[:n]), method="lead3"
    )


def _oracle_objective(candidate_text: str, gold_text: str) -> float:
    return 0.5 * (
        rouge_n(candidate_text, gold_text, 1).f1 + rouge_n(candidate_text, gold_text, 2).f1
    )


def oracle_extractive(
    article_sentences: Sequence[str],
    gold: Explanation,
    max_sents: int = DEFAULT_ORACLE_SENTENCES,
) -> Explanation:
    """Greedy extractive upper bound against the gold explanation.

    Repeatedly adds the article sentence that maximizes the mean of
    unigram and bigram F1 of the selection against the gold text
    (ties break to the lowest document index). The first sentence is
    always selected; later additions stop when no sentence yields a
    strictly positive gain or max_sents is reached. Output keeps
    document order.
    """
    if not article_sentences:
        raise ValueError("oracle needs a nonempty article")
    if not gold.sentences:
        raise ValueError("oracle needs a nonempty gold explanation")
    if max_sents < 1:
        raise ValueError("max_sents must be >= 1")
    gold_text = gold.text
    selected: list[int] = []
    best_obj = 0.0
    while len(selected) < max_sents:
        best_i = None
        best_trial_obj = -1.0
        for i in range(len(article_sentences)):
            if i in selected:
                continue
            trial = sorted(selected + [i])
            text = " ".join(article_sentences[j] for j in trial)
            obj = _oracle_objective(text, gold_text)
            if obj > best_trial_obj:  # strict: ties keep the lowest index
                best_trial_obj = obj
                best_i = i
        if best_i is None:
            break  # article exhausted
        if selected and best_trial_obj <= best_obj:
            break  # no strictly positive gain after the first pick
        selected.append(best_i)
        best_obj = best_trial_obj
    selected.sort()
    return Explanation(
        claim_id=gold.claim_id,
        sentences=[article_sentences[i] for i in selected],
        method="oracle",
    )


def score_corpus(
    explanations: Sequence[Explanation], golds: Sequence[Explanation]
) -> RougeScore:
    """Mean per-pair ROUGE F1 over explanations aligned by claim_id."""
    if not explanations or not golds:
        raise ValueError("nothing to score")
    gold_by_id = {g.claim_id: g for g in golds}
    if len(gold_by_id) != len(golds):
        raise ValueError("duplicate claim_id in gold explanations")
    r1 = r2 = rl = 0.0
    for expl in explanations:
        gold = gold_by_id.get(expl.claim_id)
        if gold is None:
            raise ValueError(f"no gold explanation for claim_id {expl.claim_id!r}")
        score = score_pair(expl.text, gold.text)
        r1 += score.r1_f
        r2 += score.r2_f
        rl += score.rl_f
    n = len(explanations)
    return RougeScore(r1_f=r1 / n, r2_f=r2 / n, rl_f=rl / n)
