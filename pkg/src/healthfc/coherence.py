"""Explanation coherence properties, NLI backends and rater agreement.

Three properties are checked for an explanation E = (e_1 .. e_N) of a
claim C, using natural-language-inference relations:

* strong global coherence: every e_i entails C;
* weak global coherence: no e_i contradicts C;
* local coherence: no ordered pair (e_i, e_j), i != j, contradicts.

Relations are always queried with the explanation sentence as premise.
"e_i does not entail not-C" is operationalized as "relation is not
contradiction", matching how NLI models collapse negation entailment
into the contradiction class.

Before checking, explanation-to-claim contradictions on records labelled
``false`` are reassigned to neutral: for a false claim, being
contradicted by its explanation is the expected direction. Entailments
of false claims are NOT reassigned; the entailment cannot be assumed to
track veracity.

Rater agreement over explanation-quality questionnaires uses the
free-marginal chance-corrected kappa with uniform chance rate 1/k for
k answer categories.
"""

import csv
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Protocol, Sequence

from ._text import tokenize
from .corpus import VeracityLabel
from .explain import Explanation


class NliRelation(Enum):
    ENTAILS = "entails"
    CONTRADICTS = "contradicts"
    NEUTRAL = "neutral"


class NliBackend(Protocol):
    """Classifies an ordered (premise, hypothesis) pair; deterministic per config."""

    def relate(self, premise: str, hypothesis: str) -> NliRelation: ...

    def relate_many(self, pairs: Sequence[tuple[str, str]]) -> list[NliRelation]: ...


class _BatchByLoop:
    def relate_many(self, pairs: Sequence[tuple[str, str]]) -> list[NliRelation]:
        return [self.relate(p, h) for p, h in pairs]


class ConstantNli(_BatchByLoop):
    """Test backend returning one fixed relation for every pair."""

    def __init__(self, relation: NliRelation):
        self.relation = relation

    def relate(self, premise: str, hypothesis: str) -> NliRelation:
        return self.relation


#: Cue tokens treated as negation markers by the lexical stub backend.
_NEGATION_CUES = frozenset({"not", "no", "never", "none", "nothing", "false"})


class TokenOverlapNli(_BatchByLoop):
    """Deterministic rule-based stand-in for a served NLI model.

    Declares entailment when premise and hypothesis share more than
    ``threshold`` of the hypothesis' unique tokens; with
    ``negation_aware`` (default), a high-overlap pair where exactly one
    side carries a negation cue is a contradiction instead. Everything
    else is neutral.
    """

    def __init__(self, threshold: float = 0.5, negation_aware: bool = True):
        self.threshold = threshold
        self.negation_aware = negation_aware

    def relate(self, premise: str, hypothesis: str) -> NliRelation:
        p = set(tokenize(premise))
        h = set(tokenize(hypothesis))
        if not h:
            return NliRelation.NEUTRAL
        overlap = len(p & h) / len(h)
        if overlap <= self.threshold:
            return NliRelation.NEUTRAL
        if self.negation_aware and ((p & _NEGATION_CUES) != (h & _NEGATION_CUES)):
            return NliRelation.CONTRADICTS
        return NliRelation.ENTAILS


@dataclass
class RelationMatrix:
    """NLI relations of each explanation sentence to the claim and to each other.

    ``to_claim[i]`` is the relation with premise e_i and hypothesis C;
    ``pairwise[(i, j)]`` has premise e_i and hypothesis e_j, defined for
    every ordered pair with i != j.
    """

    to_claim: list[NliRelation]
    pairwise: dict[tuple[int, int], NliRelation] = field(default_factory=dict)

    @property
    def n_sentences(self) -> int:
        return len(self.to_claim)


def build_relation_matrix(
    claim: str, explanation: Explanation, backend: NliBackend
) -> RelationMatrix:
    """Query all N to-claim plus N*(N-1) ordered pairwise relations, batched."""
    sentences = explanation.sentences
    if not sentences:
        raise ValueError("explanation has no sentences")
    n = len(sentences)
    pairs: list[tuple[str, str]] = [(s, claim) for s in sentences]
    ordered = [(i, j) for i in range(n) for j in range(n) if i != j]
    pairs.extend((sentences[i], sentences[j]) for i, j in ordered)
    relations = backend.relate_many(pairs)
    if len(relations) != len(pairs):
        raise ValueError("backend returned wrong number of relations")
    return RelationMatrix(
        to_claim=list(relations[:n]),
        pairwise=dict(zip(ordered, relations[n:])),
    )


def apply_reassignment(
    matrix: RelationMatrix, label: VeracityLabel
) -> tuple[RelationMatrix, list[int]]:
    """Neutralize explanation-to-claim contradictions on false-labelled records.

    Returns the (possibly new) matrix and the indices reassigned. Only
    to-claim contradictions move, only for ``false`` labels; entailments
    and pairwise relations are untouched. Idempotent.
    """
    if label is not VeracityLabel.FALSE:
        return matrix, []
    reassigned = [
        i for i, rel in enumerate(matrix.to_claim) if rel is NliRelation.CONTRADICTS
    ]
    if not reassigned:
        return matrix, []
    to_claim = [
        NliRelation.NEUTRAL if rel is NliRelation.CONTRADICTS else rel
        for rel in matrix.to_claim
    ]
    return RelationMatrix(to_claim=to_claim, pairwise=dict(matrix.pairwise)), reassigned


def check_sgc(matrix: RelationMatrix) -> bool:
    """Strong global coherence: every sentence entails the claim."""
    return all(rel is NliRelation.ENTAILS for rel in matrix.to_claim)


def check_wgc(matrix: RelationMatrix) -> bool:
    """Weak global coherence: no sentence contradicts the claim."""
    return all(rel is not NliRelation.CONTRADICTS for rel in matrix.to_claim)


def check_lc(matrix: RelationMatrix) -> bool:
    """Local coherence: no ordered sentence pair contradicts (vacuously true for N=1)."""
    return all(rel is not NliRelation.CONTRADICTS for rel in matrix.pairwise.values())


@dataclass
class CoherenceVerdict:
    sgc: bool
    wgc: bool
    lc: bool
    reassigned_indices: list[int] = field(default_factory=list)


def evaluate_coherence(
    claim: str, label: VeracityLabel, explanation: Explanation, backend: NliBackend
) -> CoherenceVerdict:
    """Relation matrix -> reassignment -> all three property checks."""
    matrix = build_relation_matrix(claim, explanation, backend)
    matrix, reassigned = apply_reassignment(matrix, label)
    return CoherenceVerdict(
        sgc=check_sgc(matrix),
        wgc=check_wgc(matrix),
        lc=check_lc(matrix),
        reassigned_indices=reassigned,
    )


@dataclass
class CoherenceSummary:
    """Share of explanations satisfying each property, as percentages."""

    sgc_pct: float
    wgc_pct: float
    lc_pct: float
    n_evaluated: int
    n_failed: int = 0

    def to_dict(self) -> dict:
        return {
            "sgc_pct": self.sgc_pct,
            "wgc_pct": self.wgc_pct,
            "lc_pct": self.lc_pct,
            "n_evaluated": self.n_evaluated,
            "n_failed": self.n_failed,
        }


def corpus_coherence(
    records: Sequence[tuple[str, VeracityLabel, Explanation]], backend: NliBackend
) -> CoherenceSummary:
    """Percentage of explanations satisfying each property after reassignment.

    Per-record backend failures are counted and excluded rather than
    aborting the run.
    """
    if not records:
        raise ValueError("no records to evaluate")
    sgc = wgc = lc = 0
    failed = 0
    evaluated = 0
    for claim, label, explanation in records:
        try:
            verdict = evaluate_coherence(claim, label, explanation, backend)
        except Exception:
            failed += 1
            continue
        evaluated += 1
        sgc += verdict.sgc
        wgc += verdict.wgc
        lc += verdict.lc
    if evaluated == 0:
        raise ValueError("backend failed on every record")
    return CoherenceSummary(
        sgc_pct=100.0 * sgc / evaluated,
        wgc_pct=100.0 * wgc / evaluated,
        lc_pct=100.0 * lc / evaluated,
        n_evaluated=evaluated,
        n_failed=failed,
    )


@dataclass
class AnnotationItem:
    """One rated questionnaire item: k answer categories, one choice per rater."""

    item_id: str
    arity: int
    ratings: list[int]


def kappa_from_agreement(overall_agreement: float, arity: int) -> float:
    """Free-marginal kappa from observed agreement: (P_o - 1/k) / (1 - 1/k)."""
    if arity < 2:
        raise ValueError("arity must be >= 2")
    chance = 1.0 / arity
    return (overall_agreement - chance) / (1.0 - chance)


def randolph_kappa(items: Sequence[AnnotationItem]) -> tuple[float, float]:
    """Free-marginal multirater kappa and overall agreement.

    Overall agreement P_o is the mean over items of the fraction of
    agreeing rater pairs; kappa corrects it by the uniform chance rate
    1/k. All items must share one arity and have at least two ratings.
    """
    if not items:
        raise ValueError("no annotation items")
    arities = {item.arity for item in items}
    if len(arities) != 1:
        raise ValueError(f"items mix arities: {sorted(arities)}")
    arity = arities.pop()
    if arity < 2:
        raise ValueError("arity must be >= 2")
    per_item = []
    for item in items:
        r = len(item.ratings)
        if r < 2:
            raise ValueError(f"item {item.item_id!r} has fewer than 2 ratings")
        if any(not (0 <= c < arity) for c in item.ratings):
            raise ValueError(f"item {item.item_id!r} has a rating outside [0, {arity})")
        counts = [item.ratings.count(c) for c in range(arity)]
        agreeing_pairs = sum(c * (c - 1) for c in counts)
        per_item.append(agreeing_pairs / (r * (r - 1)))
    overall = sum(per_item) / len(per_item)
    return kappa_from_agreement(overall, arity), overall


def load_annotations(path: str | Path) -> dict[str, list[AnnotationItem]]:
    """Read a questionnaire export CSV into items grouped by question.

    Expected columns: item_id, annotator_id, question_id, arity, choice.
    Each (question_id, item_id) pair becomes one AnnotationItem whose
    ratings are the per-annotator choices.
    """
    grouped: dict[tuple[str, str], AnnotationItem] = {}
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        required = {"item_id", "annotator_id", "question_id", "arity", "choice"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise ValueError(f"annotations file must have columns {sorted(required)}")
        for row in reader:
            key = (row["question_id"], row["item_id"])
            arity = int(row["arity"])
            item = grouped.get(key)
            if item is None:
                item = AnnotationItem(item_id=row["item_id"], arity=arity, ratings=[])
                grouped[key] = item
            elif item.arity != arity:
                raise ValueError(f"inconsistent arity for {key}")
            item.ratings.append(int(row["choice"]))
    by_question: dict[str, list[AnnotationItem]] = {}
    for (question_id, _), item in sorted(grouped.items()):
        by_question.setdefault(question_id, []).append(item)
    return by_question


def agreement_by_question(
    annotations: dict[str, list[AnnotationItem]],
) -> dict[str, dict]:
    """Kappa and overall agreement per questionnaire question."""
    out = {}
    for question_id, items in sorted(annotations.items()):
        kappa, overall = randolph_kappa(items)
        out[question_id] = {
            "arity": items[0].arity,
            "n_items": len(items),
            "kappa": kappa,
            "overall_agreement": overall,
        }
    return out
